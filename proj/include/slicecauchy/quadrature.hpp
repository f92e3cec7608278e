// Gauss-Legendre rules, compensated accumulation, and the deterministic
// thread helper shared by the integral routines.
#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "algebra.hpp"

namespace slicecauchy {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

namespace detail {

// Legendre polynomial value and derivative at x, degree n.
inline void legendre_pair(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

inline Rule1D compute_gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("quadrature rule needs n >= 1");
  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    // Tricomi initial guess, then Newton.
    double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre_pair(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre_pair(n, x, p, dp);
    rule.nodes[n - 1 - k] = x;
    rule.weights[n - 1 - k] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace detail

/// Cached n-point Gauss-Legendre rule on [-1, 1].
inline const Rule1D& gauss_legendre(int n) {
  static std::mutex mtx;
  static std::map<int, Rule1D> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, detail::compute_gauss_legendre(n)).first;
  return it->second;
}

/// n-point Gauss-Legendre rule mapped to [a, b].
inline Rule1D gauss_rule(int n, double a, double b) {
  const Rule1D& base = gauss_legendre(n);
  Rule1D out;
  out.nodes.resize(base.size());
  out.weights.resize(base.size());
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (std::size_t i = 0; i < base.size(); ++i) {
    out.nodes[i] = mid + half * base.nodes[i];
    out.weights[i] = half * base.weights[i];
  }
  return out;
}

/// Neumaier compensated scalar accumulator.
class NeumaierSum {
public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Coefficient-wise compensated accumulator for algebra elements.
class ElementSum {
public:
  explicit ElementSum(const AlgebraSpec& alg)
      : alg_(&alg), acc_(static_cast<std::size_t>(alg.dim())) {}
  void add(const Element& x, double w = 1.0) {
    for (int i = 0; i < alg_->dim(); ++i) acc_[i].add(w * x.coeff(i));
  }
  void add_coeffs(const double* c, double w) {
    for (int i = 0; i < alg_->dim(); ++i) acc_[i].add(w * c[i]);
  }
  Element value() const {
    Element out(*alg_);
    for (int i = 0; i < alg_->dim(); ++i) out.coeff(i) = acc_[i].value();
    return out;
  }

private:
  const AlgebraSpec* alg_;
  std::vector<NeumaierSum> acc_;
};

/// Thread budget from SLICE_CAUCHY_THREADS (0 or unset: hardware default).
inline int thread_budget() {
  const char* env = std::getenv("SLICE_CAUCHY_THREADS");
  if (env != nullptr && *env != '\0') {
    const long v = std::strtol(env, nullptr, 10);
    if (v < 0) throw std::invalid_argument("SLICE_CAUCHY_THREADS must be >= 0");
    if (v > 0) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(i) for i in [0, n). Each call must write only to its own output
/// slot; results are identical for any thread count because the work items
/// and any later reduction stay in index order. The exception of the
/// lowest-index failing item, if any, is rethrown on the calling thread.
template <typename Fn>
void parallel_for_index(std::size_t n, Fn&& fn) {
  const int budget = thread_budget();
  if (budget <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(budget), n);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  std::vector<std::exception_ptr> errors(n);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace slicecauchy
