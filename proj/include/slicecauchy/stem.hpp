// Stem functions F = F1 + i F2 on plane domains, the slice functions they
// induce, slice derivatives, slice-regular polynomials, and the Cauchy
// kernel of the quadratic cone.
#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "domain.hpp"

namespace slicecauchy {

inline constexpr double kKernelSingularTol = 1e-13;

/// A stem function: components F1, F2 with values in the algebra, subject to
/// the parity laws F1(a, -b) = F1(a, b), F2(a, -b) = -F2(a, b). When the
/// analytic d/dzbar components are known they can be supplied in `dzbar`;
/// otherwise slice_derivative falls back to central differences.
struct StemFunction {
  std::function<Element(double, double)> F1;
  std::function<Element(double, double)> F2;
  std::function<std::pair<Element, Element>(double, double)> dzbar;
  const PlanarDomain* domain = nullptr;  // optional membership guard
  bool continuously_differentiable = true;
};

/// Value of the induced slice function at x = alpha + beta J:
/// f(x) = F1(alpha, beta) + J F2(alpha, beta). Real points require the odd
/// component to vanish there.
inline Element induce(const StemFunction& f, const Element& x,
                      double tol = kConeTol) {
  const ConeDecomposition d = decompose(x, tol);
  if (f.domain != nullptr && !f.domain->contains(d.alpha, d.beta) &&
      f.domain->boundary_distance(d.alpha, d.beta) > tol)
    throw std::domain_error("point outside the stem domain");
  Element v = f.F1(d.alpha, d.beta);
  if (d.unit.has_value()) {
    v += *d.unit * f.F2(d.alpha, d.beta);
  } else {
    const Element f2 = f.F2(d.alpha, 0.0);
    if (euclidean_norm(f2) > 1e-7)
      throw std::domain_error(
          "odd stem component does not vanish on the real axis");
  }
  return v;
}

/// Components of the conjugate-variable derivative
/// dF/dzbar = (dF/da + i dF/db) / 2 at (a, b): G1 = (d1F1 - d2F2)/2 and
/// G2 = (d2F1 + d1F2)/2. Uses `dzbar` when present, else central
/// differences with step h.
inline std::pair<Element, Element> stem_dzbar(const StemFunction& f, double a,
                                              double b, double h = 1e-5) {
  if (f.dzbar) return f.dzbar(a, b);
  const Element d1F1 = (f.F1(a + h, b) - f.F1(a - h, b)) * (0.5 / h);
  const Element d2F1 = (f.F1(a, b + h) - f.F1(a, b - h)) * (0.5 / h);
  const Element d1F2 = (f.F2(a + h, b) - f.F2(a - h, b)) * (0.5 / h);
  const Element d2F2 = (f.F2(a, b + h) - f.F2(a, b - h)) * (0.5 / h);
  return {(d1F1 - d2F2) * 0.5, (d2F1 + d1F2) * 0.5};
}

/// The slice function induced by dF/dzbar, evaluated at x. Vanishes
/// identically iff the slice function of F is slice regular.
inline Element slice_derivative(const StemFunction& f, const Element& x,
                                double h = 1e-5, double tol = kConeTol) {
  const ConeDecomposition d = decompose(x, tol);
  const auto [g1, g2] = stem_dzbar(f, d.alpha, d.beta, h);
  Element v = g1;
  if (d.unit.has_value()) v += *d.unit * g2;
  return v;
}

/// Characteristic polynomial of w at x:
/// Delta_w(x) = x^2 - x t(w) + n(w). Requires t(w), n(w) real.
inline Element char_poly(const Element& w, const Element& x,
                         double tol = kConeTol) {
  const Element t = trace(w);
  const Element n = norm(w);
  if (!is_real(t, tol) || !is_real(n, tol))
    throw std::domain_error("characteristic polynomial needs w in the cone");
  Element v = x * x;
  v -= x * t.coeff(0);
  v.coeff(0) += n.coeff(0);
  return v;
}

/// Cauchy kernel C(x, w) = Delta_w(x)^{-1} (w^c - x), defined for x in the
/// cone away from the sphere through w (where n(Delta) ~ 0).
inline Element cauchy_kernel(const Element& x, const Element& w,
                             double tol = kKernelSingularTol) {
  const Element delta = char_poly(w, x);
  const Element nd = norm(delta);
  if (!is_real(nd, 1e-7 * (1.0 + euclidean_norm(delta))))
    throw std::domain_error("kernel point x outside the quadratic cone");
  const double n0 = nd.coeff(0);
  if (std::abs(n0) <= tol)
    throw std::domain_error("Cauchy kernel evaluated on the sphere of w");
  return conj(delta) * (1.0 / n0) * (conj(w) - x);
}

/// Representation of a slice function from its values on one plane:
/// given f(alpha + beta J) = fp and f(alpha - beta J) = fm, the value at
/// alpha + beta I is (fp + fm)/2 - (I J / 2)(fp - fm).
inline Element representation(const Element& fp, const Element& fm,
                              const Element& I, const Element& J) {
  return 0.5 * (fp + fm) - (I * J) * (0.5 * (fp - fm));
}

// ---------------------------------------------------------------------------
// Slice-regular polynomials
// ---------------------------------------------------------------------------

/// p(x) = sum_k x^k a_k with right coefficients a_k.
class SlicePolynomial {
public:
  SlicePolynomial() = default;
  explicit SlicePolynomial(std::vector<Element> coeffs)
      : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("polynomial needs >= 1 coeff");
  }
  static SlicePolynomial from_reals(const AlgebraSpec& alg,
                                    const std::vector<double>& coeffs) {
    std::vector<Element> c;
    c.reserve(coeffs.size());
    for (double v : coeffs) c.push_back(Element::scalar(alg, v));
    return SlicePolynomial(std::move(c));
  }
  const std::vector<Element>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  Element eval(const Element& x) const {
    // Right-coefficient Horner: p = ((a_n) and p <- x p + a_k.
    Element acc = c_.back();
    for (int k = static_cast<int>(c_.size()) - 2; k >= 0; --k)
      acc = x * acc + c_[k];
    return acc;
  }

  /// Product in the slice sense: coefficients convolve in order,
  /// (p * q)_k = sum_{i+j=k} p_i q_j.
  friend SlicePolynomial slice_product(const SlicePolynomial& p,
                                       const SlicePolynomial& q) {
    const auto& a = p.c_;
    const auto& b = q.c_;
    const AlgebraSpec& alg = a.front().algebra();
    std::vector<Element> c(a.size() + b.size() - 1, Element(alg));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return SlicePolynomial(std::move(c));
  }

  /// The stem z = a + i b |-> sum (a + i b)^k a_k, with components grouped
  /// by the parity of the binomial expansion.
  StemFunction stem() const {
    auto coeffs = c_;
    StemFunction f;
    f.F1 = [coeffs](double a, double b) {
      return eval_part(coeffs, a, b, false);
    };
    f.F2 = [coeffs](double a, double b) {
      return eval_part(coeffs, a, b, true);
    };
    const AlgebraSpec* alg = &coeffs.front().algebra();
    f.dzbar = [alg](double, double) {
      return std::pair<Element, Element>(Element(*alg), Element(*alg));
    };
    return f;
  }

private:
  static Element eval_part(const std::vector<Element>& coeffs, double a,
                           double b, bool odd) {
    // Real and imaginary parts of (a + i b)^k accumulated iteratively.
    const AlgebraSpec& alg = coeffs.front().algebra();
    Element acc(alg);
    double re = 1.0, im = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      acc += (odd ? im : re) * coeffs[k];
      const double nre = re * a - im * b;
      im = re * b + im * a;
      re = nre;
    }
    return acc;
  }

  std::vector<Element> c_;
};

// ---------------------------------------------------------------------------
// Test functions for the integral formulas
// ---------------------------------------------------------------------------

/// A slice function packaged for quadrature: pointwise value, the slice
/// derivative (null when the function is slice regular and the volume term
/// vanishes identically), and a label for reports.
struct SliceFn {
  std::function<Element(const Element&)> value;
  std::function<Element(const Element&)> deriv;  // d f / d x^c
  std::string label;
  bool slice_regular() const { return !static_cast<bool>(deriv); }
};

inline SliceFn fn_from_polynomial(SlicePolynomial p, std::string label) {
  SliceFn f;
  f.value = [p](const Element& x) { return p.eval(x); };
  f.label = std::move(label);
  return f;
}

/// Built-in stems by name.
///   identity: F(z) = z              (slice regular)
///   conj:     F(z) = zbar           (dF/dzbar = 1)
///   normsq:   F(z) = |z|^2          (dF/dzbar = z, so df(w) = w)
///   remark:   f(w) = w_0 + v_1 w_1  (v_1 the first imaginary basis vector
///                                    of the algebra; the boundary datum of
///                                    the two-point sphere example)
inline SliceFn builtin_stem(const AlgebraSpec& alg, const std::string& name) {
  SliceFn f;
  f.label = "stem:" + name;
  if (name == "identity") {
    f.value = [](const Element& x) { return x; };
    return f;
  }
  if (name == "conj") {
    f.value = [](const Element& x) { return conj(x); };
    f.deriv = [&alg](const Element&) { return Element::scalar(alg, 1.0); };
    return f;
  }
  if (name == "normsq") {
    // Stem |z|^2 = a^2 + b^2: F1 = a^2 + b^2, F2 = 0; value n(x) on the
    // cone, slice derivative z |-> x.
    f.value = [](const Element& x) {
      const ConeDecomposition d = decompose(x);
      return Element::scalar(x.algebra(), d.alpha * d.alpha + d.beta * d.beta);
    };
    f.deriv = [](const Element& x) { return x; };
    return f;
  }
  if (name == "remark") {
    const Element unit = Element::basis(alg, 1);
    f.value = [unit](const Element& x) {
      Element v = unit * x.coeff(1);
      v.coeff(0) += x.coeff(0);
      return v;
    };
    return f;
  }
  throw std::invalid_argument("unknown built-in stem '" + name + "'");
}

/// Parses "poly:[c0,c1,...]" (real coefficients) or "stem:<name>".
inline SliceFn parse_function(const AlgebraSpec& alg, const std::string& text) {
  if (text.rfind("poly:", 0) == 0) {
    std::string body = text.substr(5);
    if (!body.empty() && body.front() == '[') body.erase(body.begin());
    if (!body.empty() && body.back() == ']') body.pop_back();
    std::vector<double> coeffs;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) coeffs.push_back(std::stod(tok));
    if (coeffs.empty()) throw std::invalid_argument("empty coefficient list");
    return fn_from_polynomial(SlicePolynomial::from_reals(alg, coeffs), text);
  }
  if (text.rfind("stem:", 0) == 0) return builtin_stem(alg, text.substr(5));
  throw std::invalid_argument("bad function spec '" + text + "'");
}

}  // namespace slicecauchy
