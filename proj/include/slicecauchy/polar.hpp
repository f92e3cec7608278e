// Iterated polar coordinates on spheres: the recursive parametrization
// phi_n, its Jacobian factor prod cos(theta_k)^{k-1}, the n-sphere volumes,
// and the half-domain used to sweep a hemisphere exactly once.
#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace slicecauchy {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// Volume of the unit n-sphere S^n: 2 pi^{(n+1)/2} / Gamma((n+1)/2).
inline double sphere_volume(int n) {
  if (n < 0) throw std::invalid_argument("sphere_volume needs n >= 0");
  return 2.0 * std::pow(M_PI, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

/// phi_1(t) = (cos t, sin t); phi_n(theta', t) = (cos(t) phi_{n-1}(theta'),
/// sin t). Returns a unit vector of length theta.size() + 1. For empty theta
/// this degenerates to the single point (1).
inline std::vector<double> spherical_direction(const std::vector<double>& theta) {
  const std::size_t n = theta.size();
  std::vector<double> v(n + 1, 0.0);
  if (n == 0) {
    v[0] = 1.0;
    return v;
  }
  v[0] = std::cos(theta[0]);
  v[1] = std::sin(theta[0]);
  for (std::size_t k = 1; k < n; ++k) {
    const double c = std::cos(theta[k]);
    for (std::size_t l = 0; l <= k; ++l) v[l] *= c;
    v[k + 1] = std::sin(theta[k]);
  }
  return v;
}

/// Closed-form Jacobian factor I_n(theta) = prod_{k=2}^{n} cos(theta_k)^{k-1}
/// (indices 1-based; equal to 1 when n <= 1).
inline double spherical_jacobian_product(const std::vector<double>& theta) {
  double p = 1.0;
  for (std::size_t k = 1; k < theta.size(); ++k)
    p *= std::pow(std::cos(theta[k]), static_cast<double>(k));
  return p;
}

namespace detail {

/// Determinant by partial-pivot elimination; a is n x n row-major, destroyed.
inline double determinant_inplace(std::vector<double>& a, int n) {
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (a[piv * n + col] == 0.0) return 0.0;
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
      det = -det;
    }
    det *= a[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
    }
  }
  return det;
}

inline std::vector<double> direction_partial(const std::vector<double>& theta,
                                             std::size_t k, double h) {
  std::vector<double> tp = theta, tm = theta;
  tp[k] += h;
  tm[k] -= h;
  const auto vp = spherical_direction(tp);
  const auto vm = spherical_direction(tm);
  std::vector<double> d(vp.size());
  for (std::size_t i = 0; i < vp.size(); ++i) d[i] = (vp[i] - vm[i]) / (2 * h);
  return d;
}

}  // namespace detail

/// det(phi_n | J_phi): the (n+1) x (n+1) determinant whose first column is
/// the direction itself and whose remaining columns are the finite-difference
/// partials in each angle. Agrees with the closed-form product on the
/// half-domain.
inline double spherical_jacobian_det(const std::vector<double>& theta,
                                     double h = 1e-6) {
  const std::size_t n = theta.size();
  if (n == 0) return 1.0;
  const auto v = spherical_direction(theta);
  std::vector<double> m((n + 1) * (n + 1));
  for (std::size_t r = 0; r <= n; ++r) m[r * (n + 1)] = v[r];
  for (std::size_t k = 0; k < n; ++k) {
    const auto d = detail::direction_partial(theta, k, h);
    for (std::size_t r = 0; r <= n; ++r) m[r * (n + 1) + (k + 1)] = d[r];
  }
  return detail::determinant_inplace(m, static_cast<int>(n + 1));
}

/// sqrt(det(J^T J)) for the same finite-difference Jacobian: the metric
/// volume factor of the parametrization.
inline double spherical_jacobian_gram(const std::vector<double>& theta,
                                      double h = 1e-6) {
  const std::size_t n = theta.size();
  if (n == 0) return 1.0;
  std::vector<std::vector<double>> cols(n);
  for (std::size_t k = 0; k < n; ++k)
    cols[k] = detail::direction_partial(theta, k, h);
  std::vector<double> g(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      double s = 0.0;
      for (std::size_t r = 0; r < cols[a].size(); ++r)
        s += cols[a][r] * cols[b][r];
      g[a * n + b] = s;
    }
  const double det = detail::determinant_inplace(g, static_cast<int>(n));
  return det > 0.0 ? std::sqrt(det) : 0.0;
}

/// Angle box I_n whose image is the whole sphere S^n:
/// (0, 2pi) x (-pi/2, pi/2)^{n-1}.
inline std::vector<Interval> full_ranges(int n) {
  if (n < 0) throw std::invalid_argument("angle count must be >= 0");
  std::vector<Interval> r;
  if (n == 0) return r;
  r.push_back({0.0, 2.0 * M_PI});
  for (int k = 1; k < n; ++k) r.push_back({-0.5 * M_PI, 0.5 * M_PI});
  return r;
}

/// Half box I_n^+ whose image is one hemisphere (last coordinate positive,
/// up to measure zero): I_1^+ = (0, pi); for n >= 2 the last angle is
/// restricted to (0, pi/2).
inline std::vector<Interval> hemisphere_ranges(int n) {
  if (n < 0) throw std::invalid_argument("angle count must be >= 0");
  std::vector<Interval> r;
  if (n == 0) return r;
  if (n == 1) {
    r.push_back({0.0, M_PI});
    return r;
  }
  r.push_back({0.0, 2.0 * M_PI});
  for (int k = 1; k < n - 1; ++k) r.push_back({-0.5 * M_PI, 0.5 * M_PI});
  r.push_back({0.0, 0.5 * M_PI});
  return r;
}

inline bool in_ranges(const std::vector<double>& theta,
                      const std::vector<Interval>& ranges) {
  if (theta.size() != ranges.size()) return false;
  for (std::size_t i = 0; i < theta.size(); ++i)
    if (!(theta[i] > ranges[i].lo && theta[i] < ranges[i].hi)) return false;
  return true;
}

/// A point in polar coordinates: angles plus an optional radius.
struct PolarPoint {
  std::vector<double> theta;
  std::optional<double> rho;
};

}  // namespace slicecauchy
