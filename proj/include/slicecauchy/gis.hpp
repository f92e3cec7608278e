// Slice subspaces ("generalized imaginary spheres"): a linear subspace
// M = span(1, v_1, ..., v_{m-1}) of the algebra whose unit imaginary vectors
// S = {sum q_l v_l : |q| = 1} all square to -1. Provides the polar sweep of
// S by hemisphere angles, the boundary and volume chart points, and
// membership of the circularized domain Omega_D(S).
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "domain.hpp"
#include "element_io.hpp"
#include "polar.hpp"
#include "quadrature.hpp"

namespace slicecauchy {

/// Real part of the trace-induced inner product (x, y) = t(x y^c) / 2.
inline double slice_inner(const Element& x, const Element& y) {
  const Element p = x * conj(y);
  return 0.5 * trace(p).coeff(0);
}

class Gis {
public:
  /// basis[0] must be the unit; the remaining directions must be orthonormal
  /// imaginary units under the trace inner product, and every unit
  /// combination of them must again square to -1 (checked on a fixed sample).
  Gis(const AlgebraSpec& alg, std::vector<Element> basis, std::string name)
      : alg_(&alg), basis_(std::move(basis)), name_(std::move(name)) {
    if (basis_.size() < 2)
      throw std::invalid_argument("slice subspace needs dimension >= 2");
    const double tol = 1e-9;
    for (const auto& v : basis_)
      if (&v.algebra() != alg_)
        throw std::invalid_argument("basis element from wrong algebra");
    if (euclidean_norm(basis_[0] - Element::scalar(alg, 1.0)) > tol)
      throw std::invalid_argument("first basis vector must be the unit");
    for (std::size_t i = 0; i < basis_.size(); ++i)
      for (std::size_t j = 0; j < basis_.size(); ++j) {
        const double g = slice_inner(basis_[i], basis_[j]);
        if (std::abs(g - (i == j ? 1.0 : 0.0)) > tol)
          throw std::invalid_argument("slice basis is not orthonormal");
      }
    for (std::size_t i = 1; i < basis_.size(); ++i)
      if (!is_imaginary_unit(basis_[i], tol))
        throw std::invalid_argument("slice directions must square to -1");
    check_unit_sphere();
  }

  const AlgebraSpec& algebra() const { return *alg_; }
  int m() const { return static_cast<int>(basis_.size()); }
  const Element& basis(int i) const { return basis_[i]; }
  const std::string& name() const { return name_; }

  /// Unit imaginary direction from hemisphere angles (m - 2 of them). With
  /// m = 2 the sphere S is the pair {v_1, -v_1} and the angle list is empty.
  Element unit_from_angles(const std::vector<double>& theta) const {
    if (theta.size() != static_cast<std::size_t>(m() - 2))
      throw std::invalid_argument("expected m - 2 sphere angles");
    const auto q = spherical_direction(theta);
    Element j(*alg_);
    for (std::size_t l = 0; l < q.size(); ++l) j += q[l] * basis_[l + 1];
    return j;
  }

  /// alpha + beta * J for a unit J of this sphere.
  Element from_plane(double alpha, double beta, const Element& unit) const {
    Element x = unit * beta;
    x.coeff(0) += alpha;
    return x;
  }

  struct Projection {
    std::vector<double> coords;  // coordinates in the slice basis
    double residual = 0.0;       // Euclidean distance to the subspace
    double alpha = 0.0;
    double beta = 0.0;  // >= 0
  };

  Projection project(const Element& x) const {
    Projection p;
    p.coords.resize(basis_.size());
    Element rem = x;
    for (std::size_t l = 0; l < basis_.size(); ++l) {
      p.coords[l] = slice_inner(x, basis_[l]);
      rem -= p.coords[l] * basis_[l];
    }
    p.residual = euclidean_norm(rem);
    p.alpha = p.coords[0];
    double b2 = 0.0;
    for (std::size_t l = 1; l < basis_.size(); ++l)
      b2 += p.coords[l] * p.coords[l];
    p.beta = std::sqrt(b2);
    return p;
  }

private:
  // Samples unit combinations and verifies J^2 = -1; catches basis choices
  // whose directions do not anticommute.
  void check_unit_sphere() const {
    const int mm = m();
    if (mm == 2) return;
    std::vector<double> theta(static_cast<std::size_t>(mm - 2), 0.0);
    const auto ranges = hemisphere_ranges(mm - 2);
    const int steps = 5;
    std::vector<int> idx(theta.size(), 0);
    while (true) {
      for (std::size_t k = 0; k < theta.size(); ++k) {
        const double f = (idx[k] + 0.5) / steps;
        theta[k] = ranges[k].lo + f * ranges[k].length();
      }
      if (!is_imaginary_unit(unit_from_angles(theta), 1e-9))
        throw std::invalid_argument(
            "sampled slice direction does not square to -1");
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == steps) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }

  const AlgebraSpec* alg_;
  std::vector<Element> basis_;
  std::string name_;
};

/// Full quaternion slice structure: M = H, S the 2-sphere of unit imaginary
/// quaternions.
inline Gis full_gis(const AlgebraSpec& alg) {
  if (alg.dim() != 4 || alg.name() != "quaternion")
    throw std::invalid_argument(
        "the full slice structure is only valid for the quaternions");
  std::vector<Element> basis;
  for (int i = 0; i < 4; ++i) basis.push_back(Element::basis(alg, i));
  return Gis(alg, std::move(basis), "full");
}

/// Paravector slice structure of a Clifford algebra: M = R + span(e_1..e_n).
inline Gis paravector_gis(const AlgebraSpec& alg) {
  if (alg.name().rfind("clifford:", 0) != 0)
    throw std::invalid_argument(
        "the paravector slice structure needs a clifford algebra");
  std::vector<Element> basis;
  basis.push_back(Element::basis(alg, 0));
  int n = 0;
  while ((1 << n) < alg.dim()) ++n;
  for (int g = 1; g <= n; ++g)
    basis.push_back(Element::basis(alg, alg.basis_index("e" + std::string(1, static_cast<char>('0' + g)))));
  return Gis(alg, std::move(basis), "paravector");
}

/// Two-point sphere {J, -J} for a single imaginary unit J; M is the plane
/// spanned by 1 and J.
inline Gis plane_gis(const Element& j) {
  Element unit = j;
  const double n0 = norm(unit).coeff(0);
  if (!is_real(norm(unit), 1e-6) || !is_real(trace(unit), 1e-6) ||
      std::abs(trace(unit).coeff(0)) > 1e-6 || n0 <= 0.0 ||
      std::abs(n0 - 1.0) > 1e-6)
    throw std::invalid_argument("plane slice needs an imaginary unit");
  unit *= 1.0 / std::sqrt(n0);
  std::vector<Element> basis;
  basis.push_back(Element::scalar(j.algebra(), 1.0));
  basis.push_back(std::move(unit));
  return Gis(j.algebra(), std::move(basis), "plane");
}

/// Parses "full", "paravector", or "plane:<element literal>".
inline Gis gis_by_name(const AlgebraSpec& alg, const std::string& name) {
  if (name == "full") return full_gis(alg);
  if (name == "paravector") return paravector_gis(alg);
  if (name.rfind("plane:", 0) == 0)
    return plane_gis(parse_element(alg, name.substr(6)));
  throw std::invalid_argument("unknown slice structure '" + name + "'");
}

// ---------------------------------------------------------------------------
// Hemisphere quadrature grid and chart points
// ---------------------------------------------------------------------------

/// One node of the hemisphere sweep: angles, product quadrature weight,
/// Jacobian factor I(theta), the direction J_theta, and |J_theta| in the
/// ambient coefficient norm.
struct ThetaNode {
  std::vector<double> theta;
  double weight = 1.0;
  double jac = 1.0;
  Element unit;
  double unit_norm = 1.0;
};

/// Tensor Gauss-Legendre grid over the hemisphere box of S. For m = 2 this
/// is the single node J = v_1 with weight 1 (the 0-sphere hemisphere).
inline std::vector<ThetaNode> make_theta_grid(const Gis& gis, int n_per_angle) {
  std::vector<ThetaNode> nodes;
  const int n_ang = gis.m() - 2;
  if (n_ang == 0) {
    ThetaNode t;
    t.unit = gis.basis(1);
    t.unit_norm = euclidean_norm(t.unit);
    nodes.push_back(std::move(t));
    return nodes;
  }
  if (n_per_angle < 1)
    throw std::invalid_argument("theta grid needs at least one node per angle");
  const auto ranges = hemisphere_ranges(n_ang);
  std::vector<Rule1D> rules;
  rules.reserve(ranges.size());
  for (const auto& rg : ranges)
    rules.push_back(gauss_rule(n_per_angle, rg.lo, rg.hi));
  std::vector<std::size_t> idx(static_cast<std::size_t>(n_ang), 0);
  while (true) {
    ThetaNode t;
    t.theta.resize(static_cast<std::size_t>(n_ang));
    t.weight = 1.0;
    for (int k = 0; k < n_ang; ++k) {
      t.theta[k] = rules[k].nodes[idx[k]];
      t.weight *= rules[k].weights[idx[k]];
    }
    t.jac = spherical_jacobian_product(t.theta);
    t.unit = gis.unit_from_angles(t.theta);
    t.unit_norm = euclidean_norm(t.unit);
    nodes.push_back(std::move(t));
    int k = n_ang - 1;
    while (k >= 0 && ++idx[k] == rules[k].size()) idx[k--] = 0;
    if (k < 0) break;
  }
  return nodes;
}

/// Boundary chart point: w = a(t) + b(t) J_theta on curve `ci`, with the
/// outward unit normal (b' - a' J_theta)/speed and the surface-measure
/// weight |b|^{m-2} I(theta) speed.
struct BoundaryPoint {
  Element w;
  Element normal;
  double weight = 0.0;
};

inline BoundaryPoint boundary_point_psi(const PlanarDomain& domain,
                                        const Gis& gis, int ci, double t,
                                        const ThetaNode& tn) {
  const auto& cv = domain.curves().at(static_cast<std::size_t>(ci));
  const double a = cv.a(t), b = cv.b(t), da = cv.da(t), db = cv.db(t);
  const double speed = std::hypot(da, db);
  if (speed < 1e-14)
    throw std::domain_error("degenerate boundary parametrization");
  BoundaryPoint p;
  p.w = gis.from_plane(a, b, tn.unit);
  p.normal = tn.unit * (-da * (1.0 / speed));
  p.normal.coeff(0) += db / speed;
  const int m = gis.m();
  const double radial = m == 2 ? 1.0 : std::pow(std::abs(b), m - 2);
  p.weight = radial * tn.jac * speed;
  return p;
}

/// Volume chart point: w = r + s J_theta with weight |s|^{m-2} I(theta).
struct VolumePoint {
  Element w;
  double weight = 0.0;
};

inline VolumePoint volume_point_gamma(const PlanarDomain& domain,
                                      const Gis& gis, double r, double s,
                                      const ThetaNode& tn) {
  if (!domain.contains(r, s))
    throw std::domain_error("volume chart point outside the domain");
  if (s == 0.0)
    throw std::domain_error("volume chart is singular on the real axis");
  VolumePoint p;
  p.w = gis.from_plane(r, s, tn.unit);
  const int m = gis.m();
  p.weight = (m == 2 ? 1.0 : std::pow(std::abs(s), m - 2)) * tn.jac;
  return p;
}

/// Where x sits relative to the circularized domain Omega_D(S): outside the
/// subspace M entirely, or interior/boundary/exterior through its plane
/// coordinates.
enum class CircRegion { Interior, Boundary, Exterior, OutsideSubspace };

inline CircRegion circularize_membership(const PlanarDomain& domain,
                                         const Gis& gis, const Element& x,
                                         double tol = 1e-9) {
  const auto p = gis.project(x);
  if (p.residual > tol) return CircRegion::OutsideSubspace;
  switch (domain.classify(p.alpha, p.beta, tol)) {
    case PlanarDomain::Region::Interior:
      return CircRegion::Interior;
    case PlanarDomain::Region::Boundary:
      return CircRegion::Boundary;
    case PlanarDomain::Region::Exterior:
      return CircRegion::Exterior;
  }
  return CircRegion::Exterior;
}

}  // namespace slicecauchy
