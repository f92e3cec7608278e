// Cauchy-type transforms F^+ / F^- of boundary data, their boundary limits
// by normal-offset extrapolation, the Sokhotskii-Plemelj jump f = F^+ - F^-,
// and the slice-regular extension criterion (F^- vanishing on the boundary).
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cauchy.hpp"

namespace slicecauchy {

enum class TransformSide { Plus, Minus };

/// Minimum separation of transform evaluation points from the boundary, as
/// a fraction of diam(D). Much smaller than the reconstruction margin so
/// that approach sequences can get close.
inline constexpr double kTransformSeparation = 1e-3;

/// F^+/F^- at x: the boundary integral (1/2pi) int C_S(x, w) n(w) f(w)
/// dsigma evaluated at interior (plus) or exterior (minus) points of the
/// circularized domain.
inline Element cauchy_transform(const Gis& gis, const PlanarDomain& dom,
                                const SliceFn& f, const Element& x,
                                const QuadratureGrid& grid,
                                TransformSide side) {
  grid.validate();
  const ConeDecomposition d = decompose(x);
  if (dom.boundary_distance(d.alpha, d.beta) <=
      kTransformSeparation * dom.diameter())
    throw std::domain_error("transform point too close to the boundary");
  const bool interior = dom.contains(d.alpha, d.beta);
  if (side == TransformSide::Plus && !interior)
    throw std::domain_error("plus-side transform requires an interior point");
  if (side == TransformSide::Minus && interior)
    throw std::domain_error("minus-side transform requires an exterior point");
  // Integrate f - f(w0), with w0 the nearest boundary point in the plane of
  // x, then add back the exact transform of that constant (the constant
  // itself inside, zero outside). The shifted integrand vanishes where the
  // kernel peaks, so near-boundary evaluations stay resolvable at moderate
  // node counts.
  const auto near = dom.nearest_boundary(d.alpha, d.beta);
  const auto& cv = dom.curves().at(static_cast<std::size_t>(near.curve));
  const Element unit = d.unit.has_value() ? *d.unit : gis.basis(1);
  const Element c = f.value(gis.from_plane(cv.a(near.t), cv.b(near.t), unit));
  SliceFn shifted = f;
  shifted.value = [&f, c](const Element& w) { return f.value(w) - c; };
  Element out = detail::boundary_sum(gis, dom, shifted, x, grid);
  if (interior) out = out + c;
  return out;
}

/// Per-slice transform F_theta^{+/-}(x) = (1/2pi) int C(x, w)(b' - a' J_theta)
/// f(w) dt on the single slice of J_theta. Its I(theta)-weighted average over
/// the hemisphere, times 2/eta_{m-2}, recovers cauchy_transform.
inline Element slice_transform_F_theta(const Gis& gis, const PlanarDomain& dom,
                                       const SliceFn& f, const Element& x,
                                       const PolarPoint& theta, int n_t,
                                       TransformSide side) {
  const ConeDecomposition d = decompose(x);
  if (dom.boundary_distance(d.alpha, d.beta) <=
      kTransformSeparation * dom.diameter())
    throw std::domain_error("transform point too close to the boundary");
  const bool interior = dom.contains(d.alpha, d.beta);
  if ((side == TransformSide::Plus) != interior)
    throw std::domain_error("transform point on the wrong side");
  const Element unit = gis.unit_from_angles(theta.theta);
  // Same constant compensation as cauchy_transform, on this single slice.
  const auto near = dom.nearest_boundary(d.alpha, d.beta);
  const auto& cv = dom.curves().at(static_cast<std::size_t>(near.curve));
  const Element c = f.value(gis.from_plane(cv.a(near.t), cv.b(near.t), unit));
  SliceFn shifted = f;
  shifted.value = [&f, c](const Element& w) { return f.value(w) - c; };
  Element out = detail::slice_line_sum(gis, dom, shifted, x, unit, n_t) *
                (1.0 / (2.0 * M_PI));
  if (interior) out = out + c;
  return out;
}

struct JumpReport {
  Element boundary_point;
  Element f_plus;   // extrapolated interior limit
  Element f_minus;  // extrapolated exterior limit
  Element jump;     // f_plus - f_minus
  Element boundary_value;
  double residual = 0.0;  // ||jump - f(x_hat)||
  std::vector<double> offsets;
  bool monotone = true;  // offset values approach the extrapolant monotonically
};

namespace detail {

/// Neville extrapolation of (d_i, v_i) samples to d = 0. Two samples give
/// first-order Richardson; more samples raise the order accordingly.
inline Element extrapolate_to_zero(std::vector<Element> v,
                                   const std::vector<double>& d) {
  const std::size_t n = v.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = 0; i + level < n; ++i)
      v[i] = (v[i + 1] * d[i] - v[i] * d[i + level]) *
             (1.0 / (d[i] - d[i + level]));
  return v[0];
}

}  // namespace detail

/// Evaluates F^+/F^- at points offset from the boundary point along the
/// planar normal, extrapolates both to offset 0 through all offsets, and
/// compares the jump with f(x_hat). Offsets must decrease strictly;
/// defaults are (0.04, 0.02, 0.01) * diam(D).
inline JumpReport jump_check(const Gis& gis, const PlanarDomain& dom,
                             const SliceFn& f, const Element& xhat,
                             const QuadratureGrid& grid,
                             std::vector<double> offsets = {}) {
  grid.validate();
  const double diam = dom.diameter();
  if (offsets.empty()) offsets = {0.04 * diam, 0.02 * diam, 0.01 * diam};
  if (offsets.size() < 2)
    throw std::invalid_argument("jump extrapolation needs >= 2 offsets");
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (offsets[i] <= kTransformSeparation * diam)
      throw std::invalid_argument("offset below the transform separation");
    if (i > 0 && offsets[i] >= offsets[i - 1])
      throw std::invalid_argument("offsets must decrease strictly");
    if (offsets[i] >= grid.margin_factor * diam * 2.0)
      throw std::invalid_argument("offset too large for a boundary limit");
  }
  const ConeDecomposition d = decompose(xhat);
  if (dom.classify(d.alpha, d.beta, 1e-6 * diam) !=
      PlanarDomain::Region::Boundary)
    throw std::domain_error("jump check needs a boundary point");
  const auto near = dom.nearest_boundary(d.alpha, d.beta);
  const auto& cv = dom.curves().at(static_cast<std::size_t>(near.curve));
  const double da = cv.da(near.t), db = cv.db(near.t);
  const double speed = std::hypot(da, db);
  const double n1 = db / speed, n2 = -da / speed;  // planar outward normal
  const Element unit = d.unit.has_value() ? *d.unit : gis.basis(1);

  std::vector<Element> plus_vals, minus_vals;
  for (double off : offsets) {
    const Element xin =
        gis.from_plane(d.alpha - off * n1, d.beta - off * n2, unit);
    const Element xout =
        gis.from_plane(d.alpha + off * n1, d.beta + off * n2, unit);
    plus_vals.push_back(
        cauchy_transform(gis, dom, f, xin, grid, TransformSide::Plus));
    minus_vals.push_back(
        cauchy_transform(gis, dom, f, xout, grid, TransformSide::Minus));
  }
  const std::size_t n = offsets.size();
  JumpReport rep;
  rep.boundary_point = xhat;
  rep.offsets = offsets;
  rep.f_plus = detail::extrapolate_to_zero(plus_vals, offsets);
  rep.f_minus = detail::extrapolate_to_zero(minus_vals, offsets);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (euclidean_norm(plus_vals[i + 1] - rep.f_plus) >
        euclidean_norm(plus_vals[i] - rep.f_plus) + 1e-14)
      rep.monotone = false;
    if (euclidean_norm(minus_vals[i + 1] - rep.f_minus) >
        euclidean_norm(minus_vals[i] - rep.f_minus) + 1e-14)
      rep.monotone = false;
  }
  rep.jump = rep.f_plus - rep.f_minus;
  rep.boundary_value = f.value(xhat);
  rep.residual = euclidean_norm(rep.jump - rep.boundary_value);
  return rep;
}

struct ExtensionResult {
  bool extends = false;
  double max_f_minus = 0.0;
  std::vector<Element> minus_limits;  // per probe, extrapolated to boundary
  std::vector<Element> plus_limits;   // the candidate extension values there
};

/// f extends slice-regularly to the closed circularized domain iff F^-
/// vanishes on the boundary: each exterior probe is projected to its nearest
/// boundary point and F^- is extrapolated to it along the normal from the
/// probe's own distance (halved twice); extends = max ||F^- limit|| < tol.
inline ExtensionResult extension_test(const Gis& gis, const PlanarDomain& dom,
                                      const SliceFn& f,
                                      const QuadratureGrid& grid,
                                      const std::vector<Element>& probes,
                                      double tol = 1e-3) {
  grid.validate();
  ExtensionResult res;
  res.minus_limits.resize(probes.size(), Element(gis.algebra()));
  res.plus_limits.resize(probes.size(), Element(gis.algebra()));
  std::vector<double> norms(probes.size(), 0.0);
  std::vector<ConeDecomposition> decomp(probes.size());
  for (std::size_t pi = 0; pi < probes.size(); ++pi) {
    decomp[pi] = decompose(probes[pi]);
    if (dom.contains(decomp[pi].alpha, decomp[pi].beta))
      throw std::domain_error("extension probes must be exterior");
    if (dom.nearest_boundary(decomp[pi].alpha, decomp[pi].beta).dist <=
        2.0 * kTransformSeparation * dom.diameter())
      throw std::domain_error("extension probe too close to the boundary");
  }
  parallel_for_index(probes.size(), [&](std::size_t pi) {
    const ConeDecomposition& d = decomp[pi];
    const auto near = dom.nearest_boundary(d.alpha, d.beta);
    const auto& cv = dom.curves().at(static_cast<std::size_t>(near.curve));
    const double a = cv.a(near.t), b = cv.b(near.t);
    const double da = cv.da(near.t), db = cv.db(near.t);
    const double speed = std::hypot(da, db);
    const double n1 = db / speed, n2 = -da / speed;
    const Element unit = d.unit.has_value() ? *d.unit : gis.basis(1);
    const double d0 = near.dist;
    const std::vector<double> dists = {d0, 0.5 * d0, 0.25 * d0};
    std::vector<Element> mvals, pvals;
    for (double dist : dists) {
      const Element xout =
          gis.from_plane(a + dist * n1, b + dist * n2, unit);
      const Element xin =
          gis.from_plane(a - dist * n1, b - dist * n2, unit);
      mvals.push_back(
          cauchy_transform(gis, dom, f, xout, grid, TransformSide::Minus));
      pvals.push_back(
          cauchy_transform(gis, dom, f, xin, grid, TransformSide::Plus));
    }
    res.minus_limits[pi] = detail::extrapolate_to_zero(mvals, dists);
    res.plus_limits[pi] = detail::extrapolate_to_zero(pvals, dists);
    norms[pi] = euclidean_norm(res.minus_limits[pi]);
  });
  for (double v : norms) res.max_f_minus = std::max(res.max_f_minus, v);
  res.extends = res.max_f_minus < tol;
  return res;
}

}  // namespace slicecauchy
