// Numerical evaluation of the slice Cauchy integral formulas: the rescaled
// kernel C_S, boundary (psi-chart) and volume (Gamma-chart) integrals, the
// combined reconstruction, the single-slice Cauchy-Pompeiu reduction, and
// kernel-summability diagnostics.
//
// Volume integrals are singular at the two chart points (r, s) = (alpha,
// +-beta) of the evaluation point x = alpha + beta I. The scheme excises an
// axis-aligned rectangle of half-width eps around each singular point, so
// that the far field decomposes into panels whose integrand is analytic with
// poles at distance >= eps, and covers each rectangle by a polar sub-grid
// anchored at the singular point with geometric radial grading (the 1/rho
// kernel growth times the rho Jacobian is then analytic in rho).
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "algebra.hpp"
#include "domain.hpp"
#include "gis.hpp"
#include "polar.hpp"
#include "quadrature.hpp"
#include "stem.hpp"

namespace slicecauchy {

struct QuadratureGrid {
  int n_t = 64;      // boundary nodes per curve component
  int n_theta = 12;  // hemisphere nodes per angle
  int n_r = 32;      // volume nodes across the abscissa range
  int n_s = 32;      // volume nodes per vertical slice
  // Singularity handling.
  double excision_factor = 0.05;  // eps = factor * diam(D), capped by the
                                  // distance of (alpha, beta) to the boundary
  double grading_ratio = 0.5;     // geometric radial grading toward 0
  int grading_levels = 6;
  int n_rho = 10;  // radial nodes per grading segment
  int n_phi = 12;  // angular nodes per corner sector
  double margin_factor = 0.05;  // interior margin as a fraction of diam(D)

  void validate() const {
    if (n_t < 2 || n_theta < 2 || n_r < 2 || n_s < 2 || n_rho < 2 || n_phi < 2)
      throw std::invalid_argument("quadrature node counts must be >= 2");
    if (excision_factor <= 0.0)
      throw std::invalid_argument("excision factor must be positive");
    if (!(grading_ratio > 0.0 && grading_ratio < 1.0))
      throw std::invalid_argument("grading ratio must lie in (0, 1)");
    if (grading_levels < 1)
      throw std::invalid_argument("grading needs at least one level");
  }

  QuadratureGrid scaled(double f) const {
    QuadratureGrid g = *this;
    auto sc = [f](int n) {
      return std::max(2, static_cast<int>(std::lround(n * f)));
    };
    g.n_t = sc(n_t);
    g.n_theta = sc(n_theta);
    g.n_r = sc(n_r);
    g.n_s = sc(n_s);
    return g;
  }
};

/// Rescaled kernel C_S(x, w) = (2 / eta_{m-2}) C(x, w) / ||Im w||^{m-2},
/// with Im w = (w - w^c)/2. For m = 2 this is C itself.
inline Element kernel_CS(const Gis& gis, const Element& x, const Element& w,
                         double tol = kKernelSingularTol) {
  const int m = gis.m();
  if (m == 2) return cauchy_kernel(x, w, tol);
  const Element im = (w - conj(w)) * 0.5;
  const double imnorm = euclidean_norm(im);
  if (imnorm < 1e-12)
    throw std::domain_error("rescaled kernel undefined at real w for m > 2");
  const double scale =
      2.0 / (sphere_volume(m - 2) * std::pow(imnorm, m - 2));
  return cauchy_kernel(x, w, tol) * scale;
}

namespace detail {

// C(x, a + b J) for x with precomputed square, J a unit imaginary direction:
// Delta = x^2 - 2a x + (a^2 + b^2), C = Delta^c / n(Delta) * (w^c - x).
// Only an exact sphere hit is rejected: quadrature nodes may come arbitrarily
// close to the singular set (the weights keep the sums finite), and n(Delta)
// scales like the fourth power of that distance when x is real.
inline Element kernel_from_plane(const Element& x, const Element& xsq,
                                 double a, double b, const Element& unit) {
  Element delta = xsq - (2.0 * a) * x;
  delta.coeff(0) += a * a + b * b;
  const double n0 = norm(delta).coeff(0);
  if (n0 == 0.0)
    throw std::domain_error("Cauchy kernel evaluated on the sphere of w");
  Element wc = unit * (-b);
  wc.coeff(0) += a;
  return conj(delta) * (1.0 / n0) * (wc - x);
}

struct BoundaryNode {
  int curve = 0;
  double t = 0.0, wt = 0.0;
  double a = 0.0, b = 0.0, da = 0.0, db = 0.0, speed = 0.0;
};

// Curves are closed and analytic, so the uniform midpoint rule is the right
// quadrature: spectrally accurate for periodic integrands and equally
// resolved at every parameter value.
inline std::vector<BoundaryNode> boundary_nodes(const PlanarDomain& dom,
                                                int n_t) {
  std::vector<BoundaryNode> out;
  for (std::size_t ci = 0; ci < dom.curves().size(); ++ci) {
    const auto& cv = dom.curves()[ci];
    for (int k = 0; k < n_t; ++k) {
      BoundaryNode bn;
      bn.curve = static_cast<int>(ci);
      bn.t = (k + 0.5) / n_t;
      bn.wt = 1.0 / n_t;
      bn.a = cv.a(bn.t);
      bn.b = cv.b(bn.t);
      bn.da = cv.da(bn.t);
      bn.db = cv.db(bn.t);
      bn.speed = std::hypot(bn.da, bn.db);
      out.push_back(bn);
    }
  }
  return out;
}

struct PlaneNode {
  double r = 0.0, s = 0.0, w = 0.0;
};

struct ExcisionRect {
  double r0, r1, s0, s1;  // extents
  double cr, cs;          // anchored singular point
};

inline void subtract_window(std::vector<Interval>& segs, double lo, double hi) {
  std::vector<Interval> out;
  for (const auto& sg : segs) {
    if (hi <= sg.lo || lo >= sg.hi) {
      out.push_back(sg);
      continue;
    }
    if (lo > sg.lo) out.push_back({sg.lo, lo});
    if (hi < sg.hi) out.push_back({hi, sg.hi});
  }
  segs = std::move(out);
}

inline void split_at_zero(std::vector<Interval>& segs) {
  std::vector<Interval> out;
  for (const auto& sg : segs) {
    if (sg.lo < 0.0 && sg.hi > 0.0) {
      out.push_back({sg.lo, 0.0});
      out.push_back({0.0, sg.hi});
    } else {
      out.push_back(sg);
    }
  }
  segs = std::move(out);
}

inline bool rect_inside(const PlanarDomain& dom, double r0, double r1,
                        double s0, double s1) {
  // Corner containment suffices for the vertically convex disk/ellipse; the
  // annulus additionally must not meet its inner hole.
  const double cs[4][2] = {{r0, s0}, {r1, s0}, {r1, s1}, {r0, s1}};
  for (const auto& c : cs)
    if (!dom.contains(c[0], c[1])) return false;
  const auto bp = dom.alpha_breakpoints();
  if (bp.size() == 2) {
    const double c = 0.5 * (bp[0] + bp[1]);
    const double inner = 0.5 * (bp[1] - bp[0]);
    const double px = std::clamp(c, r0, r1);
    const double py = std::clamp(0.0, s0, s1);
    if ((px - c) * (px - c) + py * py <= inner * inner) return false;
  }
  return true;
}

struct VolumeScheme {
  double eps = 0.0;
  std::vector<ExcisionRect> rects;
  std::vector<PlaneNode> far;    // domain minus the rectangles
  std::vector<PlaneNode> local;  // polar patches over the rectangles
};

inline std::vector<ExcisionRect> make_rects(double alpha, double beta,
                                            double eps) {
  std::vector<ExcisionRect> rects;
  if (beta < eps) {
    // Overlapping windows: one block split on the real axis so each half
    // carries a single singular point (possibly on its edge).
    rects.push_back({alpha - eps, alpha + eps, 0.0, beta + eps, alpha, beta});
    rects.push_back(
        {alpha - eps, alpha + eps, -beta - eps, 0.0, alpha, -beta});
  } else {
    rects.push_back(
        {alpha - eps, alpha + eps, beta - eps, beta + eps, alpha, beta});
    rects.push_back(
        {alpha - eps, alpha + eps, -beta - eps, -beta + eps, alpha, -beta});
  }
  return rects;
}

// Distance from (cx, cy) to the rectangle boundary along direction phi;
// zero when the ray leaves immediately (anchor on an edge).
inline double ray_to_rect(const ExcisionRect& rc, double cx, double cy,
                          double phi) {
  double t = 1e300;
  const double c = std::cos(phi), s = std::sin(phi);
  if (c > 1e-15)
    t = std::min(t, (rc.r1 - cx) / c);
  else if (c < -1e-15)
    t = std::min(t, (rc.r0 - cx) / c);
  if (s > 1e-15)
    t = std::min(t, (rc.s1 - cy) / s);
  else if (s < -1e-15)
    t = std::min(t, (rc.s0 - cy) / s);
  if (t > 1e299) return 0.0;
  return std::max(t, 0.0);
}

inline void patch_nodes(const ExcisionRect& rc, const QuadratureGrid& grid,
                        std::vector<PlaneNode>& out) {
  // Corner sectors around the anchor; inside each sector the ray length to
  // the rectangle boundary is smooth.
  double ang[4];
  const double crn[4][2] = {
      {rc.r0, rc.s0}, {rc.r1, rc.s0}, {rc.r1, rc.s1}, {rc.r0, rc.s1}};
  for (int i = 0; i < 4; ++i) {
    double a = std::atan2(crn[i][1] - rc.cs, crn[i][0] - rc.cr);
    if (a < 0.0) a += 2.0 * M_PI;
    ang[i] = a;
  }
  std::sort(ang, ang + 4);
  for (int p = 0; p < 4; ++p) {
    const double fa = ang[p];
    const double fb = (p == 3) ? ang[0] + 2.0 * M_PI : ang[p + 1];
    if (fb - fa < 1e-12) continue;
    if (ray_to_rect(rc, rc.cr, rc.cs, 0.5 * (fa + fb)) <= 0.0) continue;
    const Rule1D prule = gauss_rule(grid.n_phi, fa, fb);
    for (std::size_t ip = 0; ip < prule.size(); ++ip) {
      const double phi = prule.nodes[ip];
      const double wphi = prule.weights[ip];
      const double reach = ray_to_rect(rc, rc.cr, rc.cs, phi);
      if (reach <= 0.0) continue;
      const double co = std::cos(phi), si = std::sin(phi);
      double hi = reach;
      for (int lev = 0; lev < grid.grading_levels; ++lev) {
        const double lo =
            (lev == grid.grading_levels - 1) ? 0.0 : hi * grid.grading_ratio;
        const Rule1D rrule = gauss_rule(grid.n_rho, lo, hi);
        for (std::size_t ir = 0; ir < rrule.size(); ++ir) {
          const double rho = rrule.nodes[ir];
          out.push_back({rc.cr + rho * co, rc.cs + rho * si,
                         wphi * rrule.weights[ir] * rho});
        }
        hi = lo;
        if (hi == 0.0) break;
      }
    }
  }
}

// Square annulus between the eps_in and eps_out squares centered at
// (cr, cs), covered by polar corner panels. Within a panel the ray length
// to either square is eps / max(|cos phi|, |sin phi|), so the radial rule
// sees a smooth band. Used by the summability diagnostic.
inline void shell_nodes(double cr, double cs, double eps_in, double eps_out,
                        int n_phi, int n_rho, std::vector<PlaneNode>& out) {
  for (int p = 0; p < 4; ++p) {
    const double fa = -0.25 * M_PI + 0.5 * M_PI * p;
    const Rule1D prule = gauss_rule(n_phi, fa, fa + 0.5 * M_PI);
    for (std::size_t ip = 0; ip < prule.size(); ++ip) {
      const double phi = prule.nodes[ip];
      const double co = std::cos(phi), si = std::sin(phi);
      const double mx = std::max(std::abs(co), std::abs(si));
      const Rule1D rrule = gauss_rule(n_rho, eps_in / mx, eps_out / mx);
      for (std::size_t ir = 0; ir < rrule.size(); ++ir) {
        const double rho = rrule.nodes[ir];
        out.push_back({cr + rho * co, cs + rho * si,
                       prule.weights[ip] * rrule.weights[ir] * rho});
      }
    }
  }
}

inline VolumeScheme volume_scheme(const PlanarDomain& dom, double alpha,
                                  double beta, const QuadratureGrid& grid,
                                  bool with_patches = true,
                                  double eps_override = 0.0) {
  VolumeScheme vs;
  double eps = eps_override > 0.0 ? eps_override
                                  : grid.excision_factor * dom.diameter();
  eps = std::min(eps, 0.6 * dom.boundary_distance(alpha, beta));
  bool fits = false;
  for (int tries = 0; tries < 60 && eps > 0.0; ++tries) {
    fits = true;
    for (const auto& rc : make_rects(alpha, beta, eps))
      fits = fits && rect_inside(dom, rc.r0, rc.r1, rc.s0, rc.s1);
    if (fits) break;
    eps *= 0.7;
  }
  if (!fits || eps <= 0.0)
    throw std::domain_error(
        "no admissible excision neighborhood; x too close to the boundary");
  vs.eps = eps;
  vs.rects = make_rects(alpha, beta, eps);

  // Far field: panels split where the integrand or the slice structure
  // changes character (strip edges, buffer edges, annulus tangencies).
  const Interval rr = dom.alpha_range();
  std::vector<double> bps = {rr.lo,          rr.hi,          alpha - 3 * eps,
                             alpha - eps,    alpha + eps,    alpha + 3 * eps};
  for (double b : dom.alpha_breakpoints()) bps.push_back(b);
  std::sort(bps.begin(), bps.end());
  std::vector<double> panels;
  for (double b : bps) {
    if (b < rr.lo - 1e-14 || b > rr.hi + 1e-14) continue;
    if (!panels.empty() && b - panels.back() < 1e-12 * dom.diameter())
      continue;
    panels.push_back(b);
  }
  const double total = rr.hi - rr.lo;
  const int min_r = std::max(6, grid.n_r / 4);
  const int min_s = std::max(4, grid.n_s / 8);
  for (std::size_t pi = 0; pi + 1 < panels.size(); ++pi) {
    const double p = panels[pi], q = panels[pi + 1];
    const double len = q - p;
    if (len < 1e-14) continue;
    const int n_panel = std::clamp(
        static_cast<int>(std::lround(grid.n_r * len / total)), min_r,
        grid.n_r);
    const Rule1D rrule = gauss_rule(n_panel, p, q);
    for (std::size_t ir = 0; ir < rrule.size(); ++ir) {
      const double r = rrule.nodes[ir];
      const double wr = rrule.weights[ir];
      std::vector<Interval> segs = dom.slice(r);
      for (const auto& rc : vs.rects)
        if (r > rc.r0 && r < rc.r1) subtract_window(segs, rc.s0, rc.s1);
      split_at_zero(segs);
      double height = 0.0;
      for (const auto& sg : segs) height += sg.length();
      if (height <= 0.0) continue;
      for (const auto& sg : segs) {
        if (sg.length() < 1e-14) continue;
        const int n_seg = std::clamp(
            static_cast<int>(std::lround(grid.n_s * sg.length() / height)),
            min_s, grid.n_s);
        const Rule1D srule = gauss_rule(n_seg, sg.lo, sg.hi);
        for (std::size_t is = 0; is < srule.size(); ++is)
          vs.far.push_back(
              {r, srule.nodes[is], wr * srule.weights[is]});
      }
    }
  }
  if (with_patches)
    for (const auto& rc : vs.rects) patch_nodes(rc, grid, vs.local);
  return vs;
}

// Decomposes x and checks the interior margin of the reconstruction formulas.
inline ConeDecomposition ensure_interior(const PlanarDomain& dom,
                                         const Element& x,
                                         const QuadratureGrid& grid) {
  const ConeDecomposition d = decompose(x);
  if (!dom.contains(d.alpha, d.beta))
    throw std::domain_error("evaluation point is not interior to the domain");
  const double margin = grid.margin_factor * dom.diameter();
  if (dom.boundary_distance(d.alpha, d.beta) <= margin)
    throw std::domain_error(
        "evaluation point too close to the boundary for this grid");
  return d;
}

// (1/2pi) * psi-chart boundary quadrature; membership/margin checks are the
// caller's responsibility (the reconstruction enforces the interior margin,
// the transforms only a small separation).
inline Element boundary_sum(const Gis& gis, const PlanarDomain& dom,
                            const SliceFn& f, const Element& x,
                            const QuadratureGrid& grid) {
  const auto bnodes = boundary_nodes(dom, grid.n_t);
  const auto tgrid = make_theta_grid(gis, grid.n_theta);
  const int m = gis.m();
  const double scale = 2.0 / sphere_volume(std::max(m - 2, 0));
  const Element xsq = x * x;
  std::vector<Element> partials(tgrid.size());
  parallel_for_index(tgrid.size(), [&](std::size_t ti) {
    const ThetaNode& tn = tgrid[ti];
    ElementSum acc(gis.algebra());
    for (const auto& bn : bnodes) {
      if (m > 2 && bn.b == 0.0) continue;  // weight zero cancels the kernel
      const double radial = (m == 2) ? 1.0 : std::pow(std::abs(bn.b), m - 2);
      const double imnorm =
          (m == 2) ? 1.0 : std::pow(std::abs(bn.b) * tn.unit_norm, m - 2);
      Element kern = kernel_from_plane(x, xsq, bn.a, bn.b, tn.unit) *
                     (scale / imnorm);
      Element normal = tn.unit * (-bn.da / bn.speed);
      normal.coeff(0) += bn.db / bn.speed;
      const Element w = gis.from_plane(bn.a, bn.b, tn.unit);
      const Element integrand = kern * normal * f.value(w);
      acc.add(integrand, bn.wt * tn.weight * radial * tn.jac * bn.speed);
    }
    partials[ti] = acc.value();
  });
  ElementSum total(gis.algebra());
  for (const auto& p : partials) total.add(p);
  return total.value() * (1.0 / (2.0 * M_PI));
}

// Single-slice boundary line integral of C(x, w)(b' - a' J) f(w) dt over
// all curve components, for a fixed direction J.
inline Element slice_line_sum(const Gis& gis, const PlanarDomain& dom,
                              const SliceFn& f, const Element& x,
                              const Element& unit, int n_t) {
  const Element xsq = x * x;
  ElementSum acc(gis.algebra());
  for (const auto& bn : boundary_nodes(dom, n_t)) {
    Element kern = kernel_from_plane(x, xsq, bn.a, bn.b, unit);
    Element tangent = unit * (-bn.da);
    tangent.coeff(0) += bn.db;
    const Element w = gis.from_plane(bn.a, bn.b, unit);
    acc.add(kern * tangent * f.value(w), bn.wt);
  }
  return acc.value();
}

}  // namespace detail

/// (1/2pi) * integral over the circularized boundary of C_S(x, w) n(w) f(w)
/// against the surface measure, through the psi-chart (curve parameter t and
/// hemisphere angles theta). The factor order kernel * normal * value is
/// fixed by noncommutativity.
inline Element boundary_integral(const Gis& gis, const PlanarDomain& dom,
                                 const SliceFn& f, const Element& x,
                                 const QuadratureGrid& grid) {
  grid.validate();
  detail::ensure_interior(dom, x, grid);
  return detail::boundary_sum(gis, dom, f, x, grid);
}

/// (1/pi) * integral over the circularized domain of C_S(x, w) df(w) against
/// the volume measure, through the Gamma-chart with weight |s|^{m-2}
/// I(theta) and the excision scheme described at the top of this header.
inline Element volume_integral(const Gis& gis, const PlanarDomain& dom,
                               const std::function<Element(const Element&)>& df,
                               const Element& x, const QuadratureGrid& grid) {
  grid.validate();
  if (!df) return Element(gis.algebra());
  const ConeDecomposition d = detail::ensure_interior(dom, x, grid);
  const auto vs = detail::volume_scheme(dom, d.alpha, d.beta, grid);
  const auto tgrid = make_theta_grid(gis, grid.n_theta);
  const int m = gis.m();
  const double scale = 2.0 / sphere_volume(std::max(m - 2, 0));
  const Element xsq = x * x;
  std::vector<Element> partials(tgrid.size());
  parallel_for_index(tgrid.size(), [&](std::size_t ti) {
    const ThetaNode& tn = tgrid[ti];
    ElementSum acc(gis.algebra());
    auto take = [&](const detail::PlaneNode& pn) {
      if (pn.s == 0.0) return;
      const double radial = (m == 2) ? 1.0 : std::pow(std::abs(pn.s), m - 2);
      const double imnorm =
          (m == 2) ? 1.0 : std::pow(std::abs(pn.s) * tn.unit_norm, m - 2);
      Element kern =
          detail::kernel_from_plane(x, xsq, pn.r, pn.s, tn.unit) *
          (scale / imnorm);
      const Element w = gis.from_plane(pn.r, pn.s, tn.unit);
      const Element integrand = kern * df(w);
      acc.add(integrand, pn.w * tn.weight * radial * tn.jac);
    };
    for (const auto& pn : vs.far) take(pn);
    for (const auto& pn : vs.local) take(pn);
    partials[ti] = acc.value();
  });
  ElementSum total(gis.algebra());
  for (const auto& p : partials) total.add(p);
  return total.value() * (1.0 / M_PI);
}

/// Single-slice Cauchy-Pompeiu reduction on the plane of J_theta:
/// integral over the slice boundary of C(x, w)(b' - a' J) f(w) dt minus
/// 2 * integral over D of C(x, w) df(w) dr ds. Equals 2 pi f(x) in exact
/// arithmetic, for every admissible theta.
inline Element slice_reduction(const Gis& gis, const PlanarDomain& dom,
                               const SliceFn& f, const Element& x,
                               const PolarPoint& theta,
                               const QuadratureGrid& grid) {
  grid.validate();
  const ConeDecomposition d = detail::ensure_interior(dom, x, grid);
  if (!in_ranges(theta.theta, hemisphere_ranges(gis.m() - 2)) &&
      gis.m() > 2)
    throw std::invalid_argument("theta outside the hemisphere box");
  const Element unit = gis.unit_from_angles(theta.theta);
  const Element xsq = x * x;
  Element result = detail::slice_line_sum(gis, dom, f, x, unit, grid.n_t);
  if (!f.slice_regular()) {
    const auto vs = detail::volume_scheme(dom, d.alpha, d.beta, grid);
    ElementSum vol(gis.algebra());
    auto take = [&](const detail::PlaneNode& pn) {
      if (pn.s == 0.0) return;
      Element kern = detail::kernel_from_plane(x, xsq, pn.r, pn.s, unit);
      const Element w = gis.from_plane(pn.r, pn.s, unit);
      vol.add(kern * f.deriv(w), pn.w);
    };
    for (const auto& pn : vs.far) take(pn);
    for (const auto& pn : vs.local) take(pn);
    result -= 2.0 * vol.value();
  }
  return result;
}

struct CauchyResult {
  Element boundary;               // (1/2pi) * surface integral
  Element volume;                 // (1/pi) * volume integral
  Element combined;               // boundary - volume
  std::vector<Element> per_theta; // slice reductions / 2pi at sample angles
  long nodes_boundary = 0;
  long nodes_volume = 0;
  double error_estimate = 0.0;    // vs. a half-resolution grid
};

/// Combined reconstruction f(x) = (1/2pi) * boundary - (1/pi) * volume; the
/// volume term is skipped when f is declared slice regular. per_theta holds
/// the single-slice reduction values (divided by 2pi) at up to five sample
/// angles, which agree with `combined` up to quadrature error.
inline CauchyResult cauchy_reconstruct(const Gis& gis, const PlanarDomain& dom,
                                       const SliceFn& f, const Element& x,
                                       const QuadratureGrid& grid,
                                       bool with_error_estimate = true,
                                       bool with_theta_samples = true) {
  grid.validate();
  const ConeDecomposition d = detail::ensure_interior(dom, x, grid);
  CauchyResult res;
  res.boundary = boundary_integral(gis, dom, f, x, grid);
  res.nodes_boundary = static_cast<long>(
      detail::boundary_nodes(dom, grid.n_t).size() *
      make_theta_grid(gis, grid.n_theta).size());
  if (f.slice_regular()) {
    res.volume = Element(gis.algebra());
  } else {
    res.volume = volume_integral(gis, dom, f.deriv, x, grid);
    const auto vs = detail::volume_scheme(dom, d.alpha, d.beta, grid);
    res.nodes_volume = static_cast<long>(
        (vs.far.size() + vs.local.size()) *
        make_theta_grid(gis, grid.n_theta).size());
  }
  res.combined = res.boundary - res.volume;
  if (with_theta_samples) {
    const int n_ang = gis.m() - 2;
    const auto ranges = hemisphere_ranges(n_ang);
    const int samples = n_ang == 0 ? 1 : 5;
    for (int k = 0; k < samples; ++k) {
      PolarPoint th;
      th.theta.resize(static_cast<std::size_t>(n_ang));
      for (int a = 0; a < n_ang; ++a) {
        const double fr = (k + 0.5 + 0.13 * a) / samples;
        th.theta[a] =
            ranges[a].lo + (fr - std::floor(fr)) * ranges[a].length();
      }
      res.per_theta.push_back(
          slice_reduction(gis, dom, f, x, th, grid) * (1.0 / (2.0 * M_PI)));
    }
  }
  if (with_error_estimate) {
    const CauchyResult half = cauchy_reconstruct(gis, dom, f, x,
                                                 grid.scaled(0.5), false,
                                                 false);
    res.error_estimate = euclidean_norm(res.combined - half.combined);
  }
  return res;
}

enum class Chart { Volume, Boundary };

/// Estimates of the integral of ||C_S(x, .)|| for a sequence of grids.
///
/// Volume chart: the first grid fixes a base excision around the two
/// singular points; each later grid shrinks the excised square by the ratio
/// of its excision factor to its predecessor's, and the square annulus in
/// between is integrated on its own polar grid. Estimates therefore grow
/// monotonically toward the full integral and their increments track the
/// shell widths, which is the summability statement in quantitative form.
/// Needs the two singular points separated at the base excision. Boundary
/// chart: plain n_t / n_theta quadrature of the bounded boundary integrand
/// per grid.
inline std::vector<double> summability_diagnostic(
    const Gis& gis, const PlanarDomain& dom, const Element& x,
    const std::vector<QuadratureGrid>& grids, Chart chart = Chart::Volume) {
  const ConeDecomposition d = decompose(x);
  if (!dom.contains(d.alpha, d.beta))
    throw std::domain_error("summability diagnostic needs interior x");
  if (grids.empty()) return {};
  const int m = gis.m();
  const double scale = 2.0 / sphere_volume(std::max(m - 2, 0));
  const Element xsq = x * x;

  const auto mass = [&](const std::vector<detail::PlaneNode>& nodes,
                        const QuadratureGrid& grid) {
    const auto tgrid = make_theta_grid(gis, grid.n_theta);
    std::vector<double> partials(tgrid.size(), 0.0);
    parallel_for_index(tgrid.size(), [&](std::size_t ti) {
      const ThetaNode& tn = tgrid[ti];
      NeumaierSum acc;
      for (const auto& pn : nodes) {
        if (pn.s == 0.0) continue;
        const double radial = (m == 2) ? 1.0 : std::pow(std::abs(pn.s), m - 2);
        const double imnorm =
            (m == 2) ? 1.0 : std::pow(std::abs(pn.s) * tn.unit_norm, m - 2);
        const Element kern =
            detail::kernel_from_plane(x, xsq, pn.r, pn.s, tn.unit) *
            (scale / imnorm);
        acc.add(pn.w * tn.weight * radial * tn.jac * euclidean_norm(kern));
      }
      partials[ti] = acc.value();
    });
    NeumaierSum total;
    for (double p : partials) total.add(p);
    return total.value();
  };

  std::vector<double> out;
  if (chart == Chart::Volume) {
    grids[0].validate();
    const auto vs = detail::volume_scheme(dom, d.alpha, d.beta, grids[0], false);
    if (d.beta <= vs.eps)
      throw std::domain_error(
          "summability diagnostic needs the singular pair separated at the "
          "base excision");
    NeumaierSum est;
    est.add(mass(vs.far, grids[0]));
    out.push_back(est.value());
    double eps_prev = vs.eps;
    for (std::size_t k = 1; k < grids.size(); ++k) {
      grids[k].validate();
      const double ratio =
          grids[k].excision_factor / grids[k - 1].excision_factor;
      if (!(ratio > 0.0 && ratio < 1.0))
        throw std::invalid_argument(
            "summability grids need decreasing excision factors");
      const double eps_k = eps_prev * ratio;
      std::vector<detail::PlaneNode> shell;
      detail::shell_nodes(d.alpha, d.beta, eps_k, eps_prev, grids[k].n_phi,
                          grids[k].n_rho, shell);
      detail::shell_nodes(d.alpha, -d.beta, eps_k, eps_prev, grids[k].n_phi,
                          grids[k].n_rho, shell);
      est.add(mass(shell, grids[k]));
      out.push_back(est.value());
      eps_prev = eps_k;
    }
  } else {
    for (const auto& grid : grids) {
      grid.validate();
      std::vector<detail::PlaneNode> nodes;
      for (const auto& bn : detail::boundary_nodes(dom, grid.n_t))
        nodes.push_back({bn.a, bn.b, bn.wt * bn.speed});
      out.push_back(mass(nodes, grid));
    }
  }
  return out;
}

/// Grid sequence for the volume summability study: the excision factor
/// shrinks by `shrink` per level while node counts stay fixed, producing
/// nested neighborhoods of the singular points.
inline std::vector<QuadratureGrid> make_summability_grids(
    const QuadratureGrid& base, int levels, double shrink = 4.0) {
  std::vector<QuadratureGrid> out;
  QuadratureGrid g = base;
  for (int l = 0; l < levels; ++l) {
    out.push_back(g);
    g.excision_factor /= shrink;
  }
  return out;
}

}  // namespace slicecauchy
