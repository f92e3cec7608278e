// Planar integration domains in the (alpha, beta) half-plane coordinates,
// symmetric under beta -> -beta: disks, annuli, ellipses centered on the
// real axis. Each domain exposes its boundary as parametrized curves on
// [0, 1] with the outer normal convention (b', -a')/|(a', b')|.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "polar.hpp"

namespace slicecauchy {

class PlanarDomain {
public:
  struct Curve {
    std::function<double(double)> a, b, da, db;
  };
  enum class Region { Interior, Boundary, Exterior };
  struct Nearest {
    int curve = 0;
    double t = 0.0;
    double dist = 0.0;
  };

  static PlanarDomain disk(double c, double r) {
    if (r <= 0.0) throw std::invalid_argument("disk radius must be positive");
    PlanarDomain d;
    d.kind_ = Kind::Disk;
    d.p_ = {c, r, 0.0};
    d.curves_.push_back(circle_curve(c, r, +1));
    return d;
  }

  static PlanarDomain annulus(double c, double r1, double r2) {
    if (!(0.0 < r1 && r1 < r2))
      throw std::invalid_argument("annulus needs 0 < r1 < r2");
    PlanarDomain d;
    d.kind_ = Kind::Annulus;
    d.p_ = {c, r1, r2};
    d.curves_.push_back(circle_curve(c, r2, +1));  // outer, counterclockwise
    d.curves_.push_back(circle_curve(c, r1, -1));  // inner, clockwise
    return d;
  }

  static PlanarDomain ellipse(double c, double ax, double ay) {
    if (ax <= 0.0 || ay <= 0.0)
      throw std::invalid_argument("ellipse semi-axes must be positive");
    PlanarDomain d;
    d.kind_ = Kind::Ellipse;
    d.p_ = {c, ax, ay};
    Curve e;
    e.a = [c, ax](double t) { return c + ax * std::cos(2.0 * M_PI * t); };
    e.b = [ay](double t) { return ay * std::sin(2.0 * M_PI * t); };
    e.da = [ax](double t) {
      return -2.0 * M_PI * ax * std::sin(2.0 * M_PI * t);
    };
    e.db = [ay](double t) { return 2.0 * M_PI * ay * std::cos(2.0 * M_PI * t); };
    d.curves_.push_back(std::move(e));
    return d;
  }

  /// Parses "disk:c,r", "annulus:c,r1,r2", "ellipse:c,ax,ay".
  static PlanarDomain parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("domain spec needs kind:params");
    const std::string kind = text.substr(0, colon);
    std::vector<double> v;
    std::stringstream ss(text.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
    if (kind == "disk" && v.size() == 2) return disk(v[0], v[1]);
    if (kind == "annulus" && v.size() == 3) return annulus(v[0], v[1], v[2]);
    if (kind == "ellipse" && v.size() == 3) return ellipse(v[0], v[1], v[2]);
    throw std::invalid_argument("bad domain spec '" + text + "'");
  }

  std::string spec_string() const {
    std::ostringstream os;
    switch (kind_) {
      case Kind::Disk:
        os << "disk:" << p_[0] << "," << p_[1];
        break;
      case Kind::Annulus:
        os << "annulus:" << p_[0] << "," << p_[1] << "," << p_[2];
        break;
      case Kind::Ellipse:
        os << "ellipse:" << p_[0] << "," << p_[1] << "," << p_[2];
        break;
    }
    return os.str();
  }

  const std::vector<Curve>& curves() const { return curves_; }

  bool contains(double alpha, double beta) const {
    switch (kind_) {
      case Kind::Disk:
        return sq(alpha - p_[0]) + sq(beta) < sq(p_[1]);
      case Kind::Annulus: {
        const double rho2 = sq(alpha - p_[0]) + sq(beta);
        return rho2 > sq(p_[1]) && rho2 < sq(p_[2]);
      }
      case Kind::Ellipse:
        return sq((alpha - p_[0]) / p_[1]) + sq(beta / p_[2]) < 1.0;
    }
    return false;
  }

  /// Unsigned distance to the boundary (exact for disk/annulus, iterative
  /// for the ellipse).
  double boundary_distance(double alpha, double beta) const {
    switch (kind_) {
      case Kind::Disk:
        return std::abs(std::hypot(alpha - p_[0], beta) - p_[1]);
      case Kind::Annulus: {
        const double rho = std::hypot(alpha - p_[0], beta);
        return std::min(std::abs(rho - p_[1]), std::abs(rho - p_[2]));
      }
      case Kind::Ellipse:
        return nearest_boundary(alpha, beta).dist;
    }
    return 0.0;
  }

  Region classify(double alpha, double beta, double tol) const {
    if (boundary_distance(alpha, beta) <= tol) return Region::Boundary;
    return contains(alpha, beta) ? Region::Interior : Region::Exterior;
  }

  double diameter() const {
    switch (kind_) {
      case Kind::Disk:
        return 2.0 * p_[1];
      case Kind::Annulus:
        return 2.0 * p_[2];
      case Kind::Ellipse:
        return 2.0 * std::max(p_[1], p_[2]);
    }
    return 0.0;
  }

  /// (alpha_min, alpha_max, beta_min, beta_max).
  std::array<double, 4> bounding_box() const {
    switch (kind_) {
      case Kind::Disk:
        return {p_[0] - p_[1], p_[0] + p_[1], -p_[1], p_[1]};
      case Kind::Annulus:
        return {p_[0] - p_[2], p_[0] + p_[2], -p_[2], p_[2]};
      case Kind::Ellipse:
        return {p_[0] - p_[1], p_[0] + p_[1], -p_[2], p_[2]};
    }
    return {0, 0, 0, 0};
  }

  Interval alpha_range() const {
    const auto bb = bounding_box();
    return {bb[0], bb[1]};
  }

  /// Vertical section {s : (r, s) in D}, as disjoint increasing intervals.
  std::vector<Interval> slice(double r) const {
    std::vector<Interval> out;
    switch (kind_) {
      case Kind::Disk: {
        const double d2 = sq(p_[1]) - sq(r - p_[0]);
        if (d2 > 0.0) {
          const double h = std::sqrt(d2);
          out.push_back({-h, h});
        }
        break;
      }
      case Kind::Annulus: {
        const double o2 = sq(p_[2]) - sq(r - p_[0]);
        if (o2 > 0.0) {
          const double ho = std::sqrt(o2);
          const double i2 = sq(p_[1]) - sq(r - p_[0]);
          if (i2 > 0.0) {
            const double hi = std::sqrt(i2);
            out.push_back({-ho, -hi});
            out.push_back({hi, ho});
          } else {
            out.push_back({-ho, ho});
          }
        }
        break;
      }
      case Kind::Ellipse: {
        const double u = 1.0 - sq((r - p_[0]) / p_[1]);
        if (u > 0.0) {
          const double h = p_[2] * std::sqrt(u);
          out.push_back({-h, h});
        }
        break;
      }
    }
    return out;
  }

  /// Abscissae where the vertical-slice structure changes (annulus only:
  /// the inner circle's extremes).
  std::vector<double> alpha_breakpoints() const {
    if (kind_ == Kind::Annulus) return {p_[0] - p_[1], p_[0] + p_[1]};
    return {};
  }

  Nearest nearest_boundary(double alpha, double beta) const {
    switch (kind_) {
      case Kind::Disk: {
        Nearest n;
        n.curve = 0;
        n.t = angle_param(alpha - p_[0], beta);
        n.dist = std::abs(std::hypot(alpha - p_[0], beta) - p_[1]);
        return n;
      }
      case Kind::Annulus: {
        const double rho = std::hypot(alpha - p_[0], beta);
        Nearest n;
        const double t_ccw = angle_param(alpha - p_[0], beta);
        if (std::abs(rho - p_[2]) <= std::abs(rho - p_[1])) {
          n.curve = 0;
          n.t = t_ccw;
          n.dist = std::abs(rho - p_[2]);
        } else {
          n.curve = 1;
          // Inner curve runs clockwise: b = -r1 sin(2 pi t).
          n.t = angle_param(alpha - p_[0], -beta);
          n.dist = std::abs(rho - p_[1]);
        }
        return n;
      }
      case Kind::Ellipse:
        return nearest_on_curve(0, alpha, beta);
    }
    return {};
  }

private:
  enum class Kind { Disk, Annulus, Ellipse };

  static double sq(double v) { return v * v; }

  static double angle_param(double x, double y) {
    double t = std::atan2(y, x) / (2.0 * M_PI);
    if (t < 0.0) t += 1.0;
    return t;
  }

  static Curve circle_curve(double c, double r, int orientation) {
    Curve cv;
    const double w = 2.0 * M_PI * orientation;
    cv.a = [c, r, w](double t) { return c + r * std::cos(w * t); };
    cv.b = [r, w](double t) { return r * std::sin(w * t); };
    cv.da = [r, w](double t) { return -r * w * std::sin(w * t); };
    cv.db = [r, w](double t) { return r * w * std::cos(w * t); };
    return cv;
  }

  // Sampled minimization plus golden-section refinement; good to ~1e-10 on
  // the smooth built-in curves.
  Nearest nearest_on_curve(int ci, double alpha, double beta) const {
    const Curve& cv = curves_[ci];
    auto d2 = [&](double t) {
      return sq(cv.a(t) - alpha) + sq(cv.b(t) - beta);
    };
    const int samples = 256;
    double best_t = 0.0, best = d2(0.0);
    for (int i = 1; i < samples; ++i) {
      const double t = static_cast<double>(i) / samples;
      const double v = d2(t);
      if (v < best) {
        best = v;
        best_t = t;
      }
    }
    double lo = best_t - 1.0 / samples, hi = best_t + 1.0 / samples;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = d2(x1), f2 = d2(x2);
    for (int it = 0; it < 80; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = d2(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = d2(x2);
      }
    }
    Nearest n;
    n.curve = ci;
    n.t = 0.5 * (lo + hi) - std::floor(0.5 * (lo + hi));
    n.dist = std::sqrt(d2(0.5 * (lo + hi)));
    return n;
  }

  Kind kind_ = Kind::Disk;
  std::array<double, 3> p_{};
  std::vector<Curve> curves_;
};

}  // namespace slicecauchy
