// Acceptance gate: one line per criterion, pass only when every stated bound
// holds (including the wall-clock budgets). Exit code 0 iff all pass.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <slicecauchy/slicecauchy.hpp>

using namespace slicecauchy;

namespace {

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

bool report(int n, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", n,
              detail.c_str());
  std::fflush(stdout);
  return ok;
}

double exact_diff(const Element& a, const Element& b) {
  double m = 0.0;
  for (int l = 0; l < a.algebra().dim(); ++l)
    m = std::max(m, std::abs(a.coeff(l) - b.coeff(l)));
  return m;
}

double rel_or_abs(double abs_err, double ref_norm) {
  return ref_norm > 1e-12 ? abs_err / ref_norm : abs_err;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------- criterion 1

bool criterion1() {
  Stopwatch sw;
  double worst = 0.0;
  const std::vector<const AlgebraSpec*> algebras = {
      &quaternions(), &clifford(2), &clifford(3), &clifford(4)};
  for (const AlgebraSpec* alg : algebras) {
    const int d = alg->dim();
    std::vector<Element> e;
    for (int l = 0; l < d; ++l) e.push_back(Element::basis(*alg, l));
    for (int i = 0; i < d; ++i) {
      worst = std::max(worst, exact_diff(e[0] * e[i], e[i]));
      worst = std::max(worst, exact_diff(e[i] * e[0], e[i]));
      worst = std::max(worst, exact_diff(conj(conj(e[i])), e[i]));
    }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        worst = std::max(worst,
                         exact_diff(conj(e[i] * e[j]), conj(e[j]) * conj(e[i])));
        for (int k = 0; k < d; ++k)
          worst = std::max(worst,
                           exact_diff((e[i] * e[j]) * e[k], e[i] * (e[j] * e[k])));
      }
  }
  const double t = sw.seconds();
  const bool ok = worst == 0.0 && t < 1.0;
  return report(1, ok,
                "associativity and anti-involution exact on quaternions and "
                "clifford 2,3,4, max deviation " +
                    fmt(worst) + " (" + fmt(t) + "s, limit 1s)");
}

// ---------------------------------------------------------------- criterion 2

bool criterion2() {
  Stopwatch sw;
  const double tol_det = 1e-6, tol_int = 1e-8;
  double worst = 0.0;
  std::mt19937 rng(20260825);
  for (int n = 1; n <= 4; ++n) {
    const auto ranges = hemisphere_ranges(n);
    for (int s = 0; s < 100; ++s) {
      std::vector<double> theta(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) {
        std::uniform_real_distribution<double> dist(ranges[k].lo, ranges[k].hi);
        theta[k] = dist(rng);
      }
      const double ref = spherical_jacobian_product(theta);
      worst = std::max(worst, std::abs(spherical_jacobian_det(theta) - ref));
      worst = std::max(worst,
                       std::abs(spherical_jacobian_gram(theta) - std::abs(ref)));
    }
  }
  // hemisphere integral of the two-angle factor
  const auto ranges = hemisphere_ranges(2);
  const Rule1D r0 = gauss_rule(31, ranges[0].lo, ranges[0].hi);
  const Rule1D r1 = gauss_rule(31, ranges[1].lo, ranges[1].hi);
  NeumaierSum acc;
  for (std::size_t i = 0; i < r0.size(); ++i)
    for (std::size_t j = 0; j < r1.size(); ++j)
      acc.add(r0.weights[i] * r1.weights[j] *
              spherical_jacobian_product({r0.nodes[i], r1.nodes[j]}));
  const double int_err = std::abs(acc.value() - 2.0 * M_PI);
  const double t = sw.seconds();
  const bool ok = worst < tol_det && int_err < tol_int && t < 5.0;
  return report(2, ok,
                "jacobian factor vs numeric determinants, 100 random angles "
                "per dimension, max deviation " +
                    fmt(worst) + " (limit 1e-6); hemisphere integral off by " +
                    fmt(int_err) + " (limit 1e-8) (" + fmt(t) +
                    "s, limit 5s)");
}

// ---------------------------------------------------------------- criterion 3

bool criterion3() {
  Stopwatch sw;
  const double tol = 1e-5;
  const PlanarDomain dom = PlanarDomain::parse("disk:0,1");
  QuadratureGrid grid;
  grid.n_t = 64;
  grid.n_theta = 16;
  const QuadratureGrid half = grid.scaled(0.5);
  const std::vector<std::string> fns = {"poly:[1]", "poly:[0,1]", "poly:[0,0,1]",
                                        "poly:[1,-2,0,1]"};
  double worst = 0.0, worst_ratio = 1e300;
  int shrink_cases = 0;
  bool ok = true;
  std::string culprit;

  const auto run_suite = [&](const AlgebraSpec& alg, const std::string& gname,
                             const std::vector<Element>& points) {
    const Gis gis = gis_by_name(alg, gname);
    for (const auto& fname : fns) {
      const SliceFn f = parse_function(alg, fname);
      for (const Element& x : points) {
        const Element ref = f.value(x);
        const double e64 = rel_or_abs(
            euclidean_norm(boundary_integral(gis, dom, f, x, grid) - ref),
            euclidean_norm(ref));
        if (e64 > worst) {
          worst = e64;
          culprit = fname;
        }
        if (e64 >= tol) ok = false;
        const double e32 = rel_or_abs(
            euclidean_norm(boundary_integral(gis, dom, f, x, half) - ref),
            euclidean_norm(ref));
        if (e32 >= 1e-12) {  // above saturation: refinement must pay off
          ++shrink_cases;
          const double ratio = e32 / std::max(e64, 1e-16);
          worst_ratio = std::min(worst_ratio, ratio);
          if (ratio < 4.0) ok = false;
        }
      }
    }
  };

  {
    const AlgebraSpec& H = quaternions();
    const Element i = Element::basis(H, 1), j = Element::basis(H, 2),
                  k = Element::basis(H, 3);
    run_suite(H, "full",
              {Element::scalar(H, 0.5), Element::scalar(H, 0.42) + i * 0.3,
               Element::scalar(H, -0.3) + j * 0.45,
               Element::scalar(H, 0.25) + i * 0.3 + j * 0.25 - k * 0.35,
               i * 0.6});
  }
  {
    const AlgebraSpec& C3 = clifford(3);
    const Element e1 = Element::basis(C3, 1), e2 = Element::basis(C3, 2),
                  e3 = Element::basis(C3, 3);
    run_suite(C3, "paravector",
              {Element::scalar(C3, 0.5), Element::scalar(C3, 0.42) + e1 * 0.3,
               Element::scalar(C3, -0.3) + e2 * 0.45,
               Element::scalar(C3, 0.25) + e1 * 0.3 + e2 * 0.25 - e3 * 0.35,
               e1 * 0.6});
  }
  const double t = sw.seconds();
  if (shrink_cases == 0 || t >= 60.0) ok = false;
  return report(3, ok,
                "boundary reconstruction of 1, x, x^2, x^3-2x+1 at 5 points "
                "per algebra, worst rel err " +
                    fmt(worst) + " at " + culprit +
                    " (limit 1e-5); min refinement gain " + fmt(worst_ratio) +
                    "x over " + std::to_string(shrink_cases) +
                    " unsaturated cases (limit 4x) (" + fmt(t) +
                    "s, limit 60s)");
}

// ---------------------------------------------------------------- criterion 4

bool criterion4() {
  Stopwatch sw;
  const double tol = 1e-3;
  const PlanarDomain dom = PlanarDomain::parse("disk:0,1");
  const AlgebraSpec& H = quaternions();
  const Gis gis = gis_by_name(H, "full");
  QuadratureGrid grid;
  grid.n_t = 64;
  grid.n_theta = 16;
  grid.n_r = 48;
  grid.n_s = 48;
  grid.n_rho = 16;
  const Element i = Element::basis(H, 1), j = Element::basis(H, 2);
  const std::vector<Element> points = {Element::scalar(H, 0.3) + i * 0.4,
                                       Element::scalar(H, 0.2) - j * 0.5,
                                       Element::scalar(H, 0.45)};
  double worst = 0.0;
  std::string culprit;
  for (const char* fname : {"stem:conj", "stem:normsq"}) {
    const SliceFn f = parse_function(H, fname);
    for (const Element& x : points) {
      const CauchyResult res =
          cauchy_reconstruct(gis, dom, f, x, grid, false, false);
      const Element ref = f.value(x);
      const double err = rel_or_abs(euclidean_norm(res.combined - ref),
                                    euclidean_norm(ref));
      if (err > worst) {
        worst = err;
        culprit = fname;
      }
    }
  }
  const double t = sw.seconds();
  const bool ok = worst < tol && t < 300.0;
  return report(4, ok,
                "boundary-minus-volume reconstruction of the conjugate and "
                "the quadratic norm at 3 points, worst rel err " +
                    fmt(worst) + " at " + culprit + " (limit 1e-3) (" + fmt(t) +
                    "s, limit 300s)");
}

// ---------------------------------------------------------------- criterion 5

bool criterion5() {
  Stopwatch sw;
  const PlanarDomain dom = PlanarDomain::parse("disk:0,1");
  const AlgebraSpec& H = quaternions();
  const Gis gis = gis_by_name(H, "full");
  const SliceFn f = parse_function(H, "stem:conj");
  QuadratureGrid grid;
  grid.n_t = 32;
  grid.n_theta = 8;
  grid.n_r = 24;
  grid.n_s = 24;
  const Element i = Element::basis(H, 1), j = Element::basis(H, 2),
                k = Element::basis(H, 3);
  const std::vector<Element> points = {
      Element::scalar(H, 0.3) + i * 0.4, Element::scalar(H, -0.2) + j * 0.5,
      Element::scalar(H, 0.1) + i * 0.2 - k * 0.3};
  const std::vector<std::vector<double>> thetas = {
      {0.3, 0.2}, {1.1, 0.5}, {2.0, 0.9}, {4.4, 1.2}, {5.7, 0.7}};
  double worst_spread = 0.0, least_gap = 1e300;
  bool ok = true;
  for (const Element& x : points) {
    std::vector<Element> reductions, boundary_only;
    for (const auto& tv : thetas) {
      PolarPoint th;
      th.theta = tv;
      reductions.push_back(slice_reduction(gis, dom, f, x, th, grid) *
                           (1.0 / (2.0 * M_PI)));
      boundary_only.push_back(
          detail::slice_line_sum(gis, dom, f, x, gis.unit_from_angles(tv),
                                 grid.n_t) *
          (1.0 / (2.0 * M_PI)));
    }
    Element mean(H);
    for (const auto& r : reductions) mean += r;
    mean = mean * (1.0 / static_cast<double>(reductions.size()));
    const double mnorm = euclidean_norm(mean);
    for (std::size_t s = 0; s < reductions.size(); ++s) {
      worst_spread = std::max(
          worst_spread, euclidean_norm(reductions[s] - mean) / mnorm);
      least_gap = std::min(
          least_gap,
          euclidean_norm(boundary_only[s] - reductions[s]) / mnorm);
    }
  }
  if (worst_spread >= 1e-3 || least_gap <= 1e-2) ok = false;
  const double t = sw.seconds();
  return report(5, ok,
                "conjugate reductions at 5 slice directions: rel spread " +
                    fmt(worst_spread) +
                    " (limit 1e-3) while the boundary part alone deviates by "
                    ">= " +
                    fmt(least_gap) + " (needs > 1e-2) (" + fmt(t) + "s)");
}

// ---------------------------------------------------------------- criterion 6

bool criterion6() {
  Stopwatch sw;
  const PlanarDomain dom = PlanarDomain::parse("disk:0,1");
  const AlgebraSpec& H = quaternions();
  const SliceFn f = parse_function(H, "stem:remark");
  QuadratureGrid grid;
  grid.n_t = 256;
  grid.n_theta = 8;
  const Element i = Element::basis(H, 1), j = Element::basis(H, 2);
  bool ok = true;
  double worst_i = 0.0, worst_j = 0.0, worst_jump = 0.0;

  const auto probes_for = [&H](const Element& u) {
    const std::vector<Element> interior = {
        Element::scalar(H, 0.3) + u * 0.4, Element::scalar(H, -0.5) + u * 0.2,
        Element::scalar(H, 0.1) - u * 0.6};
    const std::vector<Element> exterior = {
        Element::scalar(H, 1.5) + u * 0.5, Element::scalar(H, -0.3) + u * 1.6,
        Element::scalar(H, 0.2) - u * 1.8};
    return std::make_pair(interior, exterior);
  };
  const auto inv = [](const Element& x) {
    return conj(x) * (1.0 / norm(x).coeff(0));
  };

  // slice of i: the data extends inward unchanged
  {
    const Gis gis = gis_by_name(H, "plane:i");
    const auto [interior, exterior] = probes_for(i);
    for (const Element& x : interior)
      worst_i = std::max(
          worst_i, euclidean_norm(cauchy_transform(gis, dom, f, x, grid,
                                                   TransformSide::Plus) -
                                  x));
    for (const Element& x : exterior)
      worst_i = std::max(
          worst_i, euclidean_norm(cauchy_transform(gis, dom, f, x, grid,
                                                   TransformSide::Minus)));
    if (worst_i >= 1e-6) ok = false;

    for (int kk = 0; kk < 8; ++kk) {
      const double ang = M_PI / 8.0 + kk * M_PI / 4.0;
      const Element xhat =
          Element::scalar(H, std::cos(ang)) + i * std::sin(ang);
      const JumpReport rep = jump_check(gis, dom, f, xhat, grid);
      worst_jump = std::max(worst_jump, rep.residual);
    }
    if (worst_jump >= 5e-4) ok = false;

    const ExtensionResult ext =
        extension_test(gis, dom, f, grid, probes_for(i).second);
    if (!ext.extends) ok = false;
  }

  // slice of j: the data splits into x/2 inward and -1/(2x) outward
  {
    const Gis gis = gis_by_name(H, "plane:j");
    const auto [interior, exterior] = probes_for(j);
    for (const Element& x : interior)
      worst_j = std::max(
          worst_j, euclidean_norm(cauchy_transform(gis, dom, f, x, grid,
                                                   TransformSide::Plus) -
                                  x * 0.5));
    for (const Element& x : exterior)
      worst_j = std::max(
          worst_j, euclidean_norm(cauchy_transform(gis, dom, f, x, grid,
                                                   TransformSide::Minus) +
                                  inv(x) * 0.5));
    if (worst_j >= 1e-4) ok = false;

    const ExtensionResult ext =
        extension_test(gis, dom, f, grid, probes_for(j).second);
    if (ext.extends) ok = false;
  }
  const double t = sw.seconds();
  return report(6, ok,
                "one-sided transforms of x0 + i x1: err " + fmt(worst_i) +
                    " on the slice of i (limit 1e-6), " + fmt(worst_j) +
                    " against x/2 and -1/(2x) on the slice of j (limit 1e-4), "
                    "jump residual " +
                    fmt(worst_jump) +
                    " over 8 boundary points (limit 5e-4), extension "
                    "verdicts true/false (" +
                    fmt(t) + "s)");
}

// ---------------------------------------------------------------- criterion 7

bool criterion7() {
  Stopwatch sw;
  const double tol = 1e-12;
  bool ok = true;
  double worst_norm = 0.0, worst_tri = 0.0, worst_imag = 0.0, least_tr = 1e300;
  std::mt19937 rng(97531);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  const auto run_gis = [&](const Gis& gis) {
    const AlgebraSpec& alg = gis.algebra();
    const int m = gis.m();
    const auto sample_m = [&]() {
      Element x(alg);
      for (int l = 0; l < m; ++l) x += gis.basis(l) * u(rng);
      return x;
    };
    for (int rep = 0; rep < 10000; ++rep) {
      const Element x = sample_m(), y = sample_m();
      const Element nx = norm(x);
      const double n0 = nx.coeff(0);
      double off_scalar = 0.0;
      for (int l = 1; l < alg.dim(); ++l)
        off_scalar = std::max(off_scalar, std::abs(nx.coeff(l)));
      const double e2 = euclidean_norm(x);
      worst_norm = std::max(worst_norm, std::abs(n0 - e2 * e2));
      worst_norm = std::max(worst_norm, off_scalar);
      const double lhs = std::sqrt(std::max(norm(x + y).coeff(0), 0.0));
      const double rhs = std::sqrt(std::max(n0, 0.0)) +
                         std::sqrt(std::max(norm(y).coeff(0), 0.0));
      worst_tri = std::max(worst_tri, lhs - rhs);
    }
    const auto sample_unit = [&]() {
      Element v(alg);
      double len = 0.0;
      while (len < 1e-3) {
        v = Element(alg);
        for (int l = 1; l < m; ++l) v += gis.basis(l) * u(rng);
        len = euclidean_norm(v);
      }
      return v * (1.0 / len);
    };
    for (int rep = 0; rep < 10000; ++rep) {
      const Element I = sample_unit(), J = sample_unit();
      const Element tr = trace(I * J);
      double imag = 0.0;
      for (int l = 1; l < alg.dim(); ++l)
        imag = std::max(imag, std::abs(tr.coeff(l)));
      worst_imag = std::max(worst_imag, imag);
      least_tr = std::min(least_tr, tr.coeff(0));
    }
  };

  run_gis(gis_by_name(quaternions(), "full"));
  run_gis(gis_by_name(clifford(3), "paravector"));

  if (worst_norm > tol || worst_tri > tol || worst_imag > tol ||
      least_tr < -2.0 - tol)
    ok = false;
  const double t = sw.seconds();
  return report(7, ok,
                "10^4 random pairs per choice: quadratic norm matches the "
                "squared length to " +
                    fmt(worst_norm) + ", triangle slack " + fmt(worst_tri) +
                    " (limit 1e-12); unit products have imaginary trace part " +
                    fmt(worst_imag) + " and scalar trace >= " + fmt(least_tr) +
                    " (needs >= -2) (" + fmt(t) + "s)");
}

// ---------------------------------------------------------------- criterion 8

bool criterion8() {
  Stopwatch sw;
  const PlanarDomain dom = PlanarDomain::parse("disk:0,1");
  const AlgebraSpec& H = quaternions();
  const Gis gis = gis_by_name(H, "full");
  const Element x = Element::basis(H, 1) * 0.5;
  QuadratureGrid base;
  base.n_t = 32;
  base.n_theta = 8;
  base.n_r = 24;
  base.n_s = 24;
  const auto est =
      summability_diagnostic(gis, dom, x, make_summability_grids(base, 4));
  bool ok = est.size() == 4;
  double worst_ratio = 0.0;
  for (std::size_t k = 1; ok && k < est.size(); ++k)
    if (!(est[k] > est[k - 1])) ok = false;
  for (std::size_t k = 2; ok && k < est.size(); ++k) {
    const double ratio = (est[k] - est[k - 1]) / (est[k - 1] - est[k - 2]);
    worst_ratio = std::max(worst_ratio, ratio);
    if (ratio > 0.5) ok = false;
  }
  const double t = sw.seconds();
  std::string seq;
  for (double v : est) seq += (seq.empty() ? "" : ", ") + fmt(v);
  return report(8, ok,
                "kernel mass estimates over 4 nested excisions [" + seq +
                    "] increase monotonically, difference ratio <= " +
                    fmt(worst_ratio) + " (needs <= 0.5) (" + fmt(t) + "s)");
}

// ---------------------------------------------------------------- criterion 9

bool criterion9() {
  Stopwatch sw;
  const std::string out1 = "/tmp/slice_cauchy_acceptance_t1.csv";
  const std::string out4 = "/tmp/slice_cauchy_acceptance_t4.csv";
  const std::string args =
      " verify-cauchy --function stem:conj --points '0.3+0.4i;0.2+0.3j' "
      "--grid 32,8,24,24 --tol 0.05 --out ";
  const auto run = [&](const std::string& env, const std::string& out) {
    const std::string cmd =
        env + " " + std::string(SLICE_CAUCHY_CLI_PATH) + args + out;
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  const int rc1 = run("SLICE_CAUCHY_THREADS=1", out1);
  const int rc4 = run("SLICE_CAUCHY_THREADS=4", out4);
  std::ifstream f1(out1, std::ios::binary), f4(out4, std::ios::binary);
  std::stringstream s1, s4;
  s1 << f1.rdbuf();
  s4 << f4.rdbuf();
  const bool same = !s1.str().empty() && s1.str() == s4.str();
  std::remove(out1.c_str());
  std::remove(out4.c_str());
  const double t = sw.seconds();
  const bool ok = rc1 == 0 && rc4 == 0 && same;
  return report(9, ok,
                std::string("CSV output byte-identical for 1 and 4 worker "
                            "threads (") +
                    (same ? "identical" : "MISMATCH") + ", exit codes " +
                    std::to_string(rc1) + "/" + std::to_string(rc4) + ") (" +
                    fmt(t) + "s)");
}

}  // namespace

int main() {
  bool all = true;
  all &= criterion1();
  all &= criterion2();
  all &= criterion3();
  all &= criterion4();
  all &= criterion5();
  all &= criterion6();
  all &= criterion7();
  all &= criterion8();
  all &= criterion9();
  std::printf("%s\n", all ? "acceptance: all criteria passed"
                          : "acceptance: FAILURES above");
  return all ? 0 : 1;
}
