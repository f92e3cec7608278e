// Batch drivers behind the CLI: configuration handling, spec-string
// resolution, and the verification campaigns that emit error tables.
#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "cauchy.hpp"
#include "domain.hpp"
#include "element_io.hpp"
#include "gis.hpp"
#include "jump.hpp"
#include "polar.hpp"
#include "report.hpp"
#include "stem.hpp"

namespace slicecauchy {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  std::string command;
  std::string algebra = "quaternion";
  std::string gis = "full";
  std::string domain = "disk:0,1";
  std::string function = "poly:[0,0,1]";
  std::string points;  // ';'-separated element literals; "x@w" pairs for
                       // kernel evaluation
  std::string grid = "32,8,24,24";  // Nt,Ntheta,Nr,Ns
  std::string out;                  // empty: stdout
  double tol = 0.0;                 // 0: per-command default
  unsigned seed = 12345;
  bool timing = false;  // adds wall_s column (breaks byte determinism)
  int lemma_n = 4;
  int lemma_samples = 100;
  std::string offsets;  // jump offsets, comma-separated absolute values
};

/// Flat key=value configuration file; '#' comments and blank lines allowed.
/// Values loaded here are overridden by explicit command-line flags.
inline void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s;
    for (char ch : line)
      if (ch != '\r') s += ch;
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos || s[b] == '#') continue;
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key=value");
    auto trim = [](std::string v) {
      const std::size_t a = v.find_first_not_of(" \t");
      if (a == std::string::npos) return std::string();
      const std::size_t z = v.find_last_not_of(" \t");
      return v.substr(a, z - a + 1);
    };
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (key == "algebra")
      cfg.algebra = val;
    else if (key == "gis")
      cfg.gis = val;
    else if (key == "domain")
      cfg.domain = val;
    else if (key == "function")
      cfg.function = val;
    else if (key == "points")
      cfg.points = val;
    else if (key == "grid")
      cfg.grid = val;
    else if (key == "out")
      cfg.out = val;
    else if (key == "tol")
      cfg.tol = std::stod(val);
    else if (key == "seed")
      cfg.seed = static_cast<unsigned>(std::stoul(val));
    else if (key == "timing")
      cfg.timing = (val == "1" || val == "true");
    else if (key == "lemma_n")
      cfg.lemma_n = std::stoi(val);
    else if (key == "lemma_samples")
      cfg.lemma_samples = std::stoi(val);
    else if (key == "offsets")
      cfg.offsets = val;
    else
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
  }
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

inline QuadratureGrid parse_grid(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 4)
    throw std::invalid_argument("grid spec needs Nt,Ntheta,Nr,Ns");
  QuadratureGrid g;
  g.n_t = std::stoi(parts[0]);
  g.n_theta = std::stoi(parts[1]);
  g.n_r = std::stoi(parts[2]);
  g.n_s = std::stoi(parts[3]);
  g.validate();
  return g;
}

inline double rel_or_abs(double abs_err, double ref_norm) {
  return ref_norm > 1e-12 ? abs_err / ref_norm : abs_err;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

}  // namespace detail

struct Resolved {
  const AlgebraSpec* alg = nullptr;
  std::optional<Gis> gis;
  std::optional<PlanarDomain> domain;
  std::optional<SliceFn> fn;
  std::vector<Element> points;
  std::vector<std::pair<Element, Element>> pairs;
  QuadratureGrid grid;
  std::vector<double> offsets;
  double tol = 0.0;
};

inline Resolved resolve_config(const RunConfig& cfg, double default_tol,
                               bool want_pairs = false) {
  Resolved r;
  r.alg = &algebra_by_name(cfg.algebra);
  r.gis.emplace(gis_by_name(*r.alg, cfg.gis));
  r.domain.emplace(PlanarDomain::parse(cfg.domain));
  r.fn.emplace(parse_function(*r.alg, cfg.function));
  r.grid = detail::parse_grid(cfg.grid);
  r.tol = cfg.tol > 0.0 ? cfg.tol : default_tol;
  for (const auto& tok : detail::split(cfg.points, ';')) {
    if (want_pairs) {
      const auto at = tok.find('@');
      if (at == std::string::npos)
        throw std::invalid_argument("kernel pair needs the form x@w");
      Element x = parse_element(*r.alg, tok.substr(0, at));
      Element w = parse_element(*r.alg, tok.substr(at + 1));
      if (!in_quadratic_cone(x) || !in_quadratic_cone(w))
        throw std::invalid_argument("pair entries must lie in the cone: " +
                                    tok);
      r.pairs.emplace_back(std::move(x), std::move(w));
    } else {
      Element x = parse_element(*r.alg, tok);
      if (!in_quadratic_cone(x))
        throw std::invalid_argument("point outside the quadratic cone: " +
                                    tok);
      r.points.push_back(std::move(x));
    }
  }
  for (const auto& tok : detail::split(cfg.offsets, ','))
    r.offsets.push_back(std::stod(tok));
  return r;
}

inline void common_metadata(ErrorTable& table, const RunConfig& cfg) {
  table.meta("tool", std::string("slice-cauchy ") + kVersion);
  table.meta("command", cfg.command);
  table.meta("algebra", cfg.algebra);
  table.meta("gis", cfg.gis);
  table.meta("domain", cfg.domain);
  table.meta("function", cfg.function);
  table.meta("grid", cfg.grid);
  table.meta("seed", std::to_string(cfg.seed));
}

/// Reconstruction campaign: each point is rebuilt from boundary (and, for
/// non-regular functions, volume) data and compared with direct evaluation.
inline ErrorTable cmd_verify_cauchy(const RunConfig& cfg) {
  const Resolved r = resolve_config(cfg, 1e-4);
  if (r.points.empty())
    throw std::invalid_argument("verify-cauchy needs at least one point");
  ErrorTable table;
  table.with_timing = cfg.timing;
  common_metadata(table, cfg);
  table.meta("tol", format_real(r.tol));
  table.rows.resize(r.points.size());
  parallel_for_index(r.points.size(), [&](std::size_t i) {
    detail::Timer timer;
    const Element& x = r.points[i];
    const CauchyResult cr =
        cauchy_reconstruct(*r.gis, *r.domain, *r.fn, x, r.grid);
    const Element ref = r.fn->value(x);
    ErrorTableRow row;
    row.point = format_element(x);
    row.reference = format_element(ref);
    row.computed = format_element(cr.combined);
    row.abs_err = euclidean_norm(cr.combined - ref);
    row.rel_err = detail::rel_or_abs(row.abs_err, euclidean_norm(ref));
    row.nodes = cr.nodes_boundary + cr.nodes_volume;
    row.tol = r.tol;
    row.pass = row.rel_err < r.tol;
    row.wall_s = timer.seconds();
    table.rows[i] = std::move(row);
  });
  return table;
}

/// Jump campaign: boundary points, extrapolated F^+ - F^- against f.
inline ErrorTable cmd_verify_jump(const RunConfig& cfg) {
  const Resolved r = resolve_config(cfg, 5e-4);
  if (r.points.empty())
    throw std::invalid_argument("verify-jump needs boundary points");
  ErrorTable table;
  table.with_timing = cfg.timing;
  common_metadata(table, cfg);
  table.meta("tol", format_real(r.tol));
  const long theta_count =
      static_cast<long>(make_theta_grid(*r.gis, r.grid.n_theta).size());
  table.rows.resize(r.points.size());
  parallel_for_index(r.points.size(), [&](std::size_t i) {
    detail::Timer timer;
    const JumpReport rep =
        jump_check(*r.gis, *r.domain, *r.fn, r.points[i], r.grid, r.offsets);
    ErrorTableRow row;
    row.point = format_element(rep.boundary_point);
    row.reference = format_element(rep.boundary_value);
    row.computed = format_element(rep.jump);
    row.abs_err = rep.residual;
    row.rel_err =
        detail::rel_or_abs(rep.residual, euclidean_norm(rep.boundary_value));
    row.nodes = static_cast<long>(2 * rep.offsets.size()) * r.grid.n_t *
                theta_count;
    row.tol = r.tol;
    row.pass = row.abs_err < r.tol;
    row.wall_s = timer.seconds();
    table.rows[i] = std::move(row);
  });
  return table;
}

/// Extension criterion: probes are exterior points; rows carry the
/// extrapolated ||F^-|| at their boundary projections. All rows pass (exit
/// code 0) iff the function extends slice-regularly.
inline ErrorTable cmd_extension_test(const RunConfig& cfg) {
  const Resolved r = resolve_config(cfg, 1e-3);
  if (r.points.empty())
    throw std::invalid_argument("extension-test needs exterior probes");
  ErrorTable table;
  table.with_timing = cfg.timing;
  common_metadata(table, cfg);
  table.meta("tol", format_real(r.tol));
  detail::Timer timer;
  const ExtensionResult res =
      extension_test(*r.gis, *r.domain, *r.fn, r.grid, r.points, r.tol);
  table.meta("extends", res.extends ? "true" : "false");
  table.meta("max_f_minus", format_real(res.max_f_minus));
  const double elapsed = timer.seconds() / static_cast<double>(r.points.size());
  const long theta_count =
      static_cast<long>(make_theta_grid(*r.gis, r.grid.n_theta).size());
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    ErrorTableRow row;
    row.point = format_element(r.points[i]);
    row.reference = "0";
    row.computed = format_element(res.minus_limits[i]);
    row.abs_err = euclidean_norm(res.minus_limits[i]);
    row.rel_err = row.abs_err;
    row.nodes = 6L * r.grid.n_t * theta_count;
    row.tol = r.tol;
    row.pass = row.abs_err < r.tol;
    row.wall_s = elapsed;
    table.rows.push_back(std::move(row));
  }
  return table;
}

/// Polar-coordinate identities: the closed-form Jacobian factor against the
/// two numeric determinants at random angles, and its hemisphere integral
/// against half the sphere volume.
inline ErrorTable cmd_lemma_suite(const RunConfig& cfg) {
  const double tol_det = cfg.tol > 0.0 ? cfg.tol : 1e-6;
  const double tol_int = 1e-8;
  ErrorTable table;
  table.with_timing = cfg.timing;
  common_metadata(table, cfg);
  table.meta("tol", format_real(tol_det));
  std::mt19937 rng(cfg.seed);
  for (int n = 1; n <= cfg.lemma_n; ++n) {
    const auto ranges = hemisphere_ranges(n);
    for (int s = 0; s < cfg.lemma_samples; ++s) {
      std::vector<double> theta(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) {
        std::uniform_real_distribution<double> dist(ranges[k].lo,
                                                    ranges[k].hi);
        theta[k] = dist(rng);
      }
      const double ref = spherical_jacobian_product(theta);
      std::ostringstream pt;
      pt << "n=" << n << " theta=[";
      for (int k = 0; k < n; ++k)
        pt << (k ? " " : "") << format_real(theta[k], 6);
      pt << "]";
      {
        ErrorTableRow row;
        const double det = spherical_jacobian_det(theta);
        row.point = pt.str() + " det";
        row.reference = format_real(ref);
        row.computed = format_real(det);
        row.abs_err = std::abs(det - ref);
        row.rel_err = detail::rel_or_abs(row.abs_err, std::abs(ref));
        row.nodes = 1;
        row.tol = tol_det;
        row.pass = row.abs_err < tol_det;
        table.rows.push_back(std::move(row));
      }
      {
        ErrorTableRow row;
        const double gram = spherical_jacobian_gram(theta);
        row.point = pt.str() + " gram";
        row.reference = format_real(std::abs(ref));
        row.computed = format_real(gram);
        row.abs_err = std::abs(gram - std::abs(ref));
        row.rel_err = detail::rel_or_abs(row.abs_err, std::abs(ref));
        row.nodes = 1;
        row.tol = tol_det;
        row.pass = row.abs_err < tol_det;
        table.rows.push_back(std::move(row));
      }
    }
    // Hemisphere integral of the Jacobian factor: eta_n / 2.
    {
      const int n_nodes = 31;
      std::vector<Rule1D> rules;
      for (const auto& rg : ranges)
        rules.push_back(gauss_rule(n_nodes, rg.lo, rg.hi));
      std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
      NeumaierSum acc;
      long count = 0;
      while (true) {
        std::vector<double> theta(static_cast<std::size_t>(n));
        double w = 1.0;
        for (int k = 0; k < n; ++k) {
          theta[k] = rules[k].nodes[idx[k]];
          w *= rules[k].weights[idx[k]];
        }
        acc.add(w * spherical_jacobian_product(theta));
        ++count;
        int k = n - 1;
        while (k >= 0 && ++idx[k] == rules[k].size()) idx[k--] = 0;
        if (k < 0) break;
      }
      ErrorTableRow row;
      const double ref = 0.5 * sphere_volume(n);
      row.point = "n=" + std::to_string(n) + " integral";
      row.reference = format_real(ref);
      row.computed = format_real(acc.value());
      row.abs_err = std::abs(acc.value() - ref);
      row.rel_err = detail::rel_or_abs(row.abs_err, ref);
      row.nodes = count;
      row.tol = tol_int;
      row.pass = row.abs_err < tol_int;
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

/// Direct kernel evaluations for x@w pairs. When both entries share a plane
/// the classical complex formula provides a reference; otherwise the row
/// only records the computed value.
inline ErrorTable cmd_kernel_eval(const RunConfig& cfg) {
  const Resolved r = resolve_config(cfg, 1e-10, true);
  if (r.pairs.empty())
    throw std::invalid_argument("kernel-eval needs x@w pairs");
  ErrorTable table;
  table.with_timing = cfg.timing;
  common_metadata(table, cfg);
  table.meta("tol", format_real(r.tol));
  for (const auto& [x, w] : r.pairs) {
    ErrorTableRow row;
    row.point = format_element(x) + "@" + format_element(w);
    const Element val = kernel_CS(*r.gis, x, w);
    row.computed = format_element(val);
    row.nodes = 1;
    row.tol = r.tol;
    // Common-plane reference: z |-> 1/(zw - zx) in that plane, rescaled.
    const ConeDecomposition dx = decompose(x);
    const ConeDecomposition dw = decompose(w);
    bool common = false;
    double sx = 1.0;
    if (dw.unit.has_value()) {
      if (!dx.unit.has_value()) {
        common = true;
      } else {
        const double plus = euclidean_norm(*dx.unit - *dw.unit);
        const double minus = euclidean_norm(*dx.unit + *dw.unit);
        if (plus < 1e-12) common = true;
        if (minus < 1e-12) {
          common = true;
          sx = -1.0;
        }
      }
    }
    if (common) {
      const double re_d = dw.alpha - dx.alpha;
      const double im_d = dw.beta - sx * dx.beta;
      const double den = re_d * re_d + im_d * im_d;
      double scale = 1.0;
      const int m = r.gis->m();
      if (m > 2)
        scale = 2.0 / (sphere_volume(m - 2) * std::pow(dw.beta, m - 2));
      Element ref = *dw.unit * (-im_d / den * scale);
      ref.coeff(0) += re_d / den * scale;
      row.reference = format_element(ref);
      row.abs_err = euclidean_norm(val - ref);
      row.rel_err = detail::rel_or_abs(row.abs_err, euclidean_norm(ref));
      row.pass = row.rel_err < r.tol;
    } else {
      row.reference = "";
      row.pass = true;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

/// Runs the configured command, writes its CSV, and returns the process
/// exit code (0 iff every row passed its tolerance).
inline int run_command(const RunConfig& cfg) {
  ErrorTable table;
  if (cfg.command == "verify-cauchy")
    table = cmd_verify_cauchy(cfg);
  else if (cfg.command == "verify-jump")
    table = cmd_verify_jump(cfg);
  else if (cfg.command == "extension-test")
    table = cmd_extension_test(cfg);
  else if (cfg.command == "lemma-suite")
    table = cmd_lemma_suite(cfg);
  else if (cfg.command == "kernel-eval")
    table = cmd_kernel_eval(cfg);
  else
    throw std::invalid_argument("unknown command '" + cfg.command + "'");
  if (cfg.out.empty()) {
    table.write_csv(std::cout);
  } else {
    std::ofstream os(cfg.out, std::ios::binary);
    if (!os)
      throw std::invalid_argument("cannot open output file " + cfg.out);
    table.write_csv(os);
  }
  return table.all_pass() ? 0 : 1;
}

}  // namespace slicecauchy
