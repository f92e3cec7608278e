// Deterministic CSV error tables: '#'-prefixed metadata lines, a header row,
// then one row per evaluation with values formatted to 17 significant
// digits. Byte-identical output for identical configurations.
#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace slicecauchy {

inline std::string format_real(double v, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

struct ErrorTableRow {
  std::string point;
  std::string reference;
  std::string computed;
  double abs_err = 0.0;
  double rel_err = 0.0;
  long nodes = 0;
  double wall_s = 0.0;
  double tol = 0.0;
  bool pass = true;
};

struct ErrorTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<ErrorTableRow> rows;
  bool with_timing = false;  // wall time breaks byte-for-byte determinism

  void meta(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
  }

  bool all_pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }

  void write_csv(std::ostream& os) const {
    for (const auto& [k, v] : metadata) os << "# " << k << "=" << v << "\n";
    os << "point,reference,computed,abs_err,rel_err,nodes,tol,pass";
    if (with_timing) os << ",wall_s";
    os << "\n";
    for (const auto& r : rows) {
      os << r.point << "," << r.reference << "," << r.computed << ","
         << format_real(r.abs_err) << "," << format_real(r.rel_err) << ","
         << r.nodes << "," << format_real(r.tol) << ","
         << (r.pass ? "1" : "0");
      if (with_timing) os << "," << format_real(r.wall_s);
      os << "\n";
    }
  }
};

}  // namespace slicecauchy
