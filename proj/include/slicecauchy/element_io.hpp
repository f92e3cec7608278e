// Text round-trip for algebra elements: "0.3+0.2i", "1-2e12+0.5e134", ...
#pragma once

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace slicecauchy {

/// Format with up to `digits` significant decimal digits. Zero prints as "0";
/// otherwise nonzero terms are joined with explicit signs: "1-2i+0.5k".
/// Exponents are emitted as 'E' so that Clifford blade names like e12 stay
/// unambiguous.
inline std::string format_element(const Element& x, int digits = 17) {
  char buf[64];
  std::string out;
  const auto& names = x.algebra().basis_names();
  for (int i = 0; i < x.dim(); ++i) {
    const double v = x.coeff(i);
    if (v == 0.0) continue;
    std::snprintf(buf, sizeof buf, "%.*g", digits, v < 0 ? -v : v);
    std::string num(buf);
    for (char& ch : num)
      if (ch == 'e') ch = 'E';
    const bool neg = v < 0;
    if (out.empty()) {
      if (neg) out += '-';
    } else {
      out += neg ? '-' : '+';
    }
    if (i == 0) {
      out += num;
    } else {
      if (num != "1") out += num;  // "i", not "1i"
      out += names[i];
    }
  }
  if (out.empty()) out = "0";
  return out;
}

namespace detail {

// Scans a decimal number at s[p]. Lowercase 'e' starts an exponent only when
// the algebra has no basis blade named with a leading 'e' (quaternions);
// otherwise "0.2e1" must mean 0.2 * e_1 and exponents need uppercase 'E'.
inline bool scan_number(const std::string& s, std::size_t& p, bool e_is_blade,
                        double& value) {
  const std::size_t start = p;
  std::size_t q = p;
  while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
  if (q < s.size() && s[q] == '.') {
    ++q;
    while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
  }
  if (q == start || (q == start + 1 && s[start] == '.')) return false;
  std::string num = s.substr(start, q - start);
  if (q < s.size() && (s[q] == 'E' || (s[q] == 'e' && !e_is_blade))) {
    std::size_t r = q + 1;
    if (r < s.size() && (s[r] == '+' || s[r] == '-')) ++r;
    std::size_t digits = r;
    while (digits < s.size() &&
           std::isdigit(static_cast<unsigned char>(s[digits])))
      ++digits;
    if (digits > r) {
      num += 'e';
      num += s.substr(q + 1, digits - (q + 1));
      q = digits;
    }
  }
  value = std::strtod(num.c_str(), nullptr);
  p = q;
  return true;
}

}  // namespace detail

/// Parse the format produced by format_element. Each term is
/// [+-]? [number]? [basis-name]? with at least one of the two present.
inline Element parse_element(const AlgebraSpec& alg, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty element literal");

  bool e_is_blade = false;
  for (const auto& nm : alg.basis_names())
    if (!nm.empty() && nm[0] == 'e') e_is_blade = true;

  Element out(alg);
  std::size_t p = 0;
  bool any = false;
  while (p < s.size()) {
    double sign = 1.0;
    if (s[p] == '+' || s[p] == '-') {
      if (s[p] == '-') sign = -1.0;
      ++p;
    } else if (any) {
      throw std::invalid_argument("expected '+' or '-' in element literal '" +
                                  text + "'");
    }
    double value = 1.0;
    const bool have_number = detail::scan_number(s, p, e_is_blade, value);
    std::string unit;
    while (p < s.size() && s[p] != '+' && s[p] != '-') unit += s[p++];
    int idx = 0;
    if (!unit.empty()) {
      idx = alg.basis_index(unit);
      if (idx < 0)
        throw std::invalid_argument("unknown basis name '" + unit +
                                    "' for algebra " + alg.name());
    } else if (!have_number) {
      throw std::invalid_argument("malformed element literal '" + text + "'");
    }
    out.coeff(idx) += sign * value;
    any = true;
  }
  return out;
}

}  // namespace slicecauchy
