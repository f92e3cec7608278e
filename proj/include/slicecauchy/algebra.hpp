// Finite-dimensional real associative *-algebras given by structure-constant
// tables: the quaternions and the Clifford algebras R_{0,n}, together with the
// basic *-algebra calculus (product, conjugation, trace, norm, quadratic cone,
// imaginary units, plane decompositions).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace slicecauchy {

/// Default absolute tolerance on non-real residuals for cone / unit checks.
inline constexpr double kConeTol = 1e-9;

class Element;

/// A real associative algebra with unity, described by a dense structure
/// table c[i][j][k] (v_i v_j = sum_k c[i][j][k] v_k, v_0 = 1) and a diagonal
/// conjugation x -> x^c acting as sign s[i] on basis coefficient i.
///
/// Instances are immutable after construction and validated on construction:
/// unity, associativity on all basis triples, and the anti-involution laws
/// must hold exactly (structure constants of the built-in algebras are
/// integers, so these checks use exact comparisons).
class AlgebraSpec {
public:
  AlgebraSpec(std::string name, int dim, std::vector<double> structure,
              std::vector<double> conj_signs,
              std::vector<std::string> basis_names)
      : name_(std::move(name)), dim_(dim), table_(std::move(structure)),
        conj_signs_(std::move(conj_signs)),
        basis_names_(std::move(basis_names)) {
    if (dim_ <= 0)
      throw std::invalid_argument("algebra dimension must be positive");
    if (table_.size() != static_cast<std::size_t>(dim_) * dim_ * dim_)
      throw std::invalid_argument("structure table has wrong size");
    if (conj_signs_.size() != static_cast<std::size_t>(dim_))
      throw std::invalid_argument("conjugation sign vector has wrong size");
    if (basis_names_.size() != static_cast<std::size_t>(dim_))
      throw std::invalid_argument("basis name list has wrong size");
    build_sparse_rows();
    validate();
  }

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }

  double structure(int i, int j, int k) const {
    return table_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k];
  }
  double conj_sign(int i) const { return conj_signs_[i]; }
  const std::vector<std::string>& basis_names() const { return basis_names_; }

  /// Index of a basis name ("i", "e12", ...). Returns -1 when unknown.
  int basis_index(const std::string& nm) const {
    for (int i = 0; i < dim_; ++i)
      if (basis_names_[i] == nm) return i;
    return -1;
  }

  // Low-level kernels on raw coefficient arrays (length dim()). Used by the
  // quadrature inner loops; Element wraps these for everyday use.
  void mul_coeffs(const double* a, const double* b, double* out) const {
    for (int k = 0; k < dim_; ++k) out[k] = 0.0;
    const int d = dim_;
    for (int i = 0; i < d; ++i) {
      const double ai = a[i];
      if (ai == 0.0) continue;
      const int* idx = &prod_index_[static_cast<std::size_t>(i) * d];
      const double* cf = &prod_coeff_[static_cast<std::size_t>(i) * d];
      for (int j = 0; j < d; ++j) {
        const double bj = b[j];
        if (bj == 0.0) continue;
        out[idx[j]] += ai * bj * cf[j];
      }
    }
  }
  void conj_coeffs(const double* a, double* out) const {
    for (int k = 0; k < dim_; ++k) out[k] = conj_signs_[k] * a[k];
  }

  // Basis product v_i v_j = coeff * v_index (single term for all built-ins).
  int basis_product_index(int i, int j) const {
    return prod_index_[static_cast<std::size_t>(i) * dim_ + j];
  }
  double basis_product_coeff(int i, int j) const {
    return prod_coeff_[static_cast<std::size_t>(i) * dim_ + j];
  }

private:
  void build_sparse_rows() {
    prod_index_.assign(static_cast<std::size_t>(dim_) * dim_, 0);
    prod_coeff_.assign(static_cast<std::size_t>(dim_) * dim_, 0.0);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        int nonzero = 0;
        for (int k = 0; k < dim_; ++k) {
          const double c = structure(i, j, k);
          if (c != 0.0) {
            ++nonzero;
            prod_index_[static_cast<std::size_t>(i) * dim_ + j] = k;
            prod_coeff_[static_cast<std::size_t>(i) * dim_ + j] = c;
          }
        }
        // The diagonal-conjugation families used here always produce a
        // single basis blade per product.
        if (nonzero != 1)
          throw std::invalid_argument(
              "basis products must map to a single basis element");
      }
  }

  void validate() const {
    const int d = dim_;
    // v_0 two-sided unit.
    for (int j = 0; j < d; ++j) {
      if (basis_product_index(0, j) != j || basis_product_coeff(0, j) != 1.0 ||
          basis_product_index(j, 0) != j || basis_product_coeff(j, 0) != 1.0)
        throw std::invalid_argument("v_0 is not a two-sided unit");
    }
    // Associativity on basis triples, using the single-term rows.
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const int ij = basis_product_index(i, j);
        const double cij = basis_product_coeff(i, j);
        for (int k = 0; k < d; ++k) {
          const int jk = basis_product_index(j, k);
          const double cjk = basis_product_coeff(j, k);
          const int left = basis_product_index(ij, k);
          const double cl = cij * basis_product_coeff(ij, k);
          const int right = basis_product_index(i, jk);
          const double cr = cjk * basis_product_coeff(i, jk);
          if (left != right || cl != cr)
            throw std::invalid_argument("structure table is not associative");
        }
      }
    // Anti-involution: s_0 = +1, signs in {-1,+1}, (v_i v_j)^c = v_j^c v_i^c.
    if (conj_signs_[0] != 1.0)
      throw std::invalid_argument("conjugation must fix the unit");
    for (int i = 0; i < d; ++i)
      if (conj_signs_[i] != 1.0 && conj_signs_[i] != -1.0)
        throw std::invalid_argument("conjugation signs must be +-1");
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const int ij = basis_product_index(i, j);
        const double lhs = conj_signs_[ij] * basis_product_coeff(i, j);
        const int ji = basis_product_index(j, i);
        const double rhs =
            conj_signs_[j] * conj_signs_[i] * basis_product_coeff(j, i);
        if (ij != ji || lhs != rhs)
          throw std::invalid_argument("conjugation is not an anti-involution");
      }
  }

  std::string name_;
  int dim_;
  std::vector<double> table_;
  std::vector<double> conj_signs_;
  std::vector<std::string> basis_names_;
  std::vector<int> prod_index_;
  std::vector<double> prod_coeff_;
};

/// An element of a registered algebra: a coefficient vector in the fixed
/// basis plus a reference to its algebra. Value semantics.
class Element {
public:
  Element() : alg_(nullptr) {}
  explicit Element(const AlgebraSpec& alg)
      : alg_(&alg), c_(static_cast<std::size_t>(alg.dim()), 0.0) {}
  Element(const AlgebraSpec& alg, std::vector<double> coeffs)
      : alg_(&alg), c_(std::move(coeffs)) {
    if (c_.size() != static_cast<std::size_t>(alg.dim()))
      throw std::invalid_argument("coefficient vector has wrong length");
  }

  static Element scalar(const AlgebraSpec& alg, double v) {
    Element e(alg);
    e.c_[0] = v;
    return e;
  }
  static Element basis(const AlgebraSpec& alg, int i) {
    Element e(alg);
    e.c_.at(static_cast<std::size_t>(i)) = 1.0;
    return e;
  }

  const AlgebraSpec& algebra() const {
    if (!alg_) throw std::logic_error("element has no algebra");
    return *alg_;
  }
  bool valid() const { return alg_ != nullptr; }
  int dim() const { return algebra().dim(); }
  double coeff(int i) const { return c_[i]; }
  double& coeff(int i) { return c_[i]; }
  const std::vector<double>& coeffs() const { return c_; }
  const double* data() const { return c_.data(); }
  double* data() { return c_.data(); }

  Element& operator+=(const Element& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Element& operator-=(const Element& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Element& operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
  }
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, double s) { return a *= s; }
  friend Element operator*(double s, Element a) { return a *= s; }
  friend Element operator-(Element a) {
    for (double& v : a.c_) v = -v;
    return a;
  }
  friend Element operator*(const Element& a, const Element& b) {
    a.check_same(b);
    Element out(a.algebra());
    a.algebra().mul_coeffs(a.data(), b.data(), out.data());
    return out;
  }

  void check_same(const Element& o) const {
    if (alg_ != o.alg_)
      throw std::invalid_argument("elements belong to different algebras");
  }

private:
  const AlgebraSpec* alg_;
  std::vector<double> c_;
};

inline Element mul(const Element& a, const Element& b) { return a * b; }

inline Element conj(const Element& x) {
  Element out(x.algebra());
  x.algebra().conj_coeffs(x.data(), out.data());
  return out;
}

/// t(x) = x + x^c, as an algebra element.
inline Element trace(const Element& x) { return x + conj(x); }

/// n(x) = x x^c, as an algebra element.
inline Element norm(const Element& x) { return x * conj(x); }

/// Euclidean norm of the coefficient vector. On the quadratic cone this
/// agrees with sqrt(n(x)) for the built-in orthonormal bases.
inline double euclidean_norm(const Element& x) {
  double s = 0.0;
  for (double v : x.coeffs()) s += v * v;
  return std::sqrt(s);
}

/// Largest non-scalar coefficient in absolute value.
inline double nonreal_residual(const Element& x) {
  double m = 0.0;
  for (int i = 1; i < x.dim(); ++i) m = std::max(m, std::abs(x.coeff(i)));
  return m;
}

inline bool is_real(const Element& x, double tol = kConeTol) {
  return nonreal_residual(x) <= tol;
}

/// Membership in the quadratic cone: x real, or t(x) and n(x) real scalars
/// with 4 n(x) > t(x)^2.
inline bool in_quadratic_cone(const Element& x, double tol = kConeTol) {
  if (is_real(x, tol)) return true;
  const Element t = trace(x);
  const Element n = norm(x);
  if (!is_real(t, tol) || !is_real(n, tol)) return false;
  return 4.0 * n.coeff(0) > t.coeff(0) * t.coeff(0);
}

/// True iff t(J) = 0 and n(J) = 1 within tol, i.e. J^2 = -1.
inline bool is_imaginary_unit(const Element& j, double tol = kConeTol) {
  const Element t = trace(j);
  if (!is_real(t, tol) || std::abs(t.coeff(0)) > tol) return false;
  const Element n = norm(j);
  return is_real(n, tol) && std::abs(n.coeff(0) - 1.0) <= tol;
}

/// x = alpha + beta * J with beta >= 0; unit is empty at real points.
struct ConeDecomposition {
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<Element> unit;
};

inline ConeDecomposition decompose(const Element& x, double tol = kConeTol) {
  if (!in_quadratic_cone(x, tol))
    throw std::domain_error("element lies outside the quadratic cone");
  ConeDecomposition d;
  d.alpha = 0.5 * trace(x).coeff(0);
  const double disc = norm(x).coeff(0) - d.alpha * d.alpha;
  d.beta = disc > 0.0 ? std::sqrt(disc) : 0.0;
  if (d.beta > tol) {
    Element j = x;
    j.coeff(0) -= d.alpha;
    j *= 1.0 / d.beta;
    d.unit = std::move(j);
  } else {
    d.beta = 0.0;
  }
  return d;
}

/// Inverse of a cone element with real norm: x^c / n(x).
inline Element invert_in_plane(const Element& x, double tol = kConeTol) {
  const Element n = norm(x);
  if (!is_real(n, tol))
    throw std::domain_error("norm is not real; element not invertible here");
  const double n0 = n.coeff(0);
  if (std::abs(n0) <= tol)
    throw std::domain_error("element is not invertible (norm ~ 0)");
  return conj(x) * (1.0 / n0);
}

// ---------------------------------------------------------------------------
// Built-in algebras
// ---------------------------------------------------------------------------

namespace detail {

inline AlgebraSpec make_quaternions() {
  const int d = 4;
  std::vector<double> c(d * d * d, 0.0);
  auto set = [&](int i, int j, int k, double v) {
    c[(static_cast<std::size_t>(i) * d + j) * d + k] = v;
  };
  // Basis 1, i, j, k with i^2 = j^2 = k^2 = -1, ij = k, jk = i, ki = j.
  const int I = 1, J = 2, K = 3;
  for (int j = 0; j < d; ++j) {
    set(0, j, j, 1.0);
    if (j != 0) set(j, 0, j, 1.0);
  }
  set(I, I, 0, -1.0);
  set(J, J, 0, -1.0);
  set(K, K, 0, -1.0);
  set(I, J, K, 1.0);
  set(J, I, K, -1.0);
  set(J, K, I, 1.0);
  set(K, J, I, -1.0);
  set(K, I, J, 1.0);
  set(I, K, J, -1.0);
  return AlgebraSpec("quaternion", d, std::move(c), {1.0, -1.0, -1.0, -1.0},
                     {"1", "i", "j", "k"});
}

// Generators of R_{0,n} as bitmasks; sign of the reordering that brings the
// concatenation of blades a and b into canonical ascending order, including
// the metric e_i^2 = -1 on repeated generators.
inline int blade_product_sign(unsigned a, unsigned b) {
  int swaps = 0;
  unsigned t = a >> 1;
  while (t != 0) {
    swaps += __builtin_popcount(t & b);
    t >>= 1;
  }
  int sign = (swaps % 2 == 0) ? 1 : -1;
  unsigned common = a & b;
  if (__builtin_popcount(common) % 2 != 0) sign = -sign;  // e_i^2 = -1
  return sign;
}

inline AlgebraSpec make_clifford(int n) {
  if (n < 1 || n > 6)
    throw std::invalid_argument("clifford(n) supports 1 <= n <= 6");
  const int d = 1 << n;
  // Blades in graded-lexicographic order: by grade, then by the sorted
  // generator sequence.
  std::vector<unsigned> blades;
  blades.reserve(d);
  for (int grade = 0; grade <= n; ++grade) {
    std::vector<unsigned> of_grade;
    for (unsigned m = 0; m < static_cast<unsigned>(d); ++m)
      if (__builtin_popcount(m) == grade) of_grade.push_back(m);
    std::sort(of_grade.begin(), of_grade.end(),
              [](unsigned x, unsigned y) {
                // Lexicographic on ascending generator lists.
                while (x != 0 && y != 0) {
                  const int gx = __builtin_ctz(x), gy = __builtin_ctz(y);
                  if (gx != gy) return gx < gy;
                  x &= x - 1;
                  y &= y - 1;
                }
                return x == 0 && y != 0;
              });
    for (unsigned m : of_grade) blades.push_back(m);
  }
  std::vector<int> pos(d, 0);
  for (int i = 0; i < d; ++i) pos[blades[i]] = i;

  std::vector<double> c(static_cast<std::size_t>(d) * d * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const unsigned target = blades[i] ^ blades[j];
      const int sign = blade_product_sign(blades[i], blades[j]);
      c[(static_cast<std::size_t>(i) * d + j) * d + pos[target]] = sign;
    }
  // Clifford conjugation: sign (-1)^{k(k+1)/2} on grade-k blades, so that
  // paravectors conjugate as x_0 - x_1 e_1 - ... - x_n e_n.
  std::vector<double> signs(d);
  std::vector<std::string> names(d);
  for (int i = 0; i < d; ++i) {
    const int k = __builtin_popcount(blades[i]);
    signs[i] = (k * (k + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    if (k == 0) {
      names[i] = "1";
    } else {
      std::string nm = "e";
      for (int g = 0; g < n; ++g)
        if (blades[i] & (1u << g)) nm += static_cast<char>('1' + g);
      names[i] = nm;
    }
  }
  return AlgebraSpec("clifford:" + std::to_string(n), d, std::move(c),
                     std::move(signs), std::move(names));
}

}  // namespace detail

/// The quaternion algebra H (basis 1, i, j, k).
inline const AlgebraSpec& quaternions() {
  static const AlgebraSpec alg = detail::make_quaternions();
  return alg;
}

/// The Clifford algebra R_{0,n}, generators e_1..e_n with e_i e_j + e_j e_i =
/// -2 delta_ij, blades in graded-lexicographic order.
inline const AlgebraSpec& clifford(int n) {
  static std::mutex mtx;
  static std::map<int, std::unique_ptr<AlgebraSpec>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, std::make_unique<AlgebraSpec>(detail::make_clifford(n)))
             .first;
  return *it->second;
}

/// Lookup by CLI name: "quaternion" or "clifford:n".
inline const AlgebraSpec& algebra_by_name(const std::string& name) {
  if (name == "quaternion" || name == "H") return quaternions();
  if (name.rfind("clifford:", 0) == 0) {
    const int n = std::stoi(name.substr(9));
    return clifford(n);
  }
  throw std::invalid_argument("unknown algebra '" + name + "'");
}

}  // namespace slicecauchy
