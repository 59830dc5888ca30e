#pragma once

// Exact integer and rational linear algebra over lattices Z^n.
//
// Everything here is arbitrary precision (GMP).  Vectors are row vectors;
// a matrix "of generators" stores one generator per row.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toric {

using Integer = mpz_class;
using Rational = mpq_class;
using LatticeVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// Raised when an operation's precondition on its mathematical input fails.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Non-negative remainder of a modulo m (m > 0).
inline Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline bool divides(const Integer& d, const Integer& x) {
  return d != 0 ? mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0 : x == 0;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline Rational fractional_part(const Rational& q) {
  Integer fl = floor_div(q.get_num(), q.get_den());
  return q - Rational(fl);
}

/// "p/q", or "p" for integers.
inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer content(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

inline bool is_zero(std::span<const Integer> v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

inline bool is_primitive(std::span<const Integer> v) { return content(v) == 1; }

inline Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational dot(std::span<const Rational> m, std::span<const Integer> u) {
  Rational s = 0;
  for (std::size_t i = 0; i < m.size(); ++i) s += m[i] * u[i];
  return s;
}

inline LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
  LatticeVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline LatticeVector operator-(const LatticeVector& a) {
  LatticeVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline LatticeVector scaled(const LatticeVector& a, const Integer& k) {
  LatticeVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * k;
  return r;
}

inline LatticeVector make_vector(std::initializer_list<long> xs) {
  LatticeVector v;
  v.reserve(xs.size());
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline LatticeVector unit_vector(std::size_t n, std::size_t i) {
  LatticeVector v(n, Integer(0));
  v[i] = 1;
  return v;
}

inline std::ostream& operator<<(std::ostream& os, const LatticeVector& v) {
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os << ')';
}

/// Dense row-major integer matrix.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

  static IntegerMatrix identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntegerMatrix from_rows(std::span<const LatticeVector> rows, std::size_t cols) {
    IntegerMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error("row length does not match column count");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntegerMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<LatticeVector> v;
    for (auto r : rows) v.push_back(make_vector(r));
    return from_rows(v, v.empty() ? 0 : v.front().size());
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  LatticeVector row(std::size_t i) const {
    return LatticeVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  LatticeVector col(std::size_t j) const {
    LatticeVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::vector<LatticeVector> row_vectors() const {
    std::vector<LatticeVector> r;
    r.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) r.push_back(row(i));
    return r;
  }

  IntegerMatrix transpose() const {
    IntegerMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
  }
  // col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix dimension mismatch");
    IntegerMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  /// Row vector times matrix.
  friend LatticeVector operator*(const LatticeVector& v, const IntegerMatrix& m) {
    LatticeVector r(m.cols_, Integer(0));
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (v[i] == 0) continue;
      for (std::size_t j = 0; j < m.cols_; ++j) r[j] += v[i] * m(i, j);
    }
    return r;
  }

  /// Matrix times column vector.
  friend LatticeVector operator*(const IntegerMatrix& m, const LatticeVector& v) {
    LatticeVector r(m.rows_, Integer(0));
    for (std::size_t i = 0; i < m.rows_; ++i)
      for (std::size_t j = 0; j < m.cols_; ++j) r[i] += m(i, j) * v[j];
    return r;
  }

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

inline std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) os << (i ? "," : "") << m.row(i);
  return os << ']';
}

/// Determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(IntegerMatrix a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw Error("determinant of a non-square matrix");
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : Integer(-a(n - 1, n - 1));
}

/// Result of a Smith normal form computation: left * M * right == diagonal.
struct SmithForm {
  IntegerMatrix diagonal;
  IntegerMatrix left;
  IntegerMatrix right;
  IntegerMatrix right_inverse;

  /// Non-zero diagonal entries d_1 | d_2 | ... (all positive).
  std::vector<Integer> nonzero_diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(diagonal.rows(), diagonal.cols()); ++i)
      if (diagonal(i, i) != 0) d.push_back(diagonal(i, i));
    return d;
  }
  std::size_t rank() const { return nonzero_diagonal().size(); }
};

/// Smith normal form with unimodular transforms.  The pivot is always an
/// entry of smallest absolute value in the active submatrix.
inline SmithForm smith_normal_form(const IntegerMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  SmithForm s{m, IntegerMatrix::identity(rows), IntegerMatrix::identity(cols),
              IntegerMatrix::identity(cols)};
  IntegerMatrix& d = s.diagonal;
  IntegerMatrix& u = s.left;
  IntegerMatrix& v = s.right;
  IntegerMatrix& vi = s.right_inverse;

  auto col_swap = [&](std::size_t a, std::size_t b) {
    d.swap_cols(a, b);
    v.swap_cols(a, b);
    vi.swap_rows(a, b);
  };
  // col[dst] += k col[src]
  auto col_add = [&](std::size_t dst, std::size_t src, const Integer& k) {
    d.add_col(dst, src, k);
    v.add_col(dst, src, k);
    vi.add_row(src, dst, -k);
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      std::size_t pr = rows, pc = cols;
      Integer best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (d(i, j) != 0 && (pr == rows || abs(d(i, j)) < best)) {
            best = abs(d(i, j));
            pr = i;
            pc = j;
          }
      if (pr == rows) return s;  // remaining block is zero
      d.swap_rows(t, pr);
      u.swap_rows(t, pr);
      col_swap(t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = d(i, t) / d(t, t);
        d.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = d(t, j) / d(t, t);
        col_add(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool fixed = false;
      for (std::size_t i = t + 1; i < rows && !fixed; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!divides(d(t, t), d(i, j))) {
            d.add_row(t, i, 1);
            u.add_row(t, i, 1);
            fixed = true;
            break;
          }
      if (fixed) continue;
      break;
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  return s;
}

/// Row-style Hermite normal form: a basis of the row lattice in echelon form
/// with positive pivots and entries above each pivot reduced into [0, pivot).
struct HermiteForm {
  IntegerMatrix basis;              // rank x cols
  std::vector<std::size_t> pivots;  // pivot column of each basis row
};

inline HermiteForm hermite_normal_form(const IntegerMatrix& m) {
  IntegerMatrix a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    while (true) {
      std::size_t p = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (a(i, c) != 0 && (p == rows || abs(a(i, c)) < abs(a(p, c)))) p = i;
      if (p == rows) break;
      a.swap_rows(r, p);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (a(i, c) == 0) continue;
        a.add_row(i, r, -Integer(a(i, c) / a(r, c)));
        if (a(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0) a.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) a.add_row(i, r, -floor_div(a(i, c), a(r, c)));
    pivots.push_back(c);
    ++r;
  }
  IntegerMatrix basis(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) basis(i, j) = a(i, j);
  return {std::move(basis), std::move(pivots)};
}

inline std::size_t rank(const IntegerMatrix& m) { return hermite_normal_form(m).pivots.size(); }

inline std::size_t rank(std::span<const LatticeVector> vs, std::size_t ambient) {
  return rank(IntegerMatrix::from_rows(vs, ambient));
}

/// Coordinates of v in an echelon basis (rows of `h.basis`), when v lies in
/// the row lattice.
inline std::optional<LatticeVector> lattice_coordinates(const HermiteForm& h, const LatticeVector& v) {
  LatticeVector rest = v;
  LatticeVector coords(h.pivots.size(), Integer(0));
  for (std::size_t i = 0; i < h.pivots.size(); ++i) {
    const std::size_t c = h.pivots[i];
    if (!divides(h.basis(i, c), rest[c])) return std::nullopt;
    coords[i] = rest[c] / h.basis(i, c);
    for (std::size_t j = 0; j < rest.size(); ++j) rest[j] -= coords[i] * h.basis(i, j);
  }
  if (!is_zero(rest)) return std::nullopt;
  return coords;
}

/// Basis (as rows) of the integer kernel {x : M x = 0}; saturated.
inline std::vector<LatticeVector> integer_kernel(const IntegerMatrix& m) {
  SmithForm s = smith_normal_form(m);
  const std::size_t r = s.rank();
  std::vector<LatticeVector> ker;
  for (std::size_t j = r; j < m.cols(); ++j) ker.push_back(s.right.col(j));
  return ker;
}

/// Basis of the saturation span_Q(rows) ∩ Z^n of the row lattice.
inline std::vector<LatticeVector> saturation_basis(const IntegerMatrix& m) {
  SmithForm s = smith_normal_form(m);
  std::vector<LatticeVector> b;
  for (std::size_t i = 0; i < s.rank(); ++i) b.push_back(s.right_inverse.row(i));
  return b;
}

/// Splits v = k * v0 with v0 primitive and k > 0.
inline std::pair<LatticeVector, Integer> primitive_part(const LatticeVector& v) {
  Integer g = content(v);
  if (g == 0) throw Error("zero has no primitive part");
  LatticeVector p(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) p[i] = v[i] / g;
  return {std::move(p), g};
}

/// Finite abelian group ⊕ Z/d_i ⊕ Z^free_rank with d_1 | d_2 | ..., d_i >= 2.
struct AbelianGroupShape {
  std::vector<Integer> invariant_factors;
  std::size_t free_rank = 0;

  Integer torsion_order() const {
    Integer o = 1;
    for (const auto& d : invariant_factors) o *= d;
    return o;
  }
  bool is_trivial() const { return invariant_factors.empty() && free_rank == 0; }
  friend bool operator==(const AbelianGroupShape&, const AbelianGroupShape&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const AbelianGroupShape& g) {
  bool first = true;
  for (const auto& d : g.invariant_factors) {
    os << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  if (g.free_rank > 0) os << (first ? "" : " + ") << "Z^" << g.free_rank;
  else if (first) os << "0";
  return os;
}

/// Shape of Z^ambient_rank / <generators>.
inline AbelianGroupShape quotient_group(std::span<const LatticeVector> generators, std::size_t ambient_rank) {
  AbelianGroupShape g;
  if (generators.empty()) {
    g.free_rank = ambient_rank;
    return g;
  }
  SmithForm s = smith_normal_form(IntegerMatrix::from_rows(generators, ambient_rank));
  auto diag = s.nonzero_diagonal();
  for (const auto& d : diag)
    if (d != 1) g.invariant_factors.push_back(d);
  g.free_rank = ambient_rank - diag.size();
  return g;
}

/// Solves the square rational system A x = b; nullopt if A is singular.
inline std::optional<RationalVector> solve_rational(std::vector<RationalVector> a, RationalVector b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
      b[i] -= f * b[c];
    }
  }
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

/// Rank of a family of rational vectors.
inline std::size_t rational_rank(std::vector<RationalVector> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

/// Rational m with <m, rays[i]> = values[i].  For cones that are not full
/// dimensional the coordinates outside the Hermite pivot columns of the ray
/// matrix are set to zero.  Throws when the rays are linearly dependent.
inline std::optional<RationalVector> solve_affine_dual(std::span<const LatticeVector> rays,
                                                       std::span<const Rational> values,
                                                       std::size_t ambient_rank) {
  if (rays.size() != values.size()) throw Error("one value per ray required");
  RationalVector m(ambient_rank, Rational(0));
  if (rays.empty()) return m;
  HermiteForm h = hermite_normal_form(IntegerMatrix::from_rows(rays, ambient_rank));
  if (h.pivots.size() != rays.size()) throw Error("cone not simplicial");
  const std::size_t d = rays.size();
  std::vector<RationalVector> a(d, RationalVector(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a[i][j] = Rational(rays[i][h.pivots[j]]);
  auto x = solve_rational(std::move(a), RationalVector(values.begin(), values.end()));
  if (!x) return std::nullopt;
  for (std::size_t j = 0; j < d; ++j) m[h.pivots[j]] = (*x)[j];
  for (std::size_t i = 0; i < d; ++i)
    if (dot(m, rays[i]) != values[i]) return std::nullopt;
  return m;
}

/// Coordinates λ with Σ λ_i rays[i] = x, if x lies in the rational span.
inline std::optional<RationalVector> span_coordinates(std::span<const LatticeVector> rays, const LatticeVector& x) {
  const std::size_t d = rays.size();
  const std::size_t n = x.size();
  if (d == 0) return is_zero(x) ? std::optional<RationalVector>(RationalVector{}) : std::nullopt;
  // Transpose: columns are rays; pick d independent rows (pivot coordinates).
  HermiteForm h = hermite_normal_form(IntegerMatrix::from_rows(rays, n));
  if (h.pivots.size() != d) throw Error("cone not simplicial");
  std::vector<RationalVector> a(d, RationalVector(d));
  RationalVector b(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) a[i][j] = Rational(rays[j][h.pivots[i]]);
    b[i] = Rational(x[h.pivots[i]]);
  }
  auto lam = solve_rational(std::move(a), std::move(b));
  if (!lam) return std::nullopt;
  for (std::size_t c = 0; c < n; ++c) {
    Rational s = 0;
    for (std::size_t j = 0; j < d; ++j) s += (*lam)[j] * rays[j][c];
    if (s != Rational(x[c])) return std::nullopt;
  }
  return lam;
}

/// Index of Z u_1 + ... + Z u_d inside its saturation (product of Smith
/// invariants); throws on dependent generators.
inline Integer sublattice_index(std::span<const LatticeVector> gens, std::size_t ambient_rank) {
  if (gens.empty()) return 1;
  if (gens.size() == ambient_rank) {
    Integer det = abs(determinant(IntegerMatrix::from_rows(gens, ambient_rank)));
    if (det == 0) throw Error("cone not simplicial");
    return det;
  }
  SmithForm s = smith_normal_form(IntegerMatrix::from_rows(gens, ambient_rank));
  auto d = s.nonzero_diagonal();
  if (d.size() != gens.size()) throw Error("cone not simplicial");
  Integer p = 1;
  for (const auto& x : d) p *= x;
  return p;
}

}  // namespace toric
