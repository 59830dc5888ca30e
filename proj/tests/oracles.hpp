#pragma once

// Brute-force reference computations used only by the tests.  None of these
// call into the library's normal forms; they work from first principles
// (minors, permutations, bounded enumeration) so they can catch its bugs.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Int = long;
using Vec = std::vector<Int>;
using Mat = std::vector<Vec>;

/// Leibniz determinant, exact in mpz.
inline mpz_class det_leibniz(const Mat& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  mpz_class total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    mpz_class term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= a[i][perm[i]];
    total += (inversions % 2 ? -term : term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      f(idx);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

/// Invariant factors from determinantal divisors D_k = gcd of k x k minors;
/// the returned list contains all nonzero d_k (including ones).
inline std::vector<mpz_class> invariant_factors_by_minors(const Mat& m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<mpz_class> out;
  mpz_class prev = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    mpz_class g = 0;
    for_each_subset(rows, k, [&](const std::vector<std::size_t>& r) {
      for_each_subset(cols, k, [&](const std::vector<std::size_t>& c) {
        Mat sub(k, Vec(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[r[i]][c[j]];
        mpz_class d = det_leibniz(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      });
    });
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

/// Integer points x of the box [-bound, bound]^n.
inline void for_each_box_point(std::size_t n, Int bound, const std::function<void(const Vec&)>& f) {
  Vec x(n, -bound);
  while (true) {
    f(x);
    std::size_t i = 0;
    while (i < n && x[i] == bound) x[i++] = -bound;
    if (i == n) return;
    ++x[i];
  }
}

/// Adjugate of a square integer matrix (columns = generators): adj * A = det * I.
inline Mat adjugate(const Mat& a) {
  const std::size_t n = a.size();
  Mat adj(n, Vec(n));
  if (n == 1) {
    adj[0][0] = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Mat minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        Vec row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(a[r][c]);
        minor.push_back(row);
      }
      mpz_class d = det_leibniz(minor);
      adj[i][j] = ((i + j) % 2 ? -1 : 1) * d.get_si();
    }
  return adj;
}

}  // namespace oracle

namespace oracle {

enum class Kind { smooth, terminal, canonical, not_canonical };

/// Classification of a full-dimensional simplicial cone (columns of g are the
/// generators) by scanning every lattice point of the box around
/// conv(0, u_1, ..., u_n) and testing membership and height with the adjugate.
inline Kind classify_by_box_scan(const Mat& g) {
  const std::size_t n = g.size();
  mpz_class det_z = det_leibniz(g);
  const Int det = det_z.get_si();
  const Int d = det < 0 ? -det : det;
  if (d == 1) return Kind::smooth;
  Mat adj = adjugate(g);
  if (det < 0)
    for (auto& r : adj)
      for (auto& x : r) x = -x;
  Vec lo(n, 0), hi(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      lo[i] = std::min(lo[i], g[i][j]);
      hi[i] = std::max(hi[i], g[i][j]);
    }
  bool below = false, at = false;
  Vec x(lo);
  Vec lam(n);
  while (true) {
    // lam = adj x; inside iff all >= 0; height = sum(lam) / d.
    bool inside = true;
    Int height = 0;
    for (std::size_t i = 0; i < n && inside; ++i) {
      Int s = 0;
      for (std::size_t j = 0; j < n; ++j) s += adj[i][j] * x[j];
      if (s < 0) inside = false;
      height += s;
      lam[i] = s;
    }
    if (inside && height <= d) {
      bool zero = std::all_of(x.begin(), x.end(), [](Int v) { return v == 0; });
      bool generator = height == d && std::count(lam.begin(), lam.end(), 0) == Int(n - 1);
      if (!zero && !generator) {
        if (height < d) below = true;
        else at = true;
      }
    }
    std::size_t i = 0;
    while (i < n && x[i] == hi[i]) x[i] = lo[i], ++i;
    if (i == n) break;
    ++x[i];
  }
  if (below) return Kind::not_canonical;
  if (at) return Kind::canonical;
  return Kind::terminal;
}

/// Same classification for an upper-triangular generator matrix h (columns
/// are generators) by back-substitution over the half-open parallelepiped:
/// the points x = h λ with λ in [0,1)^n, found coordinate by coordinate from
/// the bottom row up.  Heights are tracked as numerators over det.
inline Kind classify_triangular(const Mat& h) {
  const std::size_t n = h.size();
  Int det = 1;
  for (std::size_t i = 0; i < n; ++i) det *= h[i][i];
  if (det == 1) return Kind::smooth;
  // λ_j = num_j / det; x_i = sum_{j>=i} h_ij λ_j must be an integer.
  Vec num(n, 0);
  Int best = -1;  // minimal height numerator among nonzero points
  std::function<void(std::size_t)> rec = [&](std::size_t row_plus1) {
    if (row_plus1 == 0) {
      Int sum = 0;
      bool nonzero = false;
      for (auto v : num) sum += v, nonzero |= v != 0;
      if (nonzero && (best < 0 || sum < best)) best = sum;
      return;
    }
    const std::size_t i = row_plus1 - 1;
    // tail = sum_{j>i} h_ij num_j; need (h_ii num_i + tail) divisible by det,
    // with 0 <= num_i < det.
    Int tail = 0;
    for (std::size_t j = i + 1; j < n; ++j) tail += h[i][j] * num[j];
    // Solve h_ii k = -tail (mod det) directly.
    Int g = std::gcd(h[i][i], det);
    Int r = ((-tail) % det + det) % det;
    if (r % g != 0) {
      num[i] = 0;
      return;
    }
    Int mod = det / g, a = (h[i][i] / g) % mod, b = r / g;
    Int inv = 0;
    for (Int t = 0; t < mod; ++t)
      if ((a * t) % mod == 1 % mod) {
        inv = t;
        break;
      }
    Int k0 = (b % mod) * inv % mod;
    for (Int k = k0; k < det; k += mod) {
      num[i] = k;
      rec(i);
    }
    num[i] = 0;
  };
  rec(n);
  if (best < det) return Kind::not_canonical;
  if (best == det) return Kind::canonical;
  return Kind::terminal;
}

}  // namespace oracle
