#pragma once

// Exact feasibility of { x >= 0 : A x = b } over the rationals.
// Phase-one simplex on a dense tableau with Bland's rule, so it terminates
// and is deterministic.

#include <optional>
#include <vector>

#include "toric/lattice.hpp"

namespace toric {

/// Some x >= 0 with A x = b, or nullopt.  `a` holds rows of the system.
inline std::optional<RationalVector> nonnegative_solution(const std::vector<RationalVector>& a, const RationalVector& b) {
  const std::size_t m = a.size();
  const std::size_t k = m ? a.front().size() : 0;
  if (m == 0) return RationalVector(k, Rational(0));

  // Columns 0..k-1 original, k..k+m-1 artificial, last column the rhs.
  const std::size_t width = k + m + 1;
  std::vector<RationalVector> t(m, RationalVector(width, Rational(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < k; ++j) t[i][j] = flip ? Rational(-a[i][j]) : a[i][j];
    t[i][k + i] = 1;
    t[i][width - 1] = flip ? Rational(-b[i]) : b[i];
    basis[i] = k + i;
  }
  // Reduced costs of the phase-one objective (sum of artificials).
  RationalVector cost(width, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < width; ++j)
      if (j < k || j == width - 1) cost[j] -= t[i][j];

  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][width - 1] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == m) break;  // unbounded direction cannot occur in phase one
    Rational piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
    }
    if (cost[enter] != 0) {
      Rational f = cost[enter];
      for (std::size_t j = 0; j < width; ++j) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  if (cost[width - 1] != 0) return std::nullopt;  // -objective stays negative
  RationalVector x(k, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < k) x[basis[i]] = t[i][width - 1];
  return x;
}

}  // namespace toric
