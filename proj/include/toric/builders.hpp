#pragma once

// Standard fans: weighted projective spaces, projectivised split bundles,
// and quasi-étale covers (the same cones read in the lattice of the rays).

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "toric/fan.hpp"
#include "toric/mori.hpp"

namespace toric {

struct WeightVector {
  std::vector<Integer> weights;

  WeightVector() = default;
  WeightVector(std::vector<Integer> w) : weights(std::move(w)) {}
  WeightVector(std::initializer_list<long> w) {
    for (long x : w) weights.emplace_back(x);
  }

  Integer h() const {
    Integer s = 0;
    for (const auto& x : weights) s += x;
    return s;
  }
  std::size_t size() const { return weights.size(); }
  const Integer& operator[](std::size_t i) const { return weights[i]; }
  friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const WeightVector& w) {
  os << '(';
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  return os << ')';
}

/// Fan of P(λ_0, ..., λ_n); ray i corresponds to λ_i and Σ λ_i u_i = 0.
/// With some λ_k = 1 (the first such), ray k is -(λ_i)_{i != k} and the other
/// rays are the standard basis; otherwise the rays come from a Smith basis of
/// Z^{n+1} / Z λ.
inline Fan wps_fan(const WeightVector& w) {
  const std::size_t n1 = w.size();
  if (n1 < 2) throw Error("at least two weights required");
  Integer g = 0;
  for (const auto& x : w.weights) {
    if (x <= 0) throw Error("weights must be positive");
    g = gcd(g, x);
  }
  if (g != 1) throw Error("weights not coprime");
  const std::size_t n = n1 - 1;
  std::vector<LatticeVector> rays(n1, LatticeVector(n, Integer(0)));
  auto one = std::find(w.weights.begin(), w.weights.end(), Integer(1));
  if (one != w.weights.end()) {
    const std::size_t k = std::size_t(one - w.weights.begin());
    std::size_t pos = 0;
    for (std::size_t i = 0; i < n1; ++i) {
      if (i == k) continue;
      rays[i][pos] = 1;
      rays[k][pos] = -w[i];
      ++pos;
    }
  } else {
    IntegerMatrix col(n1, 1);
    for (std::size_t i = 0; i < n1; ++i) col(i, 0) = w[i];
    SmithForm s = smith_normal_form(col);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t r = 0; r < n; ++r) rays[i][r] = s.left(r + 1, i);
  }
  for (std::size_t i = 0; i < n1; ++i)
    if (!is_primitive(rays[i])) throw Error("weights not well-formed: a ray is not primitive");
  std::vector<Cone> cones;
  for (std::size_t skip = n1; skip-- > 0;) {
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i < n1; ++i)
      if (i != skip) c.push_back(i);
    cones.emplace_back(std::move(c));
  }
  return Fan(n, std::move(rays), std::move(cones));
}

/// Fan of P(O ⊕ O(D)) over a complete simplicial base.
struct BundleFan {
  Fan fan;
  Divisor divisor;          // the base divisor D used for the twist
  std::size_t plus = 0;     // ray (0,...,0,1)
  std::size_t minus = 0;    // ray (0,...,0,-1)
};

inline BundleFan projectivized_sum_fan(const Fan& base, const Divisor& d) {
  if (d.size() != base.num_rays()) throw Error("divisor length differs from ray count");
  const std::size_t n = base.rank() + 1;
  std::vector<LatticeVector> rays;
  for (std::size_t i = 0; i < base.num_rays(); ++i) {
    LatticeVector v = base.ray(i);
    v.push_back(d[i]);
    rays.push_back(std::move(v));
  }
  const std::size_t plus = rays.size(), minus = plus + 1;
  rays.push_back(unit_vector(n, n - 1));
  rays.push_back(-unit_vector(n, n - 1));
  std::vector<Cone> cones;
  for (const auto& c : base.max_cones()) {
    cones.push_back(c.with(plus));
    cones.push_back(c.with(minus));
  }
  return {Fan(n, std::move(rays), std::move(cones)), d, plus, minus};
}

struct CoverResult {
  Fan cover_fan;
  AbelianGroupShape deck_group;
  std::vector<std::size_t> ray_map;  // cover ray i covers source ray ray_map[i]
  IntegerMatrix basis_change;        // rows: Hermite basis of the ray lattice in N
};

inline AbelianGroupShape torsion_class_group(const Fan& f) { return quotient_group(f.rays(), f.rank()); }

/// The fan of X re-read in the sublattice generated by its rays.
inline CoverResult quasi_etale_cover(const Fan& f) {
  const std::size_t n = f.rank();
  HermiteForm h = hermite_normal_form(IntegerMatrix::from_rows(f.rays(), n));
  if (h.pivots.size() != n) throw Error("rays do not span the lattice rationally");
  CoverResult res;
  res.basis_change = h.basis;
  std::vector<LatticeVector> rays;
  for (const auto& u : f.rays()) {
    auto c = lattice_coordinates(h, u);
    if (!c || !is_primitive(*c)) throw Error("ray not primitive in the ray lattice");
    rays.push_back(std::move(*c));
  }
  res.cover_fan = Fan(n, std::move(rays), f.max_cones());
  res.deck_group = quotient_group(f.rays(), n);
  res.ray_map.resize(f.num_rays());
  std::iota(res.ray_map.begin(), res.ray_map.end(), 0);
  return res;
}

inline bool is_pws(const Fan& f) { return torsion_class_group(f).is_trivial(); }

/// Weights (sorted decreasingly) when the fan is a weighted projective space.
inline std::optional<WeightVector> is_wps(const Fan& f) {
  if (f.num_rays() != f.rank() + 1 || !is_complete(f) || !is_pws(f)) return std::nullopt;
  IntegerMatrix cols(f.rank(), f.num_rays());
  for (std::size_t j = 0; j < f.num_rays(); ++j)
    for (std::size_t i = 0; i < f.rank(); ++i) cols(i, j) = f.ray(j)[i];
  auto ker = integer_kernel(cols);
  if (ker.size() != 1) return std::nullopt;
  auto rel = ker.front();
  if (rel.front() < 0)
    for (auto& x : rel) x = -x;
  if (std::any_of(rel.begin(), rel.end(), [](const Integer& x) { return x <= 0; })) return std::nullopt;
  std::sort(rel.begin(), rel.end(), std::greater<>());
  return WeightVector(std::move(rel));
}

/// Covers of the source and target of a contraction and the lattice data
/// linking them.
struct CoverDiagram {
  CoverResult source;
  CoverResult target;
  Fan target_fan;
  Integer lattice_index = 1;        // [N_{Δ_X(1)} : N_{Δ_target(1)}]
  std::optional<Integer> d_e;       // divisorial: multiple of u_E in the target ray lattice
  std::optional<Fan> lifted_target; // divisorial: target cones read in N_{Δ_X(1)}
};

inline CoverDiagram cover_of_contraction(const Fan& f, const MoriRay& ray) {
  auto desc = classify_ray(f, ray);
  CoverDiagram out;
  out.source = quasi_etale_cover(f);
  if (desc.kind == ContractionKind::small) throw Error("small contraction has no cover diagram");
  if (desc.kind == ContractionKind::divisorial) {
    auto dc = contract_divisorial(f, ray);
    out.target_fan = dc.target;
    out.target = quasi_etale_cover(dc.target);
    const std::size_t n = f.rank();
    Integer det_x = abs(determinant(out.source.basis_change));
    Integer det_t = abs(determinant(out.target.basis_change));
    out.lattice_index = det_t / det_x;
    // u_E in the Hermite basis of the target ray lattice, over Q.
    std::vector<LatticeVector> basis = out.target.basis_change.row_vectors();
    auto coords = span_coordinates(basis, f.ray(dc.dropped_ray));
    Integer d = 1;
    for (const auto& q : *coords) d = lcm(d, q.get_den());
    out.d_e = d;
    std::vector<LatticeVector> lifted;
    HermiteForm hx = hermite_normal_form(IntegerMatrix::from_rows(f.rays(), n));
    for (const auto& u : dc.target.rays()) lifted.push_back(*lattice_coordinates(hx, u));
    out.lifted_target = Fan(n, std::move(lifted), dc.target.max_cones());
  } else {
    auto fc = contract_fiber_type(f, ray.curve);
    out.target_fan = fc.base;
    if (fc.base.rank() > 0) {
      out.target = quasi_etale_cover(fc.base);
    } else {
      out.target.cover_fan = fc.base;
    }
  }
  return out;
}

}  // namespace toric
