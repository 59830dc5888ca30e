#pragma once

// Gorenstein data and terminal / canonical classification of simplicial cones.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toric/fan.hpp"

namespace toric {

enum class ConeClass { smooth, terminal, canonical, not_canonical, not_q_gorenstein };

inline std::string to_string(ConeClass c) {
  switch (c) {
    case ConeClass::smooth: return "smooth";
    case ConeClass::terminal: return "terminal";
    case ConeClass::canonical: return "canonical";
    case ConeClass::not_canonical: return "not_canonical";
    case ConeClass::not_q_gorenstein: return "not_q_gorenstein";
  }
  return "?";
}

/// Weil divisor Σ a_ρ V(ρ), one coefficient per ray.
using Divisor = std::vector<Integer>;

inline Divisor canonical_divisor(const Fan& f) { return Divisor(f.num_rays(), Integer(-1)); }

inline Divisor anticanonical_divisor(const Fan& f) { return Divisor(f.num_rays(), Integer(1)); }

/// m_σ with <m_σ, u_ρ> = 1 on the rays of each maximal cone.
struct CartierData {
  std::vector<RationalVector> m;       // per maximal cone
  std::vector<Integer> local_index;    // least k with k m_σ integral
  Integer index = 1;                   // Gorenstein index ℓ, lcm of the local ones
};

inline Integer denominator_lcm(const RationalVector& v) {
  Integer l = 1;
  for (const auto& q : v) l = lcm(l, q.get_den());
  return l;
}

inline std::optional<CartierData> gorenstein_data(const Fan& f) {
  CartierData data;
  for (const auto& c : f.max_cones()) {
    auto gens = f.generators(c);
    auto m = solve_affine_dual(gens, std::vector<Rational>(gens.size(), Rational(1)), f.rank());
    if (!m) return std::nullopt;
    Integer k = denominator_lcm(*m);
    data.index = lcm(data.index, k);
    data.local_index.push_back(k);
    data.m.push_back(std::move(*m));
  }
  return data;
}

inline Integer gorenstein_index(const Fan& f) {
  auto d = gorenstein_data(f);
  if (!d) throw Error("fan not Q-Gorenstein");
  return d->index;
}

/// Local data m_σ with <m_σ, u_ρ> = -a_ρ for the rays of each maximal cone.
inline std::vector<RationalVector> local_data(const Fan& f, const Divisor& d) {
  std::vector<RationalVector> out;
  for (const auto& c : f.max_cones()) {
    std::vector<Rational> vals;
    for (auto r : c.rays) vals.push_back(Rational(-d.at(r)));
    auto m = solve_affine_dual(f.generators(c), vals, f.rank());
    if (!m) throw Error("divisor not Q-Cartier");
    out.push_back(std::move(*m));
  }
  return out;
}

/// Least k > 0 with kD Cartier.
inline Integer cartier_index(const Fan& f, const Divisor& d) {
  Integer k = 1;
  for (const auto& m : local_data(f, d)) k = lcm(k, denominator_lcm(m));
  return k;
}

inline bool is_cartier(const Fan& f, const Divisor& d) { return cartier_index(f, d) == 1; }

inline Divisor prime_divisor(const Fan& f, std::size_t ray) {
  Divisor d(f.num_rays(), Integer(0));
  d.at(ray) = 1;
  return d;
}

namespace detail {

/// Calls visit(scaled) for every nonzero coset of Z^d-span of the cone's rays
/// inside its saturation.  `scaled[j]` is L times the fractional coefficient of
/// u_j for the parallelepiped representative, with L the largest Smith
/// invariant; visit returns false to stop.
template <class Visit>
void for_each_box_point(std::span<const LatticeVector> gens, std::size_t n, Integer& scale, Visit&& visit) {
  const std::size_t d = gens.size();
  SmithForm s = smith_normal_form(IntegerMatrix::from_rows(gens, n));
  auto diag = s.nonzero_diagonal();
  if (diag.size() != d) throw Error("cone not simplicial");
  scale = diag.back();
  std::vector<Integer> weight(d);  // L / d_i
  for (std::size_t i = 0; i < d; ++i) weight[i] = scale / diag[i];
  std::vector<Integer> c(d, Integer(0));
  std::vector<Integer> coeff(d);
  while (true) {
    std::size_t i = 0;
    while (i < d && c[i] + 1 == diag[i]) c[i++] = 0;
    if (i == d) return;
    ++c[i];
    for (std::size_t j = 0; j < d; ++j) {
      Integer acc = 0;
      for (std::size_t k = 0; k < d; ++k)
        if (c[k] != 0) acc += c[k] * weight[k] * s.left(k, j);
      coeff[j] = mod(acc, scale);
    }
    if (!visit(coeff)) return;
  }
}

}  // namespace detail

/// Smallest value of <m_σ, p> over nonzero lattice points p of the half-open
/// fundamental parallelepiped, as a rational; nullopt for smooth cones.
inline std::optional<Rational> minimal_box_height(std::span<const LatticeVector> gens, std::size_t n) {
  std::optional<Rational> best;
  Integer scale;
  detail::for_each_box_point(gens, n, scale, [&](const std::vector<Integer>& coeff) {
    Integer sum = 0;
    for (const auto& x : coeff) sum += x;
    Rational h(sum, scale);
    h.canonicalize();
    if (!best || h < *best) best = h;
    return true;
  });
  return best;
}

/// Smooth iff multiplicity one; otherwise terminal / canonical according to
/// the heights of the nonzero parallelepiped points.
inline ConeClass classify_cone(std::span<const LatticeVector> gens, std::size_t n) {
  auto h = minimal_box_height(gens, n);
  if (!h) return ConeClass::smooth;
  if (*h > 1) return ConeClass::terminal;
  if (*h == 1) return ConeClass::canonical;
  return ConeClass::not_canonical;
}

inline ConeClass classify_cone(const Fan& f, const Cone& c) { return classify_cone(f.generators(c), f.rank()); }

struct SingularityReport {
  std::vector<ConeClass> cone_class;  // per maximal cone
  std::vector<Cone> minimal_singular;
  int sing_locus_dim = -1;
  bool isolated = true;
  bool finitely_many_nonterminal = true;
  Integer gorenstein_index = 1;

  bool smooth() const { return minimal_singular.empty(); }
  bool terminal() const {
    for (auto c : cone_class)
      if (c != ConeClass::smooth && c != ConeClass::terminal) return false;
    return true;
  }
  bool canonical() const {
    for (auto c : cone_class)
      if (c == ConeClass::not_canonical || c == ConeClass::not_q_gorenstein) return false;
    return true;
  }
};

inline SingularityReport singularity_report(const Fan& f) {
  SingularityReport rep;
  const std::size_t n = f.rank();
  std::map<Cone, bool> singular;  // memo over faces
  auto is_singular = [&](const Cone& c) {
    auto it = singular.find(c);
    if (it != singular.end()) return it->second;
    bool s = multiplicity(f, c) != 1;
    singular.emplace(c, s);
    return s;
  };
  std::set<Cone> minimal;
  for (const auto& c : f.max_cones()) {
    rep.cone_class.push_back(classify_cone(f, c));
    if (rep.cone_class.back() == ConeClass::smooth) continue;
    // Faces by increasing dimension; a face is minimal singular when it is
    // singular and all of its facets are smooth.
    std::set<Cone> singular_here;
    for (std::size_t k = 1; k <= c.dim(); ++k)
      for (const auto& face : faces_of_dim(c, k)) {
        bool facet_singular = false;
        for (auto r : face.rays)
          if (singular_here.count(face.without(r))) {
            facet_singular = true;
            break;
          }
        if (facet_singular) {
          singular_here.insert(face);
          continue;
        }
        if (is_singular(face)) {
          singular_here.insert(face);
          minimal.insert(face);
        }
      }
    for (const auto& facet : faces_of_dim(c, c.dim() - 1)) {
      auto cls = classify_cone(f, facet);
      if (cls != ConeClass::smooth && cls != ConeClass::terminal) rep.finitely_many_nonterminal = false;
    }
  }
  rep.minimal_singular.assign(minimal.begin(), minimal.end());
  std::size_t min_dim = n + 1;
  for (const auto& c : rep.minimal_singular) {
    min_dim = std::min(min_dim, c.dim());
    if (c.dim() != n) rep.isolated = false;
  }
  rep.sing_locus_dim = rep.minimal_singular.empty() ? -1 : int(n) - int(min_dim);
  if (auto g = gorenstein_data(f)) rep.gorenstein_index = g->index;
  return rep;
}

}  // namespace toric
