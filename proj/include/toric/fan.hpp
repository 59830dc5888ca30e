#pragma once

// Simplicial fans stored by their maximal cones.

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "toric/lattice.hpp"
#include "toric/lp.hpp"

namespace toric {

/// Sorted ray indices into Fan::rays.
struct Cone {
  std::vector<std::size_t> rays;

  Cone() = default;
  Cone(std::vector<std::size_t> r) : rays(std::move(r)) { std::sort(rays.begin(), rays.end()); }
  Cone(std::initializer_list<std::size_t> r) : Cone(std::vector<std::size_t>(r)) {}

  std::size_t dim() const { return rays.size(); }
  bool contains(std::size_t ray) const { return std::binary_search(rays.begin(), rays.end(), ray); }
  bool is_face_of(const Cone& other) const {
    return std::includes(other.rays.begin(), other.rays.end(), rays.begin(), rays.end());
  }
  Cone without(std::size_t ray) const {
    std::vector<std::size_t> r;
    for (auto x : rays)
      if (x != ray) r.push_back(x);
    return Cone(std::move(r));
  }
  Cone with(std::size_t ray) const {
    auto r = rays;
    r.push_back(ray);
    return Cone(std::move(r));
  }

  friend auto operator<=>(const Cone&, const Cone&) = default;
  friend bool operator==(const Cone&, const Cone&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Cone& c) {
  os << '{';
  for (std::size_t i = 0; i < c.rays.size(); ++i) os << (i ? "," : "") << c.rays[i];
  return os << '}';
}

class Fan {
 public:
  Fan() = default;
  Fan(std::size_t rank, std::vector<LatticeVector> rays, std::vector<Cone> max_cones)
      : rank_(rank), rays_(std::move(rays)), cones_(std::move(max_cones)) {}

  std::size_t rank() const { return rank_; }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  const LatticeVector& ray(std::size_t i) const { return rays_.at(i); }
  const std::vector<Cone>& max_cones() const { return cones_; }
  std::size_t num_rays() const { return rays_.size(); }

  std::vector<LatticeVector> generators(const Cone& c) const {
    std::vector<LatticeVector> g;
    g.reserve(c.rays.size());
    for (auto i : c.rays) g.push_back(rays_.at(i));
    return g;
  }

  std::optional<std::size_t> find_ray(const LatticeVector& v) const {
    for (std::size_t i = 0; i < rays_.size(); ++i)
      if (rays_[i] == v) return i;
    return std::nullopt;
  }

  /// Index of the listed maximal cone equal to c.
  std::optional<std::size_t> find_cone(const Cone& c) const {
    for (std::size_t i = 0; i < cones_.size(); ++i)
      if (cones_[i] == c) return i;
    return std::nullopt;
  }

  friend bool operator==(const Fan&, const Fan&) = default;

 private:
  std::size_t rank_ = 0;
  std::vector<LatticeVector> rays_;
  std::vector<Cone> cones_;
};

/// Rays sorted lexicographically, cones sorted; equal fans become equal objects.
inline Fan canonical_form(const Fan& f) {
  std::vector<std::size_t> order(f.num_rays());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return f.ray(a) < f.ray(b); });
  std::vector<std::size_t> where(f.num_rays());
  std::vector<LatticeVector> rays;
  for (std::size_t i = 0; i < order.size(); ++i) {
    where[order[i]] = i;
    rays.push_back(f.ray(order[i]));
  }
  std::vector<Cone> cones;
  for (const auto& c : f.max_cones()) {
    std::vector<std::size_t> r;
    for (auto i : c.rays) r.push_back(where[i]);
    cones.emplace_back(std::move(r));
  }
  std::sort(cones.begin(), cones.end());
  return Fan(f.rank(), std::move(rays), std::move(cones));
}

inline bool same_fan(const Fan& a, const Fan& b) { return canonical_form(a) == canonical_form(b); }

/// Index of the lattice spanned by the cone's rays in its saturation; 1 iff smooth.
inline Integer multiplicity(const Fan& f, const Cone& c) { return sublattice_index(f.generators(c), f.rank()); }

/// All faces of a simplicial cone of a given dimension.
inline std::vector<Cone> faces_of_dim(const Cone& c, std::size_t k) {
  std::vector<Cone> out;
  const std::size_t d = c.dim();
  if (k > d) return out;
  std::vector<bool> pick(d, false);
  std::fill(pick.begin(), pick.begin() + k, true);
  do {
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < d; ++i)
      if (pick[i]) r.push_back(c.rays[i]);
    out.emplace_back(std::move(r));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

struct Violation {
  std::string kind;
  std::vector<std::size_t> cones;
  std::vector<std::size_t> rays;
  std::string message;
};

struct ValidationReport {
  bool valid = true;
  bool complete = false;
  std::vector<Violation> violations;
};

namespace detail {

/// Exact membership data for a full-dimensional simplicial cone: with G the
/// matrix whose columns are the generators, adj(G) x has the sign of det(G)
/// in every coordinate exactly when x lies in the cone.
struct ConeChart {
  IntegerMatrix adjugate;
  Integer det;

  /// Coordinates scaled by det, sign-normalised: all >= 0 iff inside.
  LatticeVector scaled_coordinates(const LatticeVector& x) const {
    LatticeVector c = adjugate * x;
    if (det < 0)
      for (auto& v : c) v = -v;
    return c;
  }
  bool contains(const LatticeVector& x) const {
    for (std::size_t i = 0; i < adjugate.rows(); ++i) {
      Integer s = 0;
      for (std::size_t j = 0; j < x.size(); ++j) s += adjugate(i, j) * x[j];
      if ((det > 0 && s < 0) || (det < 0 && s > 0)) return false;
    }
    return true;
  }
};

inline ConeChart chart(std::span<const LatticeVector> gens, std::size_t n) {
  // Columns of G are the generators, i.e. G = (rows of gens)^T.
  std::vector<RationalVector> g(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i][j] = Rational(gens[j][i]);
  Integer det = determinant(IntegerMatrix::from_rows(gens, n));
  if (det == 0) throw Error("cone not simplicial");
  IntegerMatrix adj(n, n);
  // Solve G X = det * e_k for each k; X is column k of adj(G).
  for (std::size_t k = 0; k < n; ++k) {
    RationalVector rhs(n, Rational(0));
    rhs[k] = Rational(det);
    auto x = solve_rational(g, rhs);
    for (std::size_t i = 0; i < n; ++i) adj(i, k) = x->at(i).get_num();
  }
  return {std::move(adj), std::move(det)};
}

/// Facet -> (cone index, ray opposite the facet) for every facet of every cone.
inline std::map<Cone, std::vector<std::pair<std::size_t, std::size_t>>> facet_incidence(const Fan& f) {
  std::map<Cone, std::vector<std::pair<std::size_t, std::size_t>>> m;
  for (std::size_t c = 0; c < f.max_cones().size(); ++c)
    for (auto r : f.max_cones()[c].rays) m[f.max_cones()[c].without(r)].push_back({c, r});
  return m;
}

/// Deterministic probe directions: all sign vectors in {-1,1}^n and every
/// pairwise sum of rays.
inline std::vector<LatticeVector> probe_set(const Fan& f) {
  const std::size_t n = f.rank();
  std::vector<LatticeVector> probes;
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    LatticeVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? 1 : -1;
    probes.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < f.num_rays(); ++i)
    for (std::size_t j = i + 1; j < f.num_rays(); ++j) {
      auto s = f.ray(i) + f.ray(j);
      if (!is_zero(s)) probes.push_back(std::move(s));
    }
  return probes;
}

/// True when the cones a and b meet in the face spanned by their common rays.
inline bool meet_in_common_face(const Fan& f, const Cone& a, const Cone& b) {
  const std::size_t n = f.rank();
  std::vector<std::size_t> only_a, only_b;
  for (auto r : a.rays)
    if (!b.contains(r)) only_a.push_back(r);
  for (auto r : b.rays)
    if (!a.contains(r)) only_b.push_back(r);
  if (only_a.empty() || only_b.empty()) return true;  // one is a face of the other
  // Variables: coefficients on a's rays, then on b's rays.
  // sum_a x_i u_i - sum_b y_j u_j = 0 and sum over non-shared = 1.
  const std::size_t k = a.dim() + b.dim();
  std::vector<RationalVector> rows(n + 1, RationalVector(k, Rational(0)));
  RationalVector rhs(n + 1, Rational(0));
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t c = 0; c < n; ++c) rows[c][i] = Rational(f.ray(a.rays[i])[c]);
    if (!b.contains(a.rays[i])) rows[n][i] = 1;
  }
  for (std::size_t j = 0; j < b.dim(); ++j) {
    for (std::size_t c = 0; c < n; ++c) rows[c][a.dim() + j] = Rational(-f.ray(b.rays[j])[c]);
    if (!a.contains(b.rays[j])) rows[n][a.dim() + j] = 1;
  }
  rhs[n] = 1;
  return !nonnegative_solution(rows, rhs).has_value();
}

}  // namespace detail

namespace detail {

inline void check_rays_and_cones(const Fan& f, ValidationReport& rep) {
  auto bad = [&](std::string kind, std::vector<std::size_t> cones, std::vector<std::size_t> rays, std::string msg) {
    rep.valid = false;
    rep.violations.push_back({std::move(kind), std::move(cones), std::move(rays), std::move(msg)});
  };
  const std::size_t n = f.rank();
  for (std::size_t i = 0; i < f.num_rays(); ++i) {
    const auto& u = f.ray(i);
    if (u.size() != n) {
      bad("ray_length", {}, {i}, "ray length differs from rank");
      continue;
    }
    if (is_zero(u)) bad("ray_zero", {}, {i}, "ray is zero");
    else if (!is_primitive(u)) bad("ray_not_primitive", {}, {i}, "ray not primitive");
    for (std::size_t j = 0; j < i; ++j)
      if (f.ray(j) == u) bad("duplicate_ray", {}, {j, i}, "rays coincide");
  }
  std::set<Cone> seen;
  for (std::size_t c = 0; c < f.max_cones().size(); ++c) {
    const Cone& cone = f.max_cones()[c];
    bool ok = true;
    for (auto r : cone.rays)
      if (r >= f.num_rays() || f.ray(r).size() != n) {
        bad("bad_ray_index", {c}, {r}, "cone refers to a missing ray");
        ok = false;
      }
    if (std::adjacent_find(cone.rays.begin(), cone.rays.end()) != cone.rays.end()) {
      bad("repeated_ray_in_cone", {c}, {}, "cone lists a ray twice");
      ok = false;
    }
    if (!ok) continue;
    if (cone.dim() > n || rank(f.generators(cone), n) != cone.dim())
      bad("cone_not_simplicial", {c}, cone.rays, "cone generators are linearly dependent");
    if (!seen.insert(cone).second) bad("duplicate_cone", {c}, cone.rays, "cone listed twice");
  }
  for (std::size_t a = 0; a < f.max_cones().size(); ++a)
    for (std::size_t b = 0; b < f.max_cones().size(); ++b)
      if (a != b && f.max_cones()[a] != f.max_cones()[b] && f.max_cones()[a].is_face_of(f.max_cones()[b]))
        bad("cone_not_maximal", {a, b}, {}, "listed cone is a face of another listed cone");
}

}  // namespace detail

/// Full check with pairwise face-compatibility by exact linear programming.
/// Intended as a reference; validate() uses a faster route for complete fans.
inline ValidationReport validate_exhaustive(const Fan& f);

/// True iff the (already well-formed) cones cover R^n: pure of dimension n,
/// every facet shared by exactly two cones, and every probe in some cone.
inline bool is_complete(const Fan& f) {
  const std::size_t n = f.rank();
  if (f.max_cones().empty()) return n == 0;
  for (const auto& c : f.max_cones())
    if (c.dim() != n) return false;
  for (const auto& [facet, sides] : detail::facet_incidence(f))
    if (sides.size() != 2) return false;
  std::vector<detail::ConeChart> charts;
  for (const auto& c : f.max_cones()) charts.push_back(detail::chart(f.generators(c), n));
  std::size_t last_hit = 0;
  for (const auto& p : detail::probe_set(f)) {
    bool found = false;
    for (std::size_t k = 0; k < charts.size() && !found; ++k) {
      std::size_t idx = (last_hit + k) % charts.size();
      if (charts[idx].contains(p)) {
        found = true;
        last_hit = idx;
      }
    }
    if (!found) return false;
  }
  return true;
}

namespace detail {

/// For a pure n-dimensional fan in which every facet has two sides: the cones
/// form a proper complete fan iff across every facet the two opposite rays lie
/// strictly on opposite sides, and a generic interior point is covered once.
inline bool complete_fast_path(const Fan& f) {
  const std::size_t n = f.rank();
  for (const auto& [facet, sides] : facet_incidence(f)) {
    auto gens = f.generators(facet);
    auto normal = integer_kernel(IntegerMatrix::from_rows(gens, n));
    if (normal.size() != 1) return false;
    Integer s0 = dot(normal[0], f.ray(sides[0].second));
    Integer s1 = dot(normal[0], f.ray(sides[1].second));
    if (s0 == 0 || s1 == 0 || (s0 > 0) == (s1 > 0)) return false;
  }
  const Cone& first = f.max_cones().front();
  LatticeVector interior(n, Integer(0));
  for (std::size_t i = 0; i < first.dim(); ++i) interior = interior + scaled(f.ray(first.rays[i]), Integer(i + 1));
  std::size_t hits = 0;
  for (const auto& c : f.max_cones()) {
    if (chart(f.generators(c), n).contains(interior)) ++hits;
    if (hits > 1) return false;
  }
  return hits == 1;
}

inline void check_pairwise(const Fan& f, ValidationReport& rep) {
  const auto& cones = f.max_cones();
  for (std::size_t a = 0; a < cones.size(); ++a)
    for (std::size_t b = a + 1; b < cones.size(); ++b)
      if (!meet_in_common_face(f, cones[a], cones[b])) {
        rep.valid = false;
        rep.violations.push_back({"cones_overlap", {a, b}, {}, "cones do not meet in a common face"});
      }
}

}  // namespace detail

/// Checks the fan axioms and reports completeness.
inline ValidationReport validate(const Fan& f) {
  ValidationReport rep;
  detail::check_rays_and_cones(f, rep);
  if (!rep.valid) return rep;
  bool pure = !f.max_cones().empty() &&
              std::all_of(f.max_cones().begin(), f.max_cones().end(), [&](const Cone& c) { return c.dim() == f.rank(); });
  bool closed = pure;
  if (pure)
    for (const auto& [facet, sides] : detail::facet_incidence(f))
      if (sides.size() != 2) closed = false;
  if (closed && detail::complete_fast_path(f)) {
    rep.complete = is_complete(f);
    if (rep.complete) return rep;
  }
  detail::check_pairwise(f, rep);
  if (rep.valid) rep.complete = pure && is_complete(f);
  return rep;
}

inline ValidationReport validate_exhaustive(const Fan& f) {
  ValidationReport rep;
  detail::check_rays_and_cones(f, rep);
  if (!rep.valid) return rep;
  detail::check_pairwise(f, rep);
  if (rep.valid) rep.complete = is_complete(f);
  return rep;
}

/// Codimension-one cone of a complete simplicial fan with its two sides.
struct Wall {
  Cone cone;
  std::array<std::size_t, 2> sides{};  // maximal cone indices
  std::array<std::size_t, 2> outer{};  // ray of each side not in the wall

  friend bool operator==(const Wall&, const Wall&) = default;
};

/// Every wall, sorted lexicographically by its ray indices.
inline std::vector<Wall> walls(const Fan& f) {
  std::vector<Wall> out;
  for (const auto& [facet, sides] : detail::facet_incidence(f)) {
    if (sides.size() != 2 || facet.dim() + 1 != f.rank()) throw Error("fan not complete or malformed");
    out.push_back({facet, {sides[0].first, sides[1].first}, {sides[0].second, sides[1].second}});
  }
  return out;  // std::map iteration order is already lexicographic
}

/// Indices of the maximal cones containing v.
inline std::vector<std::size_t> cones_containing(const Fan& f, const LatticeVector& v) {
  std::vector<std::size_t> hits;
  for (std::size_t c = 0; c < f.max_cones().size(); ++c) {
    auto lam = span_coordinates(f.generators(f.max_cones()[c]), v);
    if (lam && std::all_of(lam->begin(), lam->end(), [](const Rational& q) { return q >= 0; })) hits.push_back(c);
  }
  return hits;
}

/// Star subdivision at the primitive vector v.  The new ray is appended;
/// untouched cones keep their order and come first.
inline Fan stellar_subdivision(const Fan& f, const LatticeVector& v) {
  if (v.size() != f.rank()) throw Error("vector length differs from rank");
  if (is_zero(v) || !is_primitive(v)) throw Error("subdivision vector not primitive");
  if (f.find_ray(v)) throw Error("vector is already a ray");
  const std::size_t fresh = f.num_rays();
  std::vector<Cone> kept, added;
  bool inside = false;
  for (const auto& c : f.max_cones()) {
    auto gens = f.generators(c);
    auto lam = span_coordinates(gens, v);
    if (!lam || std::any_of(lam->begin(), lam->end(), [](const Rational& q) { return q < 0; })) {
      kept.push_back(c);
      continue;
    }
    inside = true;
    for (std::size_t i = 0; i < c.dim(); ++i)
      if ((*lam)[i] > 0) added.push_back(c.without(c.rays[i]).with(fresh));
  }
  if (!inside) throw Error("vector outside support");
  auto rays = f.rays();
  rays.push_back(v);
  kept.insert(kept.end(), added.begin(), added.end());
  return Fan(f.rank(), std::move(rays), std::move(kept));
}

/// #rays - rank for a complete simplicial fan.
inline std::size_t picard_number(const Fan& f) {
  if (!is_complete(f)) throw Error("fan not complete");
  return f.num_rays() - f.rank();
}

}  // namespace toric
