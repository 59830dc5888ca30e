#pragma once

// Intersection numbers with invariant curves, extremal rays of the Mori cone
// and the fan-level constructions of their contractions.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "toric/fan.hpp"
#include "toric/lp.hpp"
#include "toric/singularity.hpp"

namespace toric {

/// Primitive relation Σ b_i u_i = 0 among the rays of the two cones at a wall.
/// `rays` lists the wall's rays (in wall order) followed by the two outer rays.
struct WallRelation {
  Wall wall;
  std::vector<std::size_t> rays;
  std::vector<Integer> coefficients;
  std::size_t alpha = 0;  // negative inner coefficients
  std::size_t zeros = 0;  // vanishing inner coefficients
  std::size_t beta() const { return alpha + zeros; }

  Integer coefficient_of(std::size_t ray) const {
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (rays[i] == ray) return coefficients[i];
    return 0;
  }
};

inline WallRelation wall_relation(const Fan& f, const Wall& w) {
  WallRelation rel;
  rel.wall = w;
  rel.rays = w.cone.rays;
  rel.rays.push_back(w.outer[0]);
  rel.rays.push_back(w.outer[1]);
  const std::size_t n = f.rank();
  IntegerMatrix cols(n, rel.rays.size());
  for (std::size_t j = 0; j < rel.rays.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) cols(i, j) = f.ray(rel.rays[j])[i];
  auto ker = integer_kernel(cols);
  if (ker.size() != 1) throw Error("wall cones are not simplicial");
  rel.coefficients = ker.front();
  const std::size_t k = rel.rays.size();
  if (rel.coefficients[k - 1] < 0)
    for (auto& b : rel.coefficients) b = -b;
  if (rel.coefficients[k - 1] <= 0 || rel.coefficients[k - 2] <= 0) throw Error("outer rays on the same side of a wall");
  for (std::size_t i = 0; i + 2 < k; ++i) {
    if (rel.coefficients[i] < 0) ++rel.alpha;
    if (rel.coefficients[i] == 0) ++rel.zeros;
  }
  return rel;
}

/// Intersection numbers V(ρ)·C for the invariant curve C of a wall.
struct CurveClass {
  std::vector<Rational> pairing;  // indexed by ray

  /// Positive multiple of one another.
  bool proportional_to(const CurveClass& o) const {
    std::optional<Rational> ratio;
    for (std::size_t i = 0; i < pairing.size(); ++i) {
      if ((pairing[i] == 0) != (o.pairing[i] == 0)) return false;
      if (pairing[i] == 0) continue;
      Rational r = pairing[i] / o.pairing[i];
      if (r <= 0 || (ratio && *ratio != r)) return false;
      ratio = r;
    }
    return true;
  }
};

inline CurveClass curve_class(const Fan& f, const WallRelation& rel) {
  const Wall& w = rel.wall;
  const Integer mult_wall = multiplicity(f, w.cone);
  const Integer mult_side = multiplicity(f, f.max_cones()[w.sides[0]]);
  const Integer& b_outer = rel.coefficients[rel.rays.size() - 2];
  Rational scale(mult_wall, b_outer * mult_side);
  scale.canonicalize();
  CurveClass c{std::vector<Rational>(f.num_rays(), Rational(0))};
  for (std::size_t i = 0; i < rel.rays.size(); ++i) c.pairing[rel.rays[i]] = scale * rel.coefficients[i];
  return c;
}

inline CurveClass curve_class(const Fan& f, const Wall& w) { return curve_class(f, wall_relation(f, w)); }

inline Rational divisor_dot_curve(const Divisor& d, const CurveClass& c) {
  Rational s = 0;
  for (std::size_t i = 0; i < d.size(); ++i) s += c.pairing[i] * d[i];
  return s;
}

inline Rational divisor_dot_curve(const Fan& f, const Divisor& d, const Wall& w) {
  return divisor_dot_curve(d, curve_class(f, w));
}

/// Wall, relation and curve class for every wall of a complete simplicial fan.
struct WallInfo {
  Wall wall;
  WallRelation relation;
  CurveClass curve;
};

inline std::vector<WallInfo> wall_infos(const Fan& f) {
  std::vector<WallInfo> out;
  for (auto& w : walls(f)) {
    auto rel = wall_relation(f, w);
    auto cc = curve_class(f, rel);
    out.push_back({w, std::move(rel), std::move(cc)});
  }
  return out;
}

/// An extremal ray of NE(X): its numerical class and the walls realising it.
struct MoriRay {
  CurveClass curve;
  std::vector<std::size_t> walls;  // indices into wall_infos(), ascending
  std::size_t representative = 0;  // first of `walls`
};

struct NumericalClasses {
  std::vector<WallInfo> walls;
  std::vector<MoriRay> classes;  // every proportionality class, in wall order
  std::vector<bool> extremal;
};

/// Groups the wall curves by proportional class and decides extremality of
/// each class with an exact feasibility problem.
inline NumericalClasses numerical_classes(const Fan& f) {
  NumericalClasses nc;
  nc.walls = wall_infos(f);
  for (std::size_t i = 0; i < nc.walls.size(); ++i) {
    bool placed = false;
    for (auto& cl : nc.classes)
      if (nc.walls[i].curve.proportional_to(cl.curve)) {
        cl.walls.push_back(i);
        placed = true;
        break;
      }
    if (!placed) nc.classes.push_back({nc.walls[i].curve, {i}, i});
  }
  const std::size_t rays = f.num_rays();
  for (std::size_t c = 0; c < nc.classes.size(); ++c) {
    std::vector<RationalVector> rows(rays);
    for (std::size_t o = 0; o < nc.classes.size(); ++o) {
      if (o == c) continue;
      for (std::size_t r = 0; r < rays; ++r) rows[r].push_back(nc.classes[o].curve.pairing[r]);
    }
    bool extremal;
    if (nc.classes.size() == 1) extremal = true;
    else extremal = !nonnegative_solution(rows, nc.classes[c].curve.pairing).has_value();
    nc.extremal.push_back(extremal);
  }
  return nc;
}

/// One entry per extremal ray, ordered by the first wall of the class.
inline std::vector<MoriRay> mori_rays(const Fan& f) {
  auto nc = numerical_classes(f);
  std::vector<MoriRay> out;
  for (std::size_t c = 0; c < nc.classes.size(); ++c)
    if (nc.extremal[c]) out.push_back(nc.classes[c]);
  return out;
}

enum class ContractionKind { fiber, divisorial, small };

inline std::string to_string(ContractionKind k) {
  switch (k) {
    case ContractionKind::fiber: return "fiber";
    case ContractionKind::divisorial: return "divisorial";
    case ContractionKind::small: return "small";
  }
  return "?";
}

struct ContractionDescriptor {
  ContractionKind kind = ContractionKind::fiber;
  std::size_t locus_dim = 0;  // n - alpha
  std::size_t image_dim = 0;  // dimension of the image of the locus
  std::optional<std::size_t> exceptional_ray;
  WallRelation relation;
};

inline ContractionDescriptor classify_relation(const Fan& f, const WallRelation& rel) {
  ContractionDescriptor d;
  d.relation = rel;
  d.locus_dim = f.rank() - rel.alpha;
  d.image_dim = rel.beta() - rel.alpha;
  if (rel.alpha == 0) d.kind = ContractionKind::fiber;
  else if (rel.alpha == 1) {
    d.kind = ContractionKind::divisorial;
    for (std::size_t i = 0; i + 2 < rel.rays.size(); ++i)
      if (rel.coefficients[i] < 0) d.exceptional_ray = rel.rays[i];
  } else d.kind = ContractionKind::small;
  return d;
}

inline ContractionDescriptor classify_ray(const Fan& f, const MoriRay& ray) {
  return classify_relation(f, wall_relation(f, walls(f).at(ray.representative)));
}

/// Rays with positive, negative and zero intersection against the class.
inline std::vector<std::size_t> rays_with_sign(const CurveClass& c, int sign) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < c.pairing.size(); ++i)
    if (sgn(c.pairing[i]) == sign) out.push_back(i);
  return out;
}

struct DivisorialContraction {
  Fan target;                 // rays in source order with the exceptional one removed
  std::size_t dropped_ray = 0;
  Cone image_cone;            // cone of the target whose orbit closure is the image of E
};

/// Removes the exceptional ray u of a divisorial extremal class: every maximal
/// cone σ ∋ u is replaced by (σ \ u) ∪ S, S the rays meeting the class
/// positively.  The result must subdivide back to the input at u.
inline DivisorialContraction contract_divisorial(const Fan& f, const MoriRay& ray) {
  static const char* bad_shape = "not a toric divisorial contraction of expected shape";
  auto negative = rays_with_sign(ray.curve, -1);
  if (negative.size() != 1) throw Error(bad_shape);
  const std::size_t e = negative.front();
  const auto positive = rays_with_sign(ray.curve, 1);
  auto reindex = [&](std::size_t i) { return i < e ? i : i - 1; };

  std::vector<Cone> cones;
  std::set<Cone> seen;
  for (const auto& c : f.max_cones()) {
    Cone merged = c;
    if (c.contains(e)) {
      merged = c.without(e);
      for (auto p : positive)
        if (!merged.contains(p)) merged = merged.with(p);
      if (merged.dim() != f.rank()) throw Error(bad_shape);
    }
    std::vector<std::size_t> r;
    for (auto i : merged.rays) r.push_back(reindex(i));
    Cone out(std::move(r));
    if (seen.insert(out).second) cones.push_back(out);
  }
  std::vector<LatticeVector> rays;
  for (std::size_t i = 0; i < f.num_rays(); ++i)
    if (i != e) rays.push_back(f.ray(i));
  DivisorialContraction res{Fan(f.rank(), std::move(rays), std::move(cones)), e, Cone{}};
  std::vector<std::size_t> img;
  for (auto p : positive) img.push_back(reindex(p));
  res.image_cone = Cone(std::move(img));

  auto rep = validate(res.target);
  if (!rep.valid || !rep.complete) throw Error(bad_shape);
  Fan back;
  try {
    back = stellar_subdivision(res.target, f.ray(e));
  } catch (const Error&) {
    throw Error(bad_shape);
  }
  if (!same_fan(back, f)) throw Error(bad_shape);
  return res;
}

struct FiberContraction {
  Fan base;                                       // fan in the quotient lattice
  IntegerMatrix projection;                       // (n - r) x n, kernel = contracted sublattice
  std::vector<std::optional<std::size_t>> ray_image;  // base ray of each source ray, none if contracted
  std::vector<Integer> image_content;             // k with projection(u) = k * (base ray)
  std::vector<std::size_t> contracted;            // rays spanning the fibre directions
};

/// Quotient by the saturated span of the rays meeting the class positively.
/// The projection is the Hermite basis of the annihilator of that span, so
/// equal contractions give identical base fans.
inline FiberContraction contract_fiber_type(const Fan& f, const CurveClass& curve) {
  static const char* not_fan = "contraction image not a fan";
  const std::size_t n = f.rank();
  FiberContraction res;
  res.contracted = rays_with_sign(curve, 1);
  if (!rays_with_sign(curve, -1).empty()) throw Error("class is not of fiber type");
  auto span = f.generators(Cone(res.contracted));
  std::size_t r = rank(span, n);
  const std::size_t q = n - r;
  IntegerMatrix proj(q, n);
  if (q > 0) {
    auto annihilator = integer_kernel(IntegerMatrix::from_rows(span, n));
    proj = hermite_normal_form(IntegerMatrix::from_rows(annihilator, n)).basis;
  }
  res.projection = proj;

  std::vector<LatticeVector> base_rays;
  res.ray_image.assign(f.num_rays(), std::nullopt);
  res.image_content.assign(f.num_rays(), Integer(0));
  for (std::size_t i = 0; i < f.num_rays(); ++i) {
    LatticeVector img = proj * f.ray(i);
    if (is_zero(img)) continue;
    auto [prim, k] = primitive_part(img);
    res.image_content[i] = k;
    auto it = std::find(base_rays.begin(), base_rays.end(), prim);
    if (it == base_rays.end()) {
      base_rays.push_back(prim);
      res.ray_image[i] = base_rays.size() - 1;
    } else {
      res.ray_image[i] = std::size_t(it - base_rays.begin());
    }
  }
  std::vector<Cone> cones;
  std::set<Cone> seen;
  for (const auto& c : f.max_cones()) {
    std::vector<std::size_t> img;
    for (auto i : c.rays)
      if (res.ray_image[i] && std::find(img.begin(), img.end(), *res.ray_image[i]) == img.end())
        img.push_back(*res.ray_image[i]);
    if (img.size() < q) continue;
    std::vector<LatticeVector> gens;
    for (auto j : img) gens.push_back(base_rays[j]);
    if (rank(gens, q) < q) continue;
    if (img.size() > q) throw Error(not_fan);
    Cone cone(std::move(img));
    if (seen.insert(cone).second) cones.push_back(cone);
  }
  if (q == 0) cones = {Cone{}};
  res.base = Fan(q, std::move(base_rays), std::move(cones));
  auto rep = validate(res.base);
  if (!rep.valid || !rep.complete) throw Error(not_fan);
  return res;
}

struct BundleCheck {
  bool is_bundle = false;
  std::vector<std::size_t> non_primitive;  // rays whose projection is not primitive
  std::vector<std::size_t> bad_cones;      // base cones not covered by exactly two source cones
};

/// P^1-bundle test for a fiber contraction with one-dimensional fibres.
inline BundleCheck check_p1_bundle(const Fan& f, const FiberContraction& fc) {
  BundleCheck res;
  if (fc.contracted.size() != 2 || !is_zero(f.ray(fc.contracted[0]) + f.ray(fc.contracted[1]))) return res;
  for (std::size_t i = 0; i < f.num_rays(); ++i)
    if (fc.ray_image[i] && fc.image_content[i] != 1) res.non_primitive.push_back(i);
  const std::size_t plus = fc.contracted[0], minus = fc.contracted[1];
  for (std::size_t b = 0; b < fc.base.max_cones().size(); ++b) {
    const Cone& target = fc.base.max_cones()[b];
    std::vector<Cone> over;
    for (const auto& c : f.max_cones()) {
      std::vector<std::size_t> img;
      bool ok = true;
      for (auto i : c.rays) {
        if (i == plus || i == minus) continue;
        if (!fc.ray_image[i]) ok = false;
        else img.push_back(*fc.ray_image[i]);
      }
      if (ok && Cone(img) == target && img.size() == target.dim()) over.push_back(c);
    }
    bool good = over.size() == 2 && over[0].without(plus).without(minus) == over[1].without(plus).without(minus) &&
                ((over[0].contains(plus) && over[1].contains(minus)) || (over[0].contains(minus) && over[1].contains(plus)));
    if (!good) res.bad_cones.push_back(b);
  }
  res.is_bundle = res.non_primitive.empty() && res.bad_cones.empty();
  return res;
}

/// Kleiman test over the wall curves: positive on every one.
inline bool is_ample(const Fan& f, const Divisor& d) {
  if (d.size() != f.num_rays()) throw Error("divisor length differs from ray count");
  local_data(f, d);  // throws when not Q-Cartier
  for (const auto& w : wall_infos(f))
    if (divisor_dot_curve(d, w.curve) <= 0) return false;
  return true;
}

inline bool is_fano(const Fan& f) { return is_ample(f, anticanonical_divisor(f)); }

inline bool is_gorenstein_fano(const Fan& f) { return gorenstein_index(f) == 1 && is_fano(f); }

/// Generators of the group of Cartier divisors inside the invariant Weil
/// divisors: on each maximal cone with Smith form U R V = D, the restricted
/// coefficients a satisfy (U a)_i = 0 mod d_i.
inline std::vector<Divisor> cartier_lattice(const Fan& f) {
  const std::size_t rays = f.num_rays();
  std::vector<LatticeVector> congruences;
  std::vector<Integer> moduli;
  for (const auto& c : f.max_cones()) {
    SmithForm s = smith_normal_form(IntegerMatrix::from_rows(f.generators(c), f.rank()));
    auto diag = s.nonzero_diagonal();
    for (std::size_t i = 0; i < diag.size(); ++i) {
      if (diag[i] == 1) continue;
      LatticeVector row(rays, Integer(0));
      for (std::size_t j = 0; j < c.dim(); ++j) row[c.rays[j]] = s.left(i, j);
      congruences.push_back(std::move(row));
      moduli.push_back(diag[i]);
    }
  }
  if (congruences.empty()) {
    std::vector<Divisor> all;
    for (std::size_t i = 0; i < rays; ++i) all.push_back(prime_divisor(f, i));
    return all;
  }
  // Kernel of [C | -diag(moduli)], projected onto the divisor coordinates.
  IntegerMatrix sys(congruences.size(), rays + congruences.size());
  for (std::size_t i = 0; i < congruences.size(); ++i) {
    for (std::size_t j = 0; j < rays; ++j) sys(i, j) = congruences[i][j];
    sys(i, rays + i) = -moduli[i];
  }
  std::vector<LatticeVector> projected;
  for (const auto& k : integer_kernel(sys)) projected.emplace_back(k.begin(), k.begin() + rays);
  auto h = hermite_normal_form(IntegerMatrix::from_rows(projected, rays));
  return h.basis.row_vectors();
}

namespace detail {

/// Positive generator of the subgroup of Q generated by the values.
inline Rational rational_gcd(const std::vector<Rational>& values) {
  Integer den = 1;
  for (const auto& v : values) den = lcm(den, v.get_den());
  Integer g = 0;
  for (const auto& v : values) g = gcd(g, Integer(v * den));
  Rational r(g, den);
  r.canonicalize();
  return r;
}

inline std::size_t require_picard_one(const Fan& f) {
  if (picard_number(f) != 1) throw Error("Fano index restricted to Picard number one");
  return 0;
}

}  // namespace detail

/// Ample Cartier generator H of Pic for Picard number one, with the degree of
/// H on the wall curve of the first wall.  A single prime divisor is used when
/// one has the minimal degree (the last such ray).
inline std::pair<Divisor, Rational> picard_generator(const Fan& f) {
  detail::require_picard_one(f);
  auto lattice = cartier_lattice(f);
  CurveClass c = curve_class(f, walls(f).front());
  std::vector<Rational> degrees;
  for (const auto& d : lattice) degrees.push_back(divisor_dot_curve(d, c));
  Rational g = detail::rational_gcd(degrees);
  for (std::size_t r = f.num_rays(); r-- > 0;) {
    Divisor d = prime_divisor(f, r);
    if (divisor_dot_curve(d, c) == g && is_cartier(f, d)) return {d, g};
  }
  // Extended gcd over the lattice generators.
  Divisor h(f.num_rays(), Integer(0));
  Rational acc = 0;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    // Combine acc and degrees[i] into their gcd.
    Integer den = lcm(acc.get_den(), degrees[i].get_den());
    Integer x = Integer(acc * den), y = Integer(degrees[i] * den);
    Integer gg, s, t;
    mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    for (std::size_t j = 0; j < h.size(); ++j) h[j] = s * h[j] + t * lattice[i][j];
    acc = Rational(gg, den);
    acc.canonicalize();
  }
  if (acc < 0) {
    for (auto& x : h) x = -x;
    acc = -acc;
  }
  return {h, acc};
}

/// Largest t with -K = t H, H Cartier, for Gorenstein Fano fans with ρ = 1.
inline Integer fano_index(const Fan& f) {
  detail::require_picard_one(f);
  auto [h, g] = picard_generator(f);
  CurveClass c = curve_class(f, walls(f).front());
  Rational t = divisor_dot_curve(anticanonical_divisor(f), c) / g;
  if (!is_integral(t)) throw Error("anticanonical divisor not Cartier");
  return t.get_num();
}

/// Dimension of the span of the classes of curves lying in V(ρ).
inline std::size_t n1_dim_of_divisor(const std::vector<WallInfo>& infos, std::size_t ray) {
  std::vector<RationalVector> rows;
  for (const auto& w : infos)
    if (w.wall.cone.contains(ray)) rows.push_back(w.curve.pairing);
  return rational_rank(rows);
}

inline std::size_t n1_dim_of_divisor(const Fan& f, std::size_t ray) { return n1_dim_of_divisor(wall_infos(f), ray); }

}  // namespace toric
