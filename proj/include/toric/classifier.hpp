#pragma once

// Checks of the Picard number two and three classification statements on
// explicit fans: the admissible weights of the blown-up weighted projective
// spaces, the non-Gorenstein-target fivefold, the weight divisibility
// criteria and the structure of Picard number three examples.

#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "toric/builders.hpp"
#include "toric/fan.hpp"
#include "toric/mori.hpp"
#include "toric/singularity.hpp"

namespace toric {

struct Check {
  std::string name;
  bool pass = false;
  std::string witness;
};

struct CheckReport {
  std::vector<Check> checks;

  void add(std::string name, bool pass, std::string witness = {}) {
    checks.push_back({std::move(name), pass, std::move(witness)});
  }
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const Check& at(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return c;
    throw Error("no check named " + name);
  }
};

template <class T>
std::string str(const T& x) {
  std::ostringstream os;
  os << std::boolalpha << x;
  return os.str();
}

/// Pairs (a,b) for which Bl_A P(1^{n-1}, a, b) is a Gorenstein Fano variety
/// with isolated canonical singularities; (1,1) stands for P^n.
inline std::vector<std::pair<long, long>> admissible_weights(long n) {
  if (n < 3) throw Error("dimension must be at least 3");
  std::vector<std::pair<long, long>> out{{1, 1}};
  for (long a = 1; a <= n; ++a)
    for (long b = a + 1; b <= n; ++b)
      if (std::gcd(a, b) == 1 && (n - 1 + b) % a == 0 && (n - 1 + a) % b == 0) out.emplace_back(a, b);
  if (n % 2 == 0) out.emplace_back(2, n + 1);
  std::sort(out.begin(), out.end());
  return out;
}

/// Ray 0 is (-a,-b,-1,...,-1), rays 1..n are e_1..e_n and ray n+1 is
/// u_E = e_1 + e_2.
inline Fan build_theoremD_X(long n, long a, long b) {
  if (n < 3 || a < 1 || b < 1) throw Error("need n >= 3 and positive weights");
  std::vector<Integer> w{1, a, b};
  for (long i = 0; i < n - 2; ++i) w.emplace_back(1);
  Fan y = wps_fan(WeightVector(w));
  return stellar_subdivision(y, unit_vector(std::size_t(n), 0) + unit_vector(std::size_t(n), 1));
}

struct TheoremDReport {
  long n = 0, a = 0, b = 0;
  CheckReport report;
  std::optional<Rational> second_ray_degree;
};

inline TheoremDReport verify_theoremD_case(long n, long a, long b) {
  TheoremDReport out{n, a, b, {}, std::nullopt};
  CheckReport& r = out.report;
  Fan x = build_theoremD_X(n, a, b);
  const std::size_t ue = std::size_t(n) + 1;

  auto val = validate(x);
  r.add("simplicial", val.valid && val.complete, val.valid ? "" : val.violations.front().message);
  auto gd = gorenstein_data(x);
  r.add("gorenstein", gd && gd->index == 1, gd ? "index " + str(gd->index) : "not Q-Gorenstein");
  const auto infos = wall_infos(x);
  bool fano = true;
  for (const auto& w : infos)
    if (divisor_dot_curve(anticanonical_divisor(x), w.curve) <= 0) fano = false;
  r.add("fano", fano);
  auto sing = singularity_report(x);
  r.add("canonical", sing.canonical());
  r.add("isolated_sing", sing.isolated, "sing locus dim " + std::to_string(sing.sing_locus_dim));

  // Exceptional ray: u_1 + u_2 - u_E = 0, extremal and divisorial.
  auto rays = mori_rays(x);
  bool shape = false;
  std::vector<const MoriRay*> others;
  for (const auto& ray : rays) {
    auto d = classify_ray(x, ray);
    const auto& rel = d.relation;
    bool three_term = d.kind == ContractionKind::divisorial && d.exceptional_ray == ue && rel.coefficient_of(1) == 1 &&
                 rel.coefficient_of(2) == 1 && rel.coefficient_of(ue) == -1;
    Integer nonzero = 0;
    for (const auto& c : rel.coefficients) nonzero += c != 0;
    if (three_term && nonzero == 3) shape = true;
    else others.push_back(&ray);
  }
  r.add("wall_relation_shape", shape, std::to_string(rays.size()) + " extremal rays");

  Rational expected(n - 1 + a, b);
  expected.canonicalize();
  bool degree_ok = false;
  std::string witness = "expected " + str(expected);
  if (others.size() == 1) {
    Rational k = divisor_dot_curve(anticanonical_divisor(x), others.front()->curve);
    out.second_ray_degree = k;
    degree_ok = k == expected && is_integral(k) && k > 0;
    witness += ", found " + str(k);
  } else {
    witness += ", " + std::to_string(others.size()) + " other extremal rays";
  }
  r.add("second_ray_degree", degree_ok, witness);

  std::size_t d1 = n1_dim_of_divisor(infos, 1), d2 = n1_dim_of_divisor(infos, 2);
  r.add("divisor_n1_dims", d1 == 1 && d2 == 1, std::to_string(d1) + "," + std::to_string(d2));
  return out;
}

/// Rays: e_1..e_5 are 1..5, u_6 = (-1,-1,-1,-2,-3) is 0, u_E = (-1,-1,-1,-2,-2) is 6.
inline Fan example_fivefold() {
  return stellar_subdivision(wps_fan({1, 1, 1, 1, 2, 3}), make_vector({-1, -1, -1, -2, -2}));
}

inline CheckReport verify_example_fivefold() {
  CheckReport r;
  Fan x = example_fivefold();
  const std::size_t u6 = 0, e5 = 5, ue = 6;

  auto val = validate(x);
  bool gf = val.valid && val.complete && is_gorenstein_fano(x);
  r.add("q_factorial_gorenstein_fano", gf);
  auto sing = singularity_report(x);
  r.add("terminal", sing.terminal());
  std::vector<Cone> stated{Cone{1, 2, 3, ue}, Cone{u6, 1, 2, 3, 4}};
  std::sort(stated.begin(), stated.end());
  std::ostringstream cones;
  for (const auto& c : sing.minimal_singular) cones << c << ' ';
  r.add("singular_locus", sing.minimal_singular == stated && sing.sing_locus_dim == 1,
        cones.str() + "dim " + std::to_string(sing.sing_locus_dim));

  // e_5 - u_E + u_6 = 0 gives the divisorial ray onto V(e_5, u_6).
  std::optional<DivisorialContraction> contraction;
  Rational minus_k = 0, e_dot = 0;
  for (const auto& ray : mori_rays(x)) {
    auto d = classify_ray(x, ray);
    const auto& rel = d.relation;
    if (d.kind != ContractionKind::divisorial || d.exceptional_ray != ue) continue;
    if (rel.coefficient_of(e5) != 1 || rel.coefficient_of(u6) != 1 || rel.coefficient_of(ue) != -1) continue;
    contraction = contract_divisorial(x, ray);
    minus_k = divisor_dot_curve(anticanonical_divisor(x), ray.curve);
    e_dot = ray.curve.pairing[ue];
  }
  bool onto = contraction && contraction->image_cone == Cone{u6, e5} && minus_k == 1 && e_dot == -1;
  r.add("divisorial_contraction", onto, "-K.C = " + str(minus_k) + ", E.C = " + str(e_dot));
  r.add("exceptional_not_cartier", !is_cartier(x, prime_divisor(x, ue)),
        "Cartier index " + str(cartier_index(x, prime_divisor(x, ue))));
  bool target_ok = false;
  std::string witness = "no contraction";
  if (contraction) {
    Integer idx = gorenstein_index(contraction->target);
    target_ok = same_fan(contraction->target, wps_fan({1, 1, 1, 1, 2, 3})) && idx != 1;
    witness = "Gorenstein index " + str(idx) + ", h = 9";
  }
  r.add("target_wps_not_gorenstein", target_ok, witness);
  return r;
}

struct WeightCriteria {
  CheckReport report;
  bool arithmetic_gorenstein_fano = false;
  bool arithmetic_terminal = false;
  bool gorenstein = false;
  bool fano = false;
  bool terminal = false;
  Fan fan;
};

/// Blow-up of P(λ) along V(u_i, u_j) compared with the divisibility criteria
/// λ_i | h, λ_j | h, λ_k | h - λ_i, λ_k | h - λ_j, and the sufficient
/// terminality condition that all those quotients are at least 3.
inline WeightCriteria verify_weight_criteria(const WeightVector& w, std::size_t i, std::size_t j) {
  if (w.size() < 3 || w[0] != 1) throw Error("first weight must be 1");
  if (i == j || i >= w.size() || j >= w.size()) throw Error("bad ray indices");
  Fan y = wps_fan(w);
  LatticeVector ue = y.ray(i) + y.ray(j);
  if (!is_primitive(ue)) throw Error("u_i + u_j not primitive");
  WeightCriteria out;
  out.fan = stellar_subdivision(y, ue);

  const Integer h = w.h();
  std::vector<Integer> num{h, h}, den{w[i], w[j]};
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k == i || k == j) continue;
    num.insert(num.end(), {h - w[i], h - w[j]});
    den.insert(den.end(), {w[k], w[k]});
  }
  out.arithmetic_gorenstein_fano = true;
  out.arithmetic_terminal = true;
  for (std::size_t t = 0; t < num.size(); ++t) {
    if (!divides(den[t], num[t])) out.arithmetic_gorenstein_fano = false;
    if (num[t] < 3 * den[t]) out.arithmetic_terminal = false;
  }
  out.arithmetic_terminal = out.arithmetic_terminal && out.arithmetic_gorenstein_fano;

  out.gorenstein = gorenstein_index(out.fan) == 1;
  out.fano = is_fano(out.fan);
  out.terminal = singularity_report(out.fan).terminal();
  const bool direct = out.gorenstein && out.fano;
  out.report.add("gorenstein_fano_iff", out.arithmetic_gorenstein_fano == direct,
                 "arithmetic " + str(out.arithmetic_gorenstein_fano) + ", gorenstein " + str(out.gorenstein) +
                     ", fano " + str(out.fano));
  out.report.add("terminal_implication", !out.arithmetic_terminal || out.terminal,
                 "arithmetic " + str(out.arithmetic_terminal) + ", terminal " + str(out.terminal));
  return out;
}

/// One factorisation X -> Y -> Z of a Picard number three fan.
struct Picard3Diagram {
  MoriRay divisorial_ray;
  std::size_t exceptional_ray = 0;
  Fan y;
  Cone center;                 // cone of Y whose orbit closure is A
  Fan z;
  IntegerMatrix projection;    // N -> N_Z
  bool bundle = false;
  Integer twist = 0;           // a with Y = P_Z(O + O(a))
  Integer fano_index_z = 0;
  bool center_in_section = false;
  bool positive_on_divisor = false;
};

struct Picard3Report {
  bool hypothesis = false;
  std::string failure;
  std::optional<std::size_t> divisor_ray;  // ray of D with dim N_1(D,X) = 1
  std::vector<Picard3Diagram> diagrams;   // first is the reported one; the rest are alternates
  bool commutes = false;                  // all diagrams end at the same Z by the same projection
  bool smooth = false;                    // X, Y and Z all smooth
};

namespace detail {

/// Integer functional m with <m, v> = 1 for a primitive v.
inline LatticeVector dual_unit(const LatticeVector& v) {
  IntegerMatrix row(1, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) row(0, i) = v[i];
  SmithForm s = smith_normal_form(row);
  if (s.diagonal(0, 0) != 1) throw Error("vector not primitive");
  LatticeVector m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m[i] = s.left(0, 0) * s.right(i, 0);
  return m;
}

/// Twist a >= 0 of a P^1-bundle Y = P_Z(O + O(a)) over a Picard number one base.
inline Integer bundle_twist(const Fan& y, const FiberContraction& fc) {
  LatticeVector phi = dual_unit(y.ray(fc.contracted[0]));
  Divisor d(fc.base.num_rays(), Integer(0));
  for (std::size_t i = 0; i < y.num_rays(); ++i)
    if (fc.ray_image[i]) d[*fc.ray_image[i]] = dot(phi, y.ray(i));
  auto [h, g] = picard_generator(fc.base);
  Rational deg = divisor_dot_curve(fc.base, d, walls(fc.base).front()) / g;
  if (!is_integral(deg)) throw Error("twist not integral");
  return abs(deg.get_num());
}

}  // namespace detail

inline Picard3Report analyze_picard3(const Fan& x) {
  Picard3Report rep;
  auto fail = [&](std::string why) {
    rep.failure = std::move(why);
    return rep;
  };
  auto val = validate(x);
  if (!val.valid || !val.complete) return fail("fan not complete and simplicial");
  if (picard_number(x) != 3) return fail("Picard number is not 3");
  if (!is_gorenstein_fano(x)) return fail("not Gorenstein Fano");
  const auto infos = wall_infos(x);
  for (std::size_t r = 0; r < x.num_rays() && !rep.divisor_ray; ++r)
    if (n1_dim_of_divisor(infos, r) == 1) rep.divisor_ray = r;
  if (!rep.divisor_ray) return fail("no invariant divisor with one-dimensional N_1(D,X)");
  rep.hypothesis = true;

  // Rays positive on D give the reported diagram; the other divisorial rays
  // give the alternate factorisations.
  auto rays = mori_rays(x);
  std::stable_partition(rays.begin(), rays.end(),
                        [&](const MoriRay& r) { return r.curve.pairing[*rep.divisor_ray] > 0; });
  for (const auto& ray : rays) {
    auto d = classify_ray(x, ray);
    if (d.kind != ContractionKind::divisorial) continue;
    Integer nonzero = 0;
    for (const auto& c : d.relation.coefficients) nonzero += c != 0;
    if (nonzero != 3 || ray.curve.pairing[*d.exceptional_ray] != -1) continue;
    if (divisor_dot_curve(anticanonical_divisor(x), ray.curve) != 1) continue;
    auto dc = contract_divisorial(x, ray);
    for (const auto& yr : mori_rays(dc.target)) {
      if (classify_ray(dc.target, yr).kind != ContractionKind::fiber) continue;
      auto fc = contract_fiber_type(dc.target, yr.curve);
      if (fc.base.rank() + 1 != x.rank()) continue;
      Picard3Diagram diag;
      diag.divisorial_ray = ray;
      diag.positive_on_divisor = ray.curve.pairing[*rep.divisor_ray] > 0;
      diag.exceptional_ray = dc.dropped_ray;
      diag.y = dc.target;
      diag.center = dc.image_cone;
      diag.z = fc.base;
      diag.projection = fc.projection;
      diag.bundle = check_p1_bundle(dc.target, fc).is_bundle;
      if (diag.bundle && is_gorenstein_fano(fc.base)) {
        diag.twist = detail::bundle_twist(dc.target, fc);
        diag.fano_index_z = fano_index(fc.base);
      }
      for (auto s : fc.contracted)
        if (dc.image_cone.contains(s)) diag.center_in_section = true;
      rep.diagrams.push_back(std::move(diag));
    }
  }
  if (rep.diagrams.empty() || !rep.diagrams.front().positive_on_divisor)
    return fail("no divisorial-then-fiber factorisation through a ray positive on D");
  rep.commutes = true;
  for (const auto& dg : rep.diagrams)
    if (!same_fan(dg.z, rep.diagrams.front().z) || dg.projection != rep.diagrams.front().projection)
      rep.commutes = false;
  const auto& first = rep.diagrams.front();
  rep.smooth = singularity_report(x).smooth() && singularity_report(first.y).smooth() &&
               singularity_report(first.z).smooth();
  return rep;
}

}  // namespace toric
