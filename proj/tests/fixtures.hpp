#pragma once

// Small hand-written fans shared by the test executables.

#include <random>

#include "toric/fan.hpp"

namespace fixtures {

using namespace toric;

inline Fan projective_space(std::size_t n) {
  std::vector<LatticeVector> rays;
  for (std::size_t i = 0; i < n; ++i) rays.push_back(unit_vector(n, i));
  rays.push_back(LatticeVector(n, Integer(-1)));
  std::vector<Cone> cones;
  for (std::size_t skip = 0; skip <= n; ++skip) {
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != skip) c.push_back(i);
    cones.emplace_back(c);
  }
  return Fan(n, rays, cones);
}

inline Fan p2() {
  return Fan(2, {make_vector({1, 0}), make_vector({0, 1}), make_vector({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}});
}

inline Fan p1xp1() {
  return Fan(2, {make_vector({1, 0}), make_vector({0, 1}), make_vector({-1, 0}), make_vector({0, -1})},
             {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

/// Bl_pt P^2: rays e1, e2, -e1-e2, e1+e2.
inline Fan blowup_p2() {
  return Fan(2, {make_vector({1, 0}), make_vector({0, 1}), make_vector({-1, -1}), make_vector({1, 1})},
             {{1, 2}, {0, 2}, {0, 3}, {1, 3}});
}

/// Hirzebruch surface F_a with rays (1,0),(-1,a),(0,1),(0,-1).
inline Fan hirzebruch(long a) {
  return Fan(2, {make_vector({1, 0}), make_vector({-1, a}), make_vector({0, 1}), make_vector({0, -1})},
             {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

inline Fan p1xp1xp1() {
  std::vector<LatticeVector> rays;
  for (std::size_t i = 0; i < 3; ++i) {
    rays.push_back(unit_vector(3, i));
    rays.push_back(-unit_vector(3, i));
  }
  std::vector<Cone> cones;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t c = 0; c < 2; ++c) cones.push_back(Cone{a, 2 + b, 4 + c});
  return Fan(3, rays, cones);
}

/// Complete simplicial fan obtained from P^n by `steps` random star
/// subdivisions at sums of two or three rays of a random maximal cone.
inline Fan random_subdivided_fan(std::mt19937& rng, std::size_t n, int steps) {
  Fan f = projective_space(n);
  for (int s = 0; s < steps; ++s) {
    const Cone& c = f.max_cones()[rng() % f.max_cones().size()];
    std::size_t k = 2 + rng() % std::min<std::size_t>(2, n - 1);
    std::vector<std::size_t> pick = c.rays;
    std::shuffle(pick.begin(), pick.end(), rng);
    LatticeVector v(n, Integer(0));
    for (std::size_t i = 0; i < k; ++i) v = v + scaled(f.ray(pick[i]), Integer(1 + rng() % 2));
    v = primitive_part(v).first;
    if (f.find_ray(v)) continue;
    f = stellar_subdivision(f, v);
  }
  return f;
}

}  // namespace fixtures
