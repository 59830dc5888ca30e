#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "toric/lattice.hpp"

using namespace toric;

namespace {

IntegerMatrix to_matrix(const oracle::Mat& m) {
  IntegerMatrix r(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) r(i, j) = m[i][j];
  return r;
}

oracle::Mat random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  oracle::Mat m(rows, oracle::Vec(cols));
  for (auto& r : m)
    for (auto& x : r) x = d(rng);
  return m;
}

bool is_diagonal(const IntegerMatrix& d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  return true;
}

}  // namespace

TEST(SmithForm, TwoThreeBecomesOneSix) {
  auto s = smith_normal_form(IntegerMatrix::from_rows({{2, 0}, {0, 3}}));
  EXPECT_EQ(s.diagonal, IntegerMatrix::from_rows({{1, 0}, {0, 6}}));
}

TEST(SmithForm, IdentityIsFixed) {
  auto s = smith_normal_form(IntegerMatrix::identity(4));
  EXPECT_EQ(s.diagonal, IntegerMatrix::identity(4));
}

TEST(SmithForm, FakeProjectivePlaneRays) {
  auto s = smith_normal_form(IntegerMatrix::from_rows({{1, 1}, {1, -1}, {-3, -1}}));
  EXPECT_EQ(s.nonzero_diagonal(), (std::vector<Integer>{1, 2}));
}

TEST(SmithForm, RandomMatricesMatchMinorOracle) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    auto m = random_matrix(rng, rows, cols, -9, 9);
    if (trial % 5 == 0) m.back() = m.front();  // force rank deficiency sometimes
    IntegerMatrix a = to_matrix(m);
    SmithForm s = smith_normal_form(a);
    ASSERT_EQ(s.left * a * s.right, s.diagonal);
    ASSERT_TRUE(is_diagonal(s.diagonal));
    ASSERT_EQ(abs(determinant(s.left)), 1);
    ASSERT_EQ(abs(determinant(s.right)), 1);
    ASSERT_EQ(s.right * s.right_inverse, IntegerMatrix::identity(cols));
    auto diag = s.nonzero_diagonal();
    for (std::size_t i = 0; i + 1 < diag.size(); ++i) ASSERT_TRUE(divides(diag[i], diag[i + 1]));
    auto expected = oracle::invariant_factors_by_minors(m);
    ASSERT_EQ(diag.size(), expected.size());
    for (std::size_t i = 0; i < diag.size(); ++i) ASSERT_EQ(diag[i], expected[i]);
  }
}

TEST(Determinant, MatchesLeibniz) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 5;
    auto m = random_matrix(rng, n, n, -7, 7);
    ASSERT_EQ(determinant(to_matrix(m)), oracle::det_leibniz(m));
  }
}

TEST(HermiteForm, CanonicalUnderUnimodularRowOps) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    IntegerMatrix a = to_matrix(random_matrix(rng, rows, cols, -6, 6));
    IntegerMatrix b = a;
    for (int k = 0; k < 6; ++k) {
      std::size_t i = rng() % rows, j = rng() % rows;
      if (i != j) b.add_row(i, j, Integer(int(rng() % 5) - 2));
      else b.negate_row(i);
    }
    HermiteForm ha = hermite_normal_form(a), hb = hermite_normal_form(b);
    ASSERT_EQ(ha.basis, hb.basis);
    for (std::size_t r = 0; r < ha.pivots.size(); ++r) {
      Integer p = ha.basis(r, ha.pivots[r]);
      ASSERT_GT(p, 0);
      for (std::size_t above = 0; above < r; ++above) {
        ASSERT_GE(ha.basis(above, ha.pivots[r]), 0);
        ASSERT_LT(ha.basis(above, ha.pivots[r]), p);
      }
    }
    for (std::size_t i = 0; i < rows; ++i) ASSERT_TRUE(lattice_coordinates(ha, a.row(i)).has_value());
  }
}

TEST(Kernel, IsSaturatedAndAnnihilated) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    IntegerMatrix a = to_matrix(random_matrix(rng, 2, 4, -5, 5));
    auto ker = integer_kernel(a);
    ASSERT_EQ(ker.size() + rank(a), 4u);
    for (const auto& k : ker) ASSERT_TRUE(is_zero(a * k));
    if (!ker.empty()) {
      auto q = quotient_group(ker, 4);
      ASSERT_TRUE(q.invariant_factors.empty());
    }
  }
}

TEST(PrimitivePart, Examples) {
  auto [v, k] = primitive_part(make_vector({2, 4, 6}));
  EXPECT_EQ(v, make_vector({1, 2, 3}));
  EXPECT_EQ(k, 2);
  auto [w, j] = primitive_part(make_vector({0, -5}));
  EXPECT_EQ(w, make_vector({0, -1}));
  EXPECT_EQ(j, 5);
  auto [u, i] = primitive_part(make_vector({1, 0, 0}));
  EXPECT_EQ(u, make_vector({1, 0, 0}));
  EXPECT_EQ(i, 1);
  EXPECT_EQ(primitive_part(v).first, v);
}

TEST(PrimitivePart, ZeroThrows) {
  try {
    primitive_part(make_vector({0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "zero has no primitive part");
  }
}

TEST(QuotientGroup, Examples) {
  std::vector<LatticeVector> p2{make_vector({1, 0}), make_vector({0, 1}), make_vector({-1, -1})};
  EXPECT_TRUE(quotient_group(p2, 2).is_trivial());
  std::vector<LatticeVector> fake{make_vector({1, 1}), make_vector({1, -1}), make_vector({-3, -1})};
  auto g = quotient_group(fake, 2);
  EXPECT_EQ(g.invariant_factors, std::vector<Integer>{2});
  EXPECT_EQ(g.free_rank, 0u);
  auto empty = quotient_group(std::vector<LatticeVector>{}, 2);
  EXPECT_EQ(empty.free_rank, 2u);
  EXPECT_TRUE(empty.invariant_factors.empty());
}

TEST(QuotientGroup, OrderIsDeterminantForSquareGenerators) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 4;
    auto m = random_matrix(rng, n, n, -6, 6);
    mpz_class det = oracle::det_leibniz(m);
    if (det == 0) continue;
    auto rows = to_matrix(m).row_vectors();
    auto g = quotient_group(rows, n);
    ASSERT_EQ(g.free_rank, 0u);
    ASSERT_EQ(g.torsion_order(), abs(det));
  }
}

TEST(SolveAffineDual, Examples) {
  std::vector<LatticeVector> rays{make_vector({1, 0}), make_vector({1, 2})};
  std::vector<Rational> ones{1, 1};
  auto m = solve_affine_dual(rays, ones, 2);
  ASSERT_TRUE(m);
  EXPECT_EQ(*m, (RationalVector{1, 0}));

  std::vector<LatticeVector> std3{unit_vector(3, 0), unit_vector(3, 1), unit_vector(3, 2)};
  EXPECT_EQ(*solve_affine_dual(std3, std::vector<Rational>(3, 1), 3), RationalVector(3, Rational(1)));

  std::vector<LatticeVector> five{unit_vector(5, 0), unit_vector(5, 1), unit_vector(5, 2), unit_vector(5, 3),
                                  make_vector({-1, -1, -1, -2, -3})};
  auto m5 = solve_affine_dual(five, std::vector<Rational>(5, 1), 5);
  ASSERT_TRUE(m5);
  EXPECT_EQ(*m5, (RationalVector{1, 1, 1, 1, -2}));
}

TEST(SolveAffineDual, DependentRaysThrow) {
  std::vector<LatticeVector> rays{make_vector({1, 2}), make_vector({2, 4})};
  EXPECT_THROW(solve_affine_dual(rays, std::vector<Rational>{1, 1}, 2), Error);
}

TEST(SolveAffineDual, LowerDimensionalConePairsCorrectly) {
  std::vector<LatticeVector> rays{make_vector({1, 1, 0}), make_vector({0, 2, 1})};
  std::vector<Rational> vals{Rational(1), Rational(1, 3)};
  auto m = solve_affine_dual(rays, vals, 3);
  ASSERT_TRUE(m);
  EXPECT_EQ(dot(*m, rays[0]), vals[0]);
  EXPECT_EQ(dot(*m, rays[1]), vals[1]);
}

TEST(SublatticeIndex, MatchesCosetCount) {
  std::vector<LatticeVector> rays{make_vector({1, 0}), make_vector({1, 2})};
  EXPECT_EQ(sublattice_index(rays, 2), 2);
  std::vector<LatticeVector> plane{make_vector({1, 0, 0}), make_vector({1, 2, 0})};
  EXPECT_EQ(sublattice_index(plane, 3), 2);
}
