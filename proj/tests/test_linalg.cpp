#include <gtest/gtest.h>

#include <random>

#include "brute_force.hpp"
#include "subcat/linalg/normal_form.hpp"

using namespace subcat;

namespace {

bool is_smith_form(const SmithDecomposition& s, const IntMatrix& a) {
  if (!(s.U * a * s.V == s.D)) return false;
  if (abs(determinant(s.U)) != 1 || abs(determinant(s.V)) != 1) return false;
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j && s.D(i, j) != 0) return false;
  auto d = s.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 0) return false;
    if (i + 1 < d.size() && !divides(d[i], d[i + 1])) return false;
  }
  return true;
}

}  // namespace

TEST(Snf, Identity) {
  auto s = smith_normal_form(IntMatrix::identity(3));
  EXPECT_EQ(s.D, IntMatrix::identity(3));
  EXPECT_EQ(s.U, IntMatrix::identity(3));
  EXPECT_EQ(s.V, IntMatrix::identity(3));
}

TEST(Snf, TwoByTwo) {
  IntMatrix a = IntMatrix::from_rows({{2, 4}, {6, 8}});
  for (auto strat : {PivotStrategy::MinimalEntry, PivotStrategy::GcdCombination}) {
    auto s = smith_normal_form(a, strat);
    EXPECT_TRUE(is_smith_form(s, a));
    EXPECT_EQ(s.D, IntMatrix::from_rows({{2, 0}, {0, 4}}));
  }
  auto byminors = bf::smith_diagonal_by_minors(a);
  EXPECT_EQ(byminors, (std::vector<Integer>{2, 4}));
  EXPECT_EQ(byminors[0] * byminors[1], abs(determinant(a)));
}

TEST(Snf, ZeroMatrix) {
  IntMatrix z(2, 3);
  auto s = smith_normal_form(z);
  EXPECT_TRUE(s.D.is_zero());
  EXPECT_TRUE(is_smith_form(s, z));
}

TEST(Snf, EmptyShapes) {
  for (auto [m, n] : {std::pair{0, 3}, {3, 0}, {0, 0}}) {
    IntMatrix a(m, n);
    auto s = smith_normal_form(a);
    EXPECT_TRUE(is_smith_form(s, a));
    EXPECT_EQ(s.rank(), 0u);
  }
}

TEST(Snf, RandomAgainstMinors) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 4);
  for (int trial = 0; trial < 300; ++trial) {
    IntMatrix a = bf::random_matrix(rng, dim(rng), dim(rng), 20);
    auto s1 = smith_normal_form(a, PivotStrategy::MinimalEntry);
    auto s2 = smith_normal_form(a, PivotStrategy::GcdCombination);
    ASSERT_TRUE(is_smith_form(s1, a)) << a;
    ASSERT_TRUE(is_smith_form(s2, a)) << a;
    ASSERT_EQ(s1.D, s2.D) << a;
    ASSERT_EQ(s1.diagonal(), bf::smith_diagonal_by_minors(a)) << a;
  }
}

TEST(Snf, RankDeficientLarge) {
  // Rank-2 6×6 with big entries: product of 6×2 and 2×6.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix a = bf::random_matrix(rng, 6, 2, 50) * bf::random_matrix(rng, 2, 6, 50);
    auto s = smith_normal_form(a);
    ASSERT_TRUE(is_smith_form(s, a));
    ASSERT_LE(s.rank(), 2u);
    ASSERT_EQ(s.D, smith_normal_form(a, PivotStrategy::GcdCombination).D);
  }
}

TEST(Snf, RecomposesFromInverses) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix a = bf::random_matrix(rng, 5, 4, 50);
    auto s = smith_normal_form(a);
    auto ui = solve_integer(s.U, IntMatrix::identity(5));
    auto vi = solve_integer(s.V, IntMatrix::identity(4));
    ASSERT_TRUE(ui && vi);
    ASSERT_EQ(*ui * s.D * *vi, a);
  }
}

TEST(Hermite, EchelonAndUnimodular) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix a = bf::random_matrix(rng, 4, 5, 9);
    auto h = hermite_normal_form(a);
    ASSERT_EQ(h.U * a, h.H);
    ASSERT_EQ(abs(determinant(h.U)), 1);
    std::size_t last = 0;
    bool seen_zero = false;
    for (std::size_t i = 0; i < h.H.rows(); ++i) {
      std::size_t j = 0;
      while (j < h.H.cols() && h.H(i, j) == 0) ++j;
      if (j == h.H.cols()) {
        seen_zero = true;
        continue;
      }
      ASSERT_FALSE(seen_zero);
      if (i) ASSERT_GT(j, last);
      ASSERT_GT(h.H(i, j), 0);
      for (std::size_t r = 0; r < i; ++r) {
        ASSERT_GE(h.H(r, j), 0);
        ASSERT_LT(h.H(r, j), h.H(i, j));
      }
      last = j;
    }
  }
}

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel_basis(IntMatrix::from_rows({{1}})).cols(), 0u);
  EXPECT_EQ(kernel_basis(IntMatrix::from_rows({{0}})), IntMatrix::from_rows({{1}}));
  IntMatrix k = kernel_basis(IntMatrix::from_rows({{2, 4}}));
  ASSERT_EQ(k.cols(), 1u);
  // Same lattice as (-2, 1): the only other generator is (2, -1).
  bool ok = k == IntMatrix::from_rows({{-2}, {1}}) || k == IntMatrix::from_rows({{2}, {-1}});
  EXPECT_TRUE(ok) << k;
}

TEST(Kernel, ExhaustiveSmallSolutions) {
  // Every small solution of A x = 0 must be an integer combination of the
  // basis, and the basis must be primitive.
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    IntMatrix a = bf::random_matrix(rng, 2, 3, 4);
    IntMatrix k = kernel_basis(a);
    ASSERT_TRUE((a * k).is_zero());
    if (k.cols()) {
      auto c = cokernel_structure(k);
      ASSERT_TRUE(c.invariant_factors.empty()) << "basis not primitive";
    }
    for (long x = -6; x <= 6; ++x)
      for (long y = -6; y <= 6; ++y)
        for (long z = -6; z <= 6; ++z) {
          std::vector<Integer> v{x, y, z};
          if (!std::ranges::all_of(a * std::span<const Integer>(v), [](auto& e) { return e == 0; })) continue;
          ASSERT_TRUE(solve_integer(k, IntMatrix::column(v)).has_value());
        }
  }
}

TEST(Cokernel, Examples) {
  EXPECT_EQ(cokernel_structure(IntMatrix::from_rows({{12}})), (CokernelStructure{0, {12}}));
  EXPECT_EQ(cokernel_structure(IntMatrix::from_rows({{2, 0}, {0, 3}})), (CokernelStructure{0, {6}}));
  EXPECT_EQ(cokernel_structure(IntMatrix(2, 0)), (CokernelStructure{2, {}}));
  EXPECT_EQ(cokernel_structure(IntMatrix(2, 3)), (CokernelStructure{2, {}}));
}

TEST(Cokernel, UnimodularInvariance) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix a = bf::random_matrix(rng, 3, 4, 12);
    IntMatrix p = IntMatrix::identity(3), q = IntMatrix::identity(4);
    std::uniform_int_distribution<long> f(-3, 3);
    for (int k = 0; k < 6; ++k) {
      p.add_row_multiple(k % 3, (k + 1) % 3, f(rng));
      q.add_col_multiple(k % 4, (k + 2) % 4, f(rng));
    }
    ASSERT_EQ(cokernel_structure(a), cokernel_structure(p * a * q));
  }
}

TEST(Solve, Basic) {
  IntMatrix b = IntMatrix::from_rows({{2, 0}, {0, 3}});
  auto x = solve_integer(b, IntMatrix::from_rows({{4}, {9}}));
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, IntMatrix::from_rows({{2}, {3}}));
  EXPECT_FALSE(solve_integer(b, IntMatrix::from_rows({{1}, {0}})));
}

TEST(Integer, Factorization) {
  EXPECT_EQ(prime_divisors(Integer(360)), (std::vector<Integer>{2, 3, 5}));
  EXPECT_EQ(big_omega(Integer(360)), 6u);
  Integer big("1000000016000000063");  // 1000000007 * 1000000009
  auto f = factorize(big);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].first, Integer(1000000007));
  EXPECT_TRUE(is_prime(Integer(1000000009)));
  EXPECT_FALSE(is_prime(Integer(561)));
}
