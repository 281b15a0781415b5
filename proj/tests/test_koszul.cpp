#include <gtest/gtest.h>

#include <random>

#include "subcat/koszul.hpp"

using namespace subcat;

namespace {

long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Closed form: K(x₁..x_r) with g = gcd ≠ 0 is isomorphic to K(g, 0, …, 0),
// whose i-th homology is (ℤ/g)^C(r-1, i).
ZModule expected_homology(const std::vector<Integer>& x, long i) {
  Integer g = 0;
  for (auto& v : x) g = gcd_of(g, v);
  long r = static_cast<long>(x.size());
  if (g == 0) return ZModule::free(static_cast<std::size_t>(binom(r, i)));
  return direct_power(ZModule::cyclic(g), static_cast<std::size_t>(binom(r - 1, i)));
}

IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntMatrix p = IntMatrix::identity(n);
  if (n < 2) return p;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<long> f(-2, 2);
  for (int k = 0; k < 8; ++k) {
    auto a = idx(rng), b = idx(rng);
    if (a != b) p.add_row_multiple(a, b, f(rng));
  }
  return p;
}

}  // namespace

TEST(Koszul, Construction) {
  auto k = koszul_complex({2});
  EXPECT_EQ(k.ranks(), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(k.differential(1), IntMatrix::from_rows({{2}}));
  auto k2 = koszul_complex({2, 4});
  EXPECT_EQ(k2.ranks(), (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(k2.differential(1), IntMatrix::from_rows({{2, 4}}));
  EXPECT_EQ(k2.differential(2), IntMatrix::from_rows({{-4}, {2}}));
  EXPECT_TRUE((k2.differential(1) * k2.differential(2)).is_zero());
  auto k0 = koszul_complex({0});
  EXPECT_EQ(homology(k0, 0), ZModule::free(1));
  EXPECT_EQ(homology(k0, 1), ZModule::free(1));
  EXPECT_THROW(koszul_complex({}), Error);
  EXPECT_THROW(FreeComplex::from_differentials(0, {IntMatrix::from_rows({{1}}), IntMatrix::from_rows({{1}})}), Error);
}

TEST(Koszul, HomologyExamples) {
  EXPECT_EQ(homology(koszul_complex({2}), 0), ZModule::cyclic(2));
  EXPECT_EQ(homology(koszul_complex({2, 4}), 1), ZModule::cyclic(2));
  EXPECT_TRUE(homology(koszul_complex({2}), 5).is_zero());
  EXPECT_TRUE(homology(koszul_complex({2}), -1).is_zero());
}

TEST(Koszul, HomologyMatchesClosedForm) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> len(1, 4);
  std::uniform_int_distribution<long> val(-12, 12);
  for (int t = 0; t < 200; ++t) {
    std::vector<Integer> x(static_cast<std::size_t>(len(rng)));
    for (auto& v : x) v = val(rng);
    auto k = koszul_complex(x);
    for (long i = 0; i <= k.top_degree(); ++i) ASSERT_EQ(homology(k, i), expected_homology(x, i));
  }
}

TEST(Koszul, HomologyInvariantUnderBaseChange) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    auto k = koszul_complex({Integer(2 * (t % 5) + 2), Integer(6), Integer(t % 7)});
    std::vector<IntMatrix> p, pinv;
    for (auto r : k.ranks()) {
      p.push_back(random_unimodular(rng, r));
      pinv.push_back(*solve_integer(p.back(), IntMatrix::identity(r)));
    }
    std::vector<IntMatrix> d;
    for (std::size_t i = 0; i < k.differentials().size(); ++i) d.push_back(p[i] * k.differentials()[i] * pinv[i + 1]);
    FreeComplex c(3, k.ranks(), d);  // also shifted by 3
    for (long i = 0; i <= k.top_degree(); ++i) ASSERT_EQ(homology(c, i + 3), homology(k, i));
  }
}

TEST(Koszul, VerifyGfExamples) {
  auto r = verify_gf(2, {2});
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.homology[1].is_zero());
  r = verify_gf(2, {2, 4});
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.homology[1], ZModule::cyclic(2));
  r = verify_gf(1, {2, 3});
  EXPECT_TRUE(r.passed());
  for (auto& h : r.homology) EXPECT_TRUE(h.is_zero());
  EXPECT_THROW(verify_gf(3, {2, 4}), Error);
  EXPECT_TRUE(verify_gf(0, {0, 0}).passed());
}

TEST(Koszul, SupportAndThickMembership) {
  auto k2 = koszul_complex({2});
  EXPECT_TRUE(thick_member(k2, v_of_integer(2)));
  EXPECT_FALSE(thick_member(k2, v_of_integer(3)));
  EXPECT_TRUE(thick_member(koszul_complex({1}), SpecSubset::empty(Backend::integers())));
  EXPECT_THROW(thick_member(k2, SpecSubset(Backend::integers(), {PrimeId::generic()}, false)), Error);
  EXPECT_TRUE(same_set(complex_support(koszul_complex({6})), v_of_integer(6)));
  EXPECT_TRUE(complex_support(koszul_complex({2, 3})).is_empty());
  EXPECT_TRUE(complex_support(koszul_complex({0})).is_infinite());
}

TEST(Koszul, GfPipelineJoinsToSupport) {
  for (auto m : {ZModule(0, {2, 12}), ZModule(0, {30}), ZModule(0, {}), ZModule(0, {5, 25})}) {
    SpecSubset join = SpecSubset::empty(Backend::integers());
    for (auto& c : gf_pipeline(m)) join = lattice_join(join, complex_support(c));
    EXPECT_TRUE(same_set(join, supp(m))) << m.to_string();
  }
}

TEST(Koszul, FgProbe) {
  auto s = specialization_closure(Backend::integers(), {PrimeId::maximal(2), PrimeId::maximal(5)});
  auto r = fg_probe(s, {3, 7});
  EXPECT_TRUE(r.generators_are_members && r.supports_join_to_s && r.outsider_rejected);
  EXPECT_THROW(fg_probe(s, {2}), Error);
}
