#include <gtest/gtest.h>

#include <random>
#include <set>

#include "subcat/monomial.hpp"

using namespace subcat;

namespace {

Backend ring(std::size_t n) {
  static const char* names[] = {"x", "y", "z", "w", "v", "u", "t", "s", "r"};
  std::vector<std::string> v(names, names + n);
  return Backend::monomial(v);
}

MonomialIdeal I(std::size_t n, std::vector<Exponent> g) { return {ring(n), g}; }

std::uint32_t mask_of(const PrimeId& p) { return p.vars; }

// Ass(R/J) by brute force: the colon ideals (J : u) over standard monomials u
// in the exponent box that happen to be generated by variables.
std::set<std::uint32_t> ass_by_colons(const MonomialIdeal& j) {
  std::set<std::uint32_t> out;
  if (j.is_unit()) return out;
  Exponent box = j.max_exponents(), u(box.size(), 0);
  for (;;) {
    if (!j.contains(u)) {
      std::vector<Exponent> colon;
      for (auto& g : j.generators()) {
        Exponent q(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) q[i] = g[i] > u[i] ? g[i] - u[i] : 0;
        colon.push_back(q);
      }
      MonomialIdeal c(j.context(), colon);
      bool prime = true;
      std::uint32_t m = 0;
      for (auto& g : c.generators()) {
        unsigned s = 0;
        for (auto e : g) s += e;
        if (s != 1) prime = false;
        m |= mono::support(g);
      }
      if (prime) out.insert(m);
    }
    std::size_t i = 0;
    while (i < u.size() && u[i] == box[i]) u[i++] = 0;
    if (i == u.size()) break;
    ++u[i];
  }
  return out;
}

MonomialIdeal random_ideal(std::mt19937_64& rng, std::size_t n, int max_gens = 5, unsigned max_exp = 3) {
  std::uniform_int_distribution<int> k(1, max_gens);
  std::uniform_int_distribution<unsigned> e(0, max_exp);
  std::vector<Exponent> g;
  int count = k(rng);
  for (int i = 0; i < count; ++i) {
    Exponent x(n);
    for (auto& v : x) v = e(rng);
    if (mono::support(x) == 0) x[0] = 1;  // keep the ideal proper
    g.push_back(x);
  }
  return I(n, g);
}

}  // namespace

TEST(Monomial, Basics) {
  auto j = I(2, {{2, 0}, {1, 1}, {2, 1}});
  EXPECT_EQ(j.generators().size(), 2u);
  EXPECT_EQ(j.to_string(), "(x*y, x^2)");
  EXPECT_TRUE(MonomialIdeal::unit(ring(2)).is_unit());
  EXPECT_TRUE(MonomialIdeal::zero(ring(2)).is_zero());
  EXPECT_TRUE(j.contains(Exponent{3, 0}));
  EXPECT_FALSE(j.contains(Exponent{1, 0}));
}

TEST(Monomial, IrreducibleDecompositionExamples) {
  auto d = irreducible_decomposition(I(2, {{2, 0}, {1, 1}}));
  std::set<std::string> got;
  for (auto& c : d) got.insert(c.to_string());
  EXPECT_EQ(got, (std::set<std::string>{"(x)", "(y, x^2)"}));
  EXPECT_EQ(irreducible_decomposition(I(2, {{1, 0}})).size(), 1u);
  EXPECT_EQ(irreducible_decomposition(I(2, {{2, 0}, {0, 3}})).front(), I(2, {{2, 0}, {0, 3}}));
  EXPECT_THROW(irreducible_decomposition(MonomialIdeal::unit(ring(2))), Error);
  EXPECT_THROW(irreducible_decomposition(MonomialIdeal::zero(ring(2))), Error);
  EXPECT_THROW(irreducible_decomposition(MonomialIdeal::prime(ring(9), 1)), CapExceeded);
  EXPECT_NO_THROW(irreducible_decomposition(MonomialIdeal::prime(ring(9), 1), 9));
}

TEST(Monomial, DecompositionIntersectsBack) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 2 + t % 3;
    auto j = random_ideal(rng, n);
    if (j.is_unit()) continue;
    auto d = irreducible_decomposition(j);
    MonomialIdeal meet = MonomialIdeal::unit(j.context());
    for (auto& c : d) {
      ASSERT_TRUE(c.is_irreducible());
      ASSERT_TRUE(c.contains(j));  // J ⊆ each component
      meet = ideal_intersection(meet, c);
    }
    ASSERT_TRUE(j.contains(meet)) << j.to_string();
    // Irredundant: dropping any component strictly enlarges the intersection.
    for (std::size_t k = 0; k < d.size(); ++k) {
      MonomialIdeal rest = MonomialIdeal::unit(j.context());
      for (std::size_t l = 0; l < d.size(); ++l)
        if (l != k) rest = ideal_intersection(rest, d[l]);
      ASSERT_FALSE(j.contains(rest));
    }
  }
}

TEST(Monomial, AssExamples) {
  auto a = ass_cyclic(I(2, {{2, 0}, {1, 1}}));
  EXPECT_EQ(a, (std::vector<PrimeId>{PrimeId::monomial(1), PrimeId::monomial(3)}));
  EXPECT_EQ(ass_cyclic(I(2, {{1, 0}})), std::vector<PrimeId>{PrimeId::monomial(1)});
  EXPECT_EQ(ass_cyclic(MonomialIdeal::zero(ring(2))), std::vector<PrimeId>{PrimeId::monomial(0)});
  EXPECT_TRUE(ass_cyclic(MonomialIdeal::unit(ring(2))).empty());
}

TEST(Monomial, AssAgainstColonIdeals) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 2 + t % 3;
    auto j = random_ideal(rng, n);
    std::set<std::uint32_t> mine;
    for (auto& p : ass_cyclic(j)) mine.insert(mask_of(p));
    ASSERT_EQ(mine, ass_by_colons(j)) << j.to_string();
    // Min ⊆ Ass, and Min = minimal elements of Ass.
    std::set<std::uint32_t> mins;
    for (auto& p : min_primes(j)) mins.insert(mask_of(p));
    std::set<std::uint32_t> minimal_ass;
    for (auto a : mine)
      if (std::none_of(mine.begin(), mine.end(), [&](auto b) { return b != a && (b & ~a) == 0; })) minimal_ass.insert(a);
    ASSERT_EQ(mins, minimal_ass) << j.to_string();
  }
}

TEST(Monomial, MinPrimesDimHeight) {
  auto j = I(2, {{2, 0}, {1, 1}});
  EXPECT_EQ(min_primes(j), std::vector<PrimeId>{PrimeId::monomial(1)});
  EXPECT_EQ(dim_cyclic(j), 1u);
  EXPECT_EQ(height(j), 1u);
  auto z = MonomialIdeal::zero(ring(2));
  EXPECT_EQ(min_primes(z), std::vector<PrimeId>{PrimeId::monomial(0)});
  EXPECT_EQ(dim_cyclic(z), 2u);
  EXPECT_EQ(height(z), 0u);
  auto m = MonomialIdeal::prime(ring(2), 3);
  EXPECT_EQ(dim_cyclic(m), 0u);
  EXPECT_EQ(height(m), 2u);
  EXPECT_THROW(min_primes(MonomialIdeal::unit(ring(2))), Error);
}

TEST(Monomial, DimHeightAgainstPrimeEnumeration) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 2 + t % 3;
    auto j = random_ideal(rng, n);
    // Every monomial prime containing J, by direct containment.
    std::size_t best_h = n, best_d = 0;
    for (auto& p : all_monomial_primes(j.context())) {
      if (!MonomialIdeal::prime(j.context(), p.vars).contains(j)) continue;
      best_h = std::min(best_h, p.height());
      best_d = std::max(best_d, n - p.height());
    }
    ASSERT_EQ(height(j), best_h);
    ASSERT_EQ(dim_cyclic(j), best_d);
  }
}

TEST(Monomial, VOfIdeal) {
  auto v = v_of_monomial_ideal(I(2, {{2, 0}, {1, 1}}));
  EXPECT_TRUE(same_set(v, specialization_closure(ring(2), {PrimeId::monomial(1)})));
  EXPECT_TRUE(v_of_monomial_ideal(MonomialIdeal::unit(ring(2))).is_empty());
  EXPECT_TRUE(same_set(v_of_monomial_ideal(MonomialIdeal::zero(ring(2))), SpecSubset::whole(ring(2))));
}

TEST(Monomial, ModuleOps) {
  auto ctx = ring(2);
  MonomialModule m(ctx, {I(2, {{1, 0}}), I(2, {{0, 1}})});
  EXPECT_EQ(ass(m).to_string(), "set{(x),(y)}");
  EXPECT_EQ(ann(m), I(2, {{1, 1}}));
  // lcm intersection by membership probes.
  for (unsigned a = 0; a < 3; ++a)
    for (unsigned b = 0; b < 3; ++b) EXPECT_EQ(ann(m).contains(Exponent{a, b}), a >= 1 && b >= 1);
  MonomialModule r(ctx, {MonomialIdeal::zero(ctx)});
  EXPECT_EQ(ass(r).to_string(), "set{(0)}");
  EXPECT_TRUE(same_set(supp(r), SpecSubset::whole(ctx)));
  MonomialModule e(ctx);
  EXPECT_TRUE(ass(e).is_empty());
  EXPECT_TRUE(supp(e).is_empty());
  EXPECT_TRUE(ann(e).is_unit());
  EXPECT_TRUE(MonomialModule(ctx, {MonomialIdeal::unit(ctx)}).is_zero());
  EXPECT_EQ(m.to_string(), "R/(x) + R/(y)");
}

TEST(Monomial, GradeZero) {
  auto ctx = ring(2);
  EXPECT_TRUE(grade_zero(PrimeId::monomial(1), MonomialModule::cyclic(I(2, {{2, 0}, {1, 1}}))));
  EXPECT_FALSE(grade_zero(PrimeId::monomial(2), MonomialModule::cyclic(I(2, {{1, 0}}))));
  EXPECT_TRUE(grade_zero(PrimeId::monomial(0), MonomialModule::cyclic(I(2, {{0, 3}}))));
  EXPECT_THROW(grade_zero(PrimeId::monomial(0), MonomialModule(ctx)), Error);
}

TEST(Monomial, AdditivityAndContainments) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 2 + t % 3;
    auto a = MonomialModule::cyclic(random_ideal(rng, n)), b = MonomialModule::cyclic(random_ideal(rng, n));
    auto s = direct_sum(a, b);
    ASSERT_TRUE(same_set(ass(s), lattice_join(ass(a), ass(b))));
    ASSERT_TRUE(same_set(supp(s), lattice_join(supp(a), supp(b))));
    ASSERT_TRUE(leq(ass(s), supp(s)));
    for (auto& p : supp(s).minimal_members()) ASSERT_TRUE(ass(s).contains(p));
  }
}

TEST(Monomial, LengthAndTorsion) {
  auto ctx = ring(2);
  EXPECT_EQ(length(MonomialModule::cyclic(I(2, {{2, 0}, {0, 2}}))), ExtCount::finite(4));
  EXPECT_EQ(length(MonomialModule::cyclic(I(2, {{2, 0}, {1, 1}, {0, 2}}))), ExtCount::finite(3));
  EXPECT_EQ(length(MonomialModule::cyclic(I(2, {{2, 0}}))), ExtCount::infinity());
  EXPECT_TRUE(is_torsion_for(I(2, {{1, 0}}), MonomialModule::cyclic(I(2, {{3, 0}}))));
  EXPECT_FALSE(is_torsion_for(I(2, {{1, 0}}), MonomialModule::cyclic(I(2, {{1, 1}}))));
  EXPECT_TRUE(linear_form_is_zero_divisor(1, MonomialModule::cyclic(I(2, {{2, 0}}))));
  EXPECT_FALSE(linear_form_is_zero_divisor(2, MonomialModule::cyclic(I(2, {{2, 0}}))));
  EXPECT_TRUE(linear_form_is_zero_divisor(3, MonomialModule::cyclic(I(2, {{2, 0}, {1, 1}}))));
  EXPECT_TRUE(linear_form_is_zero_divisor(0, MonomialModule::cyclic(MonomialIdeal::zero(ctx))));
}
