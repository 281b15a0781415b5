#include <gtest/gtest.h>

#include <random>

#include "brute_force.hpp"
#include "subcat/zmod.hpp"

using namespace subcat;

namespace {

ZModule Zm(std::size_t r, std::vector<long> t) {
  std::vector<Integer> v(t.begin(), t.end());
  return ZModule(r, v);
}

bf::FiniteGroup model(const ZModule& m) {
  EXPECT_EQ(m.free_rank(), 0u);
  bf::FiniteGroup g;
  for (auto& d : m.invariant_factors()) g.orders.push_back(d.get_si());
  return g;
}

std::vector<long> all_elements(const bf::FiniteGroup& g) {
  std::vector<long> v(g.size());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// Image of the element with index x of the source model under f.
long apply_model(const ZModuleMap& f, const bf::FiniteGroup& s, const bf::FiniteGroup& t, long x) {
  auto v = s.decode(x);
  std::vector<Integer> xv(v.begin(), v.end());
  auto y = f.apply(xv);
  std::vector<long> yl;
  for (auto& e : y) yl.push_back(e.get_si());
  return t.encode(yl);
}

ZModule random_torsion(std::mt19937_64& rng, int max_factors = 2) {
  static const long pp[] = {2, 3, 4, 5, 8, 9};
  std::uniform_int_distribution<int> k(0, max_factors), idx(0, 5);
  std::vector<Integer> orders;
  int n = k(rng);
  for (int i = 0; i < n; ++i) orders.push_back(pp[idx(rng)]);
  return ZModule::from_cyclic_orders(orders);
}

ZModule random_module(std::mt19937_64& rng) {
  ZModule t = random_torsion(rng, 3);
  std::uniform_int_distribution<int> r(0, 2);
  return direct_sum(t, ZModule::free(r(rng)));
}

// Random well-formed map between finite modules, found by rejection.
ZModuleMap random_map(std::mt19937_64& rng, const ZModule& s, const ZModule& t) {
  std::uniform_int_distribution<long> e(0, 11);
  for (;;) {
    IntMatrix m(t.ngens(), s.ngens());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = e(rng);
    // Make it well-formed: scale each column by t_i/gcd so that relations hold.
    for (std::size_t j = 0; j < s.ngens(); ++j) {
      Integer d = s.generator_order(j);
      for (std::size_t i = 0; i < t.ngens(); ++i) {
        Integer ti = t.generator_order(i);
        if (d == 0) continue;
        if (ti == 0) m(i, j) = 0;
        else m(i, j) *= ti / gcd_of(ti, d);
      }
    }
    return ZModuleMap(s, t, m);
  }
}

}  // namespace

TEST(ZMod, CanonicalForms) {
  EXPECT_EQ(from_presentation(IntMatrix::from_rows({{12}})), Zm(0, {12}));
  EXPECT_EQ(from_presentation(IntMatrix(2, 0)), Zm(2, {}));
  EXPECT_EQ(from_presentation(IntMatrix::from_rows({{2, 0}, {0, 3}})), Zm(0, {6}));
  EXPECT_EQ(ZModule::from_cyclic_orders({4, 3}), Zm(0, {12}));
  EXPECT_EQ(ZModule::from_cyclic_orders({2, 6}), Zm(0, {2, 6}));
  EXPECT_EQ(ZModule::from_cyclic_orders({0, 1, 12}), Zm(1, {12}));
  EXPECT_THROW(Zm(0, {4, 6}), Error);
  EXPECT_THROW(Zm(0, {1}), Error);
  EXPECT_EQ(Zm(1, {12}).to_string(), "Z + Z/12");
  EXPECT_EQ(Zm(2, {2, 6}).to_string(), "Z^2 + Z/2 + Z/6");
  EXPECT_EQ(ZModule::zero().to_string(), "0");
}

TEST(ZMod, Annihilator) {
  EXPECT_EQ(ann(Zm(1, {})), IdealZ(0));
  EXPECT_EQ(ann(Zm(0, {2, 12})), IdealZ(12));
  EXPECT_EQ(ann(ZModule::zero()), IdealZ(1));
  // Kill test on the element model: 12 kills everything, no proper divisor does.
  auto g = model(Zm(0, {2, 12}));
  for (long k : {1, 2, 3, 4, 6, 12}) {
    bool kills = true;
    for (long x = 0; x < g.size(); ++x) kills = kills && g.scale(k, x) == 0;
    EXPECT_EQ(kills, k == 12);
  }
}

TEST(ZMod, SupportAndAss) {
  EXPECT_TRUE(supp(Zm(1, {})).is_infinite());
  EXPECT_EQ(supp(Zm(0, {12})).to_string(), "closure{(2),(3)}");
  EXPECT_TRUE(supp(ZModule::zero()).is_empty());
  EXPECT_EQ(ass(Zm(0, {5})).to_string(), "set{(5)}");
  EXPECT_EQ(ass(Zm(1, {12})).to_string(), "set{(0),(2),(3)}");
  EXPECT_TRUE(ass(ZModule::zero()).is_empty());
}

// Ass via element annihilators of a bounded model: every element of the
// torsion part has annihilator (ord x); the primes that are exactly such an
// annihilator are the ones with an element of prime order.
TEST(ZMod, AssByElementSearch) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    ZModule m = random_torsion(rng, 3);
    auto g = model(m);
    std::set<long> primes;
    for (long x = 1; x < g.size(); ++x) {
      long o = g.element_order(x);
      if (subcat::is_prime(Integer(o))) primes.insert(o);
    }
    std::vector<PrimeId> expect;
    for (long p : primes) expect.push_back(PrimeId::maximal(p));
    ASSERT_EQ(ass(m).generators(), expect) << m.to_string();
    ASSERT_TRUE(leq(ass(m), supp(m)));
    for (auto& p : supp(m).minimal_members()) ASSERT_TRUE(ass(m).contains(p));
  }
}

// Localization test: (ℤ/n)_(p) ≠ 0 iff p | n; a non-dividing control prime
// must be outside the support.
TEST(ZMod, SupportByLocalization) {
  for (long n : {12L, 30L, 49L, 1L}) {
    ZModule m = ZModule::cyclic(n);
    for (long p : {2L, 3L, 5L, 7L, 11L}) EXPECT_EQ(supp(m).contains(PrimeId::maximal(p)), n % p == 0);
  }
}

TEST(ZMod, Grades) {
  auto Z = ZModule::free(1);
  EXPECT_EQ(grade_ideal(IdealZ(2), Z), ExtCount::finite(1));
  EXPECT_EQ(grade_ideal(IdealZ(2), Zm(0, {2})), ExtCount::finite(0));
  EXPECT_EQ(grade_ideal(IdealZ(2), Zm(0, {3})), ExtCount::infinity());
  EXPECT_EQ(grade_ideal(IdealZ(1), Zm(0, {3})), ExtCount::infinity());
  EXPECT_EQ(grade_ideal(IdealZ(0), Zm(0, {3})), ExtCount::finite(0));
  EXPECT_EQ(grade_module(Z, Zm(0, {3})), ExtCount::finite(0));
  EXPECT_EQ(grade_module(Zm(0, {2}), Z), ExtCount::finite(1));
  EXPECT_EQ(grade_module(Zm(0, {6}), Zm(0, {3})), ExtCount::finite(0));
  EXPECT_THROW(grade_module(ZModule::zero(), Z), Error);
  // Brute force: Hom(ℤ/2, ℤ) = 0 (no nonzero element of order 2 in ℤ) and
  // Hom(ℤ/2, ℤ/3) has one element.
  EXPECT_EQ(bf::count_hom_cyclic(model(Zm(0, {3})), 2), 1);
}

TEST(ZMod, HomMatchesEnumeration) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    ZModule a = random_torsion(rng), b = random_torsion(rng);
    long expect = bf::count_hom(model(a), model(b));
    ASSERT_EQ(hom(a, b).torsion_order(), Integer(expect)) << a.to_string() << " -> " << b.to_string();
  }
  EXPECT_EQ(hom(Zm(0, {2}), Zm(0, {4})), Zm(0, {2}));
  EXPECT_EQ(hom(ZModule::free(1), Zm(1, {6})), Zm(1, {6}));
  EXPECT_TRUE(hom(Zm(0, {5}), ZModule::free(2)).is_zero());
}

TEST(ZMod, Ext1) {
  EXPECT_EQ(ext1(Zm(0, {2}), ZModule::free(1)), Zm(0, {2}));
  EXPECT_TRUE(ext1(ZModule::free(1), Zm(0, {2})).is_zero());
  // Extensions 0 → ℤ → E → ℤ/2 → 0: E = ⟨e, s | 2s = k e⟩, k mod 2. The two
  // classes give non-isomorphic middle terms, so |Ext¹| = 2.
  std::set<std::string> middles;
  for (long k = 0; k < 2; ++k) middles.insert(from_presentation(IntMatrix::from_rows({{-k}, {2}})).to_string());
  EXPECT_EQ(middles.size(), 2u);
  // |Ext¹(ℤ/a, N)| = |N/aN| = |N| / |aN| on the element model.
  std::mt19937_64 rng(19);
  for (int t = 0; t < 100; ++t) {
    ZModule n = random_torsion(rng);
    long a = std::uniform_int_distribution<long>(1, 12)(rng);
    auto g = model(n);
    std::set<long> an;
    for (long x = 0; x < g.size(); ++x) an.insert(g.scale(a, x));
    ASSERT_EQ(ext1(ZModule::cyclic(a), n).torsion_order(), Integer(g.size() / static_cast<long>(an.size())));
  }
}

TEST(ZMod, RankLengthDimHeight) {
  auto z4 = Zm(0, {4});
  EXPECT_EQ(rank(z4), 0u);
  EXPECT_EQ(length(z4), ExtCount::finite(2));
  EXPECT_EQ(dim(z4), 0);
  EXPECT_EQ(height_ann(z4), ExtCount::finite(1));
  auto Z = ZModule::free(1);
  EXPECT_EQ(rank(Z), 1u);
  EXPECT_EQ(length(Z), ExtCount::infinity());
  EXPECT_EQ(dim(Z), 1);
  EXPECT_EQ(height_ann(Z), ExtCount::finite(0));
  auto O = ZModule::zero();
  EXPECT_EQ(length(O), ExtCount::finite(0));
  EXPECT_EQ(dim(O), std::nullopt);
  EXPECT_EQ(height_ann(O), ExtCount::infinity());
  // Composition series length by counting subgroup chain: 0 ⊂ 2ℤ/4 ⊂ ℤ/4.
  auto g = model(z4);
  EXPECT_EQ(bf::generated_subgroup(g, {2}).size(), 2u);
}

TEST(ZMod, TorsionSubmodule) {
  EXPECT_EQ(torsion_submodule(IdealZ(2), Zm(0, {12})), Zm(0, {4}));
  EXPECT_EQ(torsion_submodule(IdealZ(0), Zm(0, {6})), Zm(0, {6}));
  EXPECT_EQ(torsion_submodule(IdealZ(5), Zm(0, {12})), ZModule::zero());
  EXPECT_TRUE(is_torsionfree_for(IdealZ(5), Zm(0, {12})));
  EXPECT_TRUE(is_torsion_for(IdealZ(6), Zm(0, {12})));
  EXPECT_FALSE(is_torsion_for(IdealZ(2), Zm(1, {})));
  // Elements killed by a power of n in the element model.
  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    ZModule m = random_torsion(rng, 3);
    long n = std::uniform_int_distribution<long>(2, 15)(rng);
    auto g = model(m);
    long killed = 0;
    for (long x = 0; x < g.size(); ++x) {
      long y = x, pw = 1;
      bool k = false;
      for (int e = 0; e < 8 && !k; ++e) {
        k = g.scale(pw, x) == 0;
        pw *= n;
      }
      (void)y;
      if (k) ++killed;
    }
    ASSERT_EQ(torsion_submodule(IdealZ(n), m).torsion_order(), Integer(killed));
  }
}

TEST(ZMod, KernelCokernelImageExamples) {
  auto m = Zm(1, {6});
  EXPECT_TRUE(kernel(ZModuleMap::identity(m)).is_zero());
  EXPECT_EQ(cokernel(ZModuleMap::scalar(ZModule::free(1), 2)), Zm(0, {2}));
  ZModuleMap f(ZModule::free(1), Zm(0, {4}), IntMatrix::from_rows({{2}}));
  EXPECT_EQ(image(f), Zm(0, {2}));
  EXPECT_EQ(kernel(f), ZModule::free(1));
  EXPECT_EQ(cokernel(f), Zm(0, {2}));
  EXPECT_THROW(ZModuleMap(Zm(0, {2}), ZModule::free(1), IntMatrix::from_rows({{1}})), Error);
  EXPECT_THROW(ZModuleMap(Zm(0, {2}), Zm(0, {3}), IntMatrix::from_rows({{1}})), Error);
}

TEST(ZMod, KernelCokernelImageAgainstElementModel) {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 150; ++t) {
    ZModule s = random_torsion(rng), tt = random_torsion(rng);
    ZModuleMap f = random_map(rng, s, tt);
    auto gs = model(s), gt = model(tt);
    std::vector<long> ker, img;
    std::set<long> imset;
    for (long x = 0; x < gs.size(); ++x) {
      long y = apply_model(f, gs, gt, x);
      if (y == 0) ker.push_back(x);
      imset.insert(y);
    }
    img.assign(imset.begin(), imset.end());
    auto k = kernel_with_map(f);
    auto im = image_with_maps(f);
    auto c = cokernel_with_map(f);
    ASSERT_EQ(k.module.torsion_order(), Integer(static_cast<long>(ker.size())));
    ASSERT_EQ(im.module.torsion_order(), Integer(static_cast<long>(img.size())));
    ASSERT_EQ(c.module.torsion_order() * img.size(), Integer(gt.size()));
    // Isomorphism type via element-order profile inside the ambient model.
    ASSERT_EQ(bf::order_profile(gs, ker), bf::order_profile(model(k.module), all_elements(model(k.module))));
    ASSERT_EQ(bf::order_profile(gt, img), bf::order_profile(model(im.module), all_elements(model(im.module))));
    // Structure maps.
    ASSERT_TRUE(compose(f, k.map).is_zero());
    ASSERT_TRUE(is_injective(k.map));
    ASSERT_TRUE(compose(c.map, f).is_zero());
    ASSERT_TRUE(is_surjective(c.map));
    ASSERT_EQ(compose(im.inclusion, im.projection), f);
  }
}

TEST(ZMod, KernelWithFreeParts) {
  // ℤ² → ℤ/4 ⊕ ℤ, (a, b) ↦ (a mod 4, a - b).
  ZModuleMap f(ZModule::free(2), Zm(1, {4}), IntMatrix::from_rows({{1, 0}, {1, -1}}));
  EXPECT_EQ(f.matrix(), IntMatrix::from_rows({{1, 0}, {1, -1}}));
  // Kernel: a ≡ 0 mod 4 and a = b → ⟨(4, 4)⟩ ≅ ℤ.
  EXPECT_EQ(kernel(f), ZModule::free(1));
  EXPECT_EQ(image(f), Zm(1, {4}));
  std::mt19937_64 rng(41);
  for (int t = 0; t < 100; ++t) {
    ZModule s = random_module(rng), tt = random_module(rng);
    ZModuleMap g = random_map(rng, s, tt);
    auto k = kernel_with_map(g);
    auto im = image_with_maps(g);
    auto c = cokernel_with_map(g);
    ASSERT_TRUE(compose(g, k.map).is_zero());
    ASSERT_TRUE(is_injective(k.map));
    ASSERT_TRUE(compose(c.map, g).is_zero());
    ASSERT_TRUE(is_surjective(c.map));
    ASSERT_EQ(compose(im.inclusion, im.projection), g);
    // Rank additivity: rank s = rank ker + rank im; rank t = rank im + rank coker.
    ASSERT_EQ(s.free_rank(), k.module.free_rank() + im.module.free_rank());
    ASSERT_EQ(tt.free_rank(), im.module.free_rank() + c.module.free_rank());
  }
}

TEST(ZMod, FiltrationExamples) {
  auto f = cyclic_filtration(Zm(0, {6}));
  EXPECT_EQ(f.ideals, (std::vector<IdealZ>{IdealZ(6)}));
  f = cyclic_filtration(ZModule::free(2));
  EXPECT_EQ(f.ideals, (std::vector<IdealZ>{IdealZ(0), IdealZ(0)}));
  f = cyclic_filtration(Zm(0, {2, 4}));
  EXPECT_EQ(f.ideals, (std::vector<IdealZ>{IdealZ(2), IdealZ(4)}));
  EXPECT_TRUE(replay_filtration(f));
  EXPECT_TRUE(cyclic_filtration(ZModule::zero()).ideals.empty());
}

TEST(ZMod, FiltrationReplayRandom) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 100; ++t) {
    ZModule m = random_module(rng);
    auto f = cyclic_filtration(m);
    ASSERT_TRUE(replay_filtration(f)) << m.to_string();
    std::size_t r = 0;
    std::uint64_t l = 0;
    for (auto& i : f.ideals) {
      if (i.is_zero()) ++r;
      else l += big_omega(i.n);
    }
    ASSERT_EQ(r, m.free_rank());
    if (m.free_rank() == 0) ASSERT_EQ(ExtCount::finite(l), length(m));
  }
}

TEST(ZMod, CoprimaryComponents) {
  auto c = coprimary_components(Zm(1, {12}));
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0].first, PrimeId::generic());
  EXPECT_EQ(c[0].second, ZModule::free(1));
  EXPECT_EQ(c[1].second, Zm(0, {4}));
  EXPECT_EQ(c[2].second, Zm(0, {3}));
  EXPECT_EQ(coprimary_components(Zm(0, {5})).size(), 1u);
  EXPECT_TRUE(coprimary_components(ZModule::zero()).empty());
  std::mt19937_64 rng(47);
  for (int t = 0; t < 100; ++t) {
    ZModule m = random_module(rng);
    auto d = coprimary_diagonal(m);
    ASSERT_TRUE(is_injective(d)) << m.to_string();
    ZModule sum;
    for (auto& [p, x] : coprimary_components(m)) {
      auto a = ass(x);
      ASSERT_EQ(a.generators(), std::vector<PrimeId>{p});
      sum = direct_sum(sum, x);
    }
    ASSERT_EQ(d.target(), sum);
    ASSERT_EQ(sum, m);  // ℤ-modules split, so the diagonal is an isomorphism.
  }
}

TEST(ZMod, CoprimaryChain) {
  auto two = PrimeId::maximal(2), three = PrimeId::maximal(3);
  EXPECT_EQ(coprimary_chain(Zm(0, {4}), two), (std::vector<ZModule>{Zm(0, {4}), Zm(0, {2}), ZModule::zero()}));
  EXPECT_EQ(coprimary_chain(Zm(0, {3}), three), (std::vector<ZModule>{Zm(0, {3}), ZModule::zero()}));
  EXPECT_EQ(coprimary_chain(Zm(0, {2, 2}), two), (std::vector<ZModule>{Zm(0, {2, 2}), ZModule::zero()}));
  EXPECT_THROW(coprimary_chain(Zm(0, {6}), two), Error);
  EXPECT_THROW(coprimary_chain(ZModule::free(1), PrimeId::generic()), Error);
  auto ch = coprimary_chain(Zm(0, {2, 8, 8}), two);
  EXPECT_EQ(ch.size(), 4u);
  EXPECT_EQ(ch[1], Zm(0, {4, 4}));
}

TEST(ZMod, PredicatesAgree) {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 200; ++t) {
    ZModule m = random_module(rng);
    long n = std::uniform_int_distribution<long>(0, 12)(rng);
    IdealZ i(n);
    if (!i.is_unit() && !i.is_zero()) {
      bool a = hom(quotient_ring(i), m).is_zero();
      bool b = grade_ideal(i, m) >= ExtCount::finite(1);
      bool c = torsion_submodule(i, m).is_zero();
      ASSERT_EQ(a, b);
      ASSERT_EQ(b, c) << m.to_string() << " " << n;
    }
    bool r0 = rank(m) == 0;
    ASSERT_EQ(r0, hom(m, ZModule::free(1)).is_zero());
    if (!m.is_zero()) ASSERT_EQ(r0, grade_module(m, ZModule::free(1)) > ExtCount::finite(0));
    ZModule m2 = random_module(rng);
    auto s = direct_sum(m, m2);
    ASSERT_TRUE(same_set(ass(s), lattice_join(ass(m), ass(m2))));
    ASSERT_TRUE(same_set(supp(s), lattice_join(supp(m), supp(m2))));
  }
}
