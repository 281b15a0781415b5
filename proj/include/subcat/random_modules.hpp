#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "subcat/monomial.hpp"
#include "subcat/zmod.hpp"

namespace subcat {

// Small random modules for probe families and property suites. All draws go
// through the caller's engine so a seed pins the whole sequence.

inline Integer random_order(std::mt19937_64& rng) {
  static const long pool[] = {2, 3, 4, 5, 7, 8, 9, 11, 25};
  std::uniform_int_distribution<std::size_t> pick(0, std::size(pool) - 1);
  std::uniform_int_distribution<int> count(1, 2);
  Integer n = 1;
  for (int k = count(rng); k > 0; --k) n *= pool[pick(rng)];
  return n;
}

inline ZModule random_zmodule(std::mt19937_64& rng, std::size_t max_rank = 1, std::size_t max_factors = 3) {
  std::uniform_int_distribution<std::size_t> r(0, max_rank), f(0, max_factors);
  std::vector<Integer> orders;
  for (std::size_t k = f(rng); k > 0; --k) orders.push_back(random_order(rng));
  orders.insert(orders.end(), r(rng), Integer(0));
  return ZModule::from_cyclic_orders(orders);
}

inline MonomialIdeal random_monomial_ideal(std::mt19937_64& rng, const Backend& ctx, unsigned max_exp = 2,
                                           std::size_t max_gens = 3) {
  std::uniform_int_distribution<int> shape(0, 9);
  int s = shape(rng);
  if (s == 0) return MonomialIdeal::zero(ctx);
  if (s <= 2) {
    std::uniform_int_distribution<std::uint32_t> mask(1, ctx.full_mask());
    return MonomialIdeal::prime(ctx, mask(rng));
  }
  std::uniform_int_distribution<std::size_t> ng(1, max_gens);
  std::uniform_int_distribution<unsigned> e(0, max_exp);
  std::vector<Exponent> gens;
  for (std::size_t k = ng(rng); k > 0; --k) {
    Exponent g(ctx.nvars());
    for (auto& x : g) x = e(rng);
    gens.push_back(g);
  }
  return {ctx, gens};
}

inline MonomialModule random_monomial_module(std::mt19937_64& rng, const Backend& ctx, std::size_t max_summands = 2) {
  std::uniform_int_distribution<std::size_t> n(0, max_summands);
  std::vector<MonomialIdeal> s;
  for (std::size_t k = n(rng); k > 0; --k) s.push_back(random_monomial_ideal(rng, ctx));
  return {ctx, s};
}

}  // namespace subcat
