#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "subcat/error.hpp"
#include "subcat/zmod.hpp"

namespace subcat::oracle {

inline constexpr long kTorsionCap = 1L << 14;
inline constexpr std::size_t kSubgroupCap = 50000;

/// The torsion part of a ZModule as an explicit group ⊕ ℤ/qᵢ over its
/// elementary divisors qᵢ = pᵢ^eᵢ; elements are mixed-radix indices.
class FiniteAbelian {
 public:
  explicit FiniteAbelian(const ZModule& m) {
    if (m.torsion_order() > kTorsionCap) throw CapExceeded("torsion order of " + m.to_string() + " is above the brute-force cap");
    for (auto& [p, e] : m.elementary_divisors()) {
      primes_.push_back(p.get_si());
      orders_.push_back(pow_of(p, e).get_si());
    }
    size_ = 1;
    for (long q : orders_) size_ *= q;
  }

  long size() const { return size_; }
  const std::vector<long>& orders() const { return orders_; }
  const std::vector<long>& factor_primes() const { return primes_; }

  std::vector<long> coords(long idx) const {
    std::vector<long> v(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      v[i] = idx % orders_[i];
      idx /= orders_[i];
    }
    return v;
  }
  long index(const std::vector<long>& v) const {
    long idx = 0;
    for (std::size_t i = orders_.size(); i-- > 0;) idx = idx * orders_[i] + ((v[i] % orders_[i]) + orders_[i]) % orders_[i];
    return idx;
  }
  long add(long a, long b) const {
    long idx = 0, mul = 1;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      long q = orders_[i];
      idx += ((a % q + b % q) % q) * mul;
      a /= q;
      b /= q;
      mul *= q;
    }
    return idx;
  }
  long scale(long k, long a) const {
    long idx = 0, mul = 1;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      long q = orders_[i];
      idx += (((a % q) * (k % q)) % q + q) % q * mul;
      a /= q;
      mul *= q;
    }
    return idx;
  }

  /// Distinct primes, ascending.
  std::vector<long> primes() const {
    std::vector<long> p = primes_;
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    return p;
  }

 private:
  std::vector<long> orders_, primes_;
  long size_ = 1;
};

/// A subgroup as its sorted elements plus a membership mask.
struct Subgroup {
  std::vector<long> elems;
  std::vector<char> mask;
};

inline Subgroup make_subgroup(const FiniteAbelian& g, std::vector<long> elems) {
  std::sort(elems.begin(), elems.end());
  Subgroup h{std::move(elems), std::vector<char>(static_cast<std::size_t>(g.size()), 0)};
  for (long x : h.elems) h.mask[static_cast<std::size_t>(x)] = 1;
  return h;
}

/// H + <x> as the union of the cosets H + kx.
inline Subgroup join_element(const FiniteAbelian& g, const Subgroup& h, long x) {
  std::vector<long> out;
  long step = x;
  std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
  for (long y : h.elems) seen[static_cast<std::size_t>(y)] = 1;
  out = h.elems;
  while (!h.mask[static_cast<std::size_t>(step)]) {
    for (long y : h.elems) {
      long z = g.add(y, step);
      if (!seen[static_cast<std::size_t>(z)]) {
        seen[static_cast<std::size_t>(z)] = 1;
        out.push_back(z);
      }
    }
    step = g.add(step, x);
  }
  return make_subgroup(g, std::move(out));
}

/// Every subgroup, grown one generator at a time from {0}.
inline std::vector<Subgroup> all_subgroups(const FiniteAbelian& g) {
  std::set<std::vector<long>> seen;
  std::vector<Subgroup> out{make_subgroup(g, {0})};
  seen.insert(out.front().elems);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (long x = 0; x < g.size(); ++x) {
      if (out[i].mask[static_cast<std::size_t>(x)]) continue;
      Subgroup bigger = join_element(g, out[i], x);
      if (seen.insert(bigger.elems).second) {
        if (out.size() >= kSubgroupCap) throw CapExceeded("too many subgroups to enumerate");
        out.push_back(std::move(bigger));
      }
    }
  }
  return out;
}

namespace detail {

inline unsigned log_exact(long n, long p) {
  unsigned k = 0;
  while (n > 1) {
    n /= p;
    ++k;
  }
  return k;
}

// Elementary divisors from the counts c_k = |{x : p^k x ∈ H}| / |H|, taken
// over `pool` (the subgroup itself or the whole group).
inline ZModule type_from_counts(const FiniteAbelian& g, const std::vector<long>& pool, const Subgroup& h) {
  std::vector<std::pair<Integer, unsigned>> pe;
  const long base = static_cast<long>(h.elems.size());
  for (long p : g.primes()) {
    unsigned maxe = 0;
    for (std::size_t i = 0; i < g.orders().size(); ++i)
      if (g.factor_primes()[i] == p) maxe = std::max(maxe, log_exact(g.orders()[i], p));
    std::vector<unsigned> n(maxe + 1, 0);
    long pk = 1;
    for (unsigned k = 1; k <= maxe; ++k) {
      pk *= p;
      long c = 0;
      for (long x : pool)
        if (h.mask[static_cast<std::size_t>(g.scale(pk, x))]) ++c;
      n[k] = log_exact(c / base, p);
    }
    // n_k − n_{k−1} factors have exponent ≥ k
    for (unsigned k = 1; k <= maxe; ++k) {
      unsigned at_least_k = n[k] - n[k - 1];
      unsigned at_least_next = k < maxe ? n[k + 1] - n[k] : 0;
      for (unsigned c = at_least_next; c < at_least_k; ++c) pe.emplace_back(p, k);
    }
  }
  return ZModule::from_elementary(0, pe);
}

}  // namespace detail

/// Isomorphism type of the subgroup H.
inline ZModule subgroup_type(const FiniteAbelian& g, const Subgroup& h) {
  Subgroup zero = make_subgroup(g, {0});
  return detail::type_from_counts(g, h.elems, zero);
}

/// Isomorphism type of G/H.
inline ZModule quotient_type(const FiniteAbelian& g, const Subgroup& h) {
  std::vector<long> all(static_cast<std::size_t>(g.size()));
  for (long x = 0; x < g.size(); ++x) all[static_cast<std::size_t>(x)] = x;
  return detail::type_from_counts(g, all, h);
}

/// A small generating set of H (greedy).
inline std::vector<long> generators_of(const FiniteAbelian& g, const Subgroup& h) {
  Subgroup cur = make_subgroup(g, {0});
  std::vector<long> gens;
  for (long x : h.elems)
    if (!cur.mask[static_cast<std::size_t>(x)]) {
      gens.push_back(x);
      cur = join_element(g, cur, x);
    }
  return gens;
}

}  // namespace subcat::oracle
