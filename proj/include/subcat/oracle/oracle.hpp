#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "subcat/error.hpp"
#include "subcat/oracle/finite_group.hpp"
#include "subcat/zmod.hpp"

namespace subcat::oracle {

inline constexpr std::size_t kUniverseCap = 5000;
inline constexpr std::size_t kIterationCap = 10000;

/// ℤ^s ⊕ ⊕ ℤ/p^e with s ≤ max_rank, at most max_torsion_factors elementary
/// divisors, p from `primes`, e ≤ max_exponent.
struct Universe {
  std::vector<long> primes;
  unsigned max_exponent = 1;
  std::size_t max_rank = 0;
  std::size_t max_torsion_factors = 1;

  bool contains(const ZModule& m) const {
    if (m.free_rank() > max_rank) return false;
    auto ed = m.elementary_divisors();
    if (ed.size() > max_torsion_factors) return false;
    return std::all_of(ed.begin(), ed.end(), [&](auto& pe) {
      return pe.second <= max_exponent && std::find(primes.begin(), primes.end(), pe.first.get_si()) != primes.end();
    });
  }

  /// Product of p^max_exponent: every cyclic order inside the universe divides it.
  Integer exponent_bound() const {
    Integer l = 1;
    for (long p : primes) l *= pow_of(Integer(p), max_exponent);
    return l;
  }

  std::string to_string() const {
    std::string s = "primes={";
    for (std::size_t i = 0; i < primes.size(); ++i) s += (i ? "," : "") + std::to_string(primes[i]);
    return s + "} max_exp=" + std::to_string(max_exponent) + " max_rank=" + std::to_string(max_rank) +
           " max_factors=" + std::to_string(max_torsion_factors);
  }
};

/// Rank, then torsion order, then invariant factors.
inline bool universe_order(const ZModule& a, const ZModule& b) {
  if (a.free_rank() != b.free_rank()) return a.free_rank() < b.free_rank();
  Integer oa = a.torsion_order(), ob = b.torsion_order();
  if (oa != ob) return oa < ob;
  return a < b;
}

/// Torsion types of the universe (rank 0), in universe order.
inline std::vector<ZModule> torsion_types(const Universe& u, std::size_t cap = kUniverseCap) {
  std::vector<std::pair<Integer, unsigned>> atoms;
  for (long p : u.primes)
    for (unsigned e = 1; e <= u.max_exponent; ++e) atoms.emplace_back(p, e);
  std::vector<ZModule> out;
  std::vector<std::pair<Integer, unsigned>> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    out.push_back(ZModule::from_elementary(0, cur));
    if (out.size() > cap) throw CapExceeded("universe has more than " + std::to_string(cap) + " classes");
    if (cur.size() == u.max_torsion_factors) return;
    for (std::size_t i = start; i < atoms.size(); ++i) {
      cur.push_back(atoms[i]);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), universe_order);
  return out;
}

/// All isomorphism classes of the universe, deterministic order.
inline std::vector<ZModule> enumerate_universe(const Universe& u, std::size_t cap = kUniverseCap) {
  auto tors = torsion_types(u, cap);
  if (tors.size() * (u.max_rank + 1) > cap)
    throw CapExceeded("universe has more than " + std::to_string(cap) + " classes");
  std::vector<ZModule> out;
  for (std::size_t r = 0; r <= u.max_rank; ++r)
    for (auto& t : tors) out.emplace_back(r, t.invariant_factors());
  std::sort(out.begin(), out.end(), universe_order);
  return out;
}

enum Op : unsigned {
  Subobjects = 1u << 0,
  Quotients = 1u << 1,
  Extensions = 1u << 2,
  Kernels = 1u << 3,
  Cokernels = 1u << 4,
  FiniteSums = 1u << 5,
  Summands = 1u << 6,
  Images = 1u << 7,
};
using OpSet = unsigned;

inline std::string op_name(Op op) {
  switch (op) {
    case Subobjects: return "subobjects";
    case Quotients: return "quotients";
    case Extensions: return "extensions";
    case Kernels: return "kernels";
    case Cokernels: return "cokernels";
    case FiniteSums: return "finite_sums";
    case Summands: return "summands";
    default: return "images";
  }
}

inline const std::vector<Op>& all_ops() {
  static const std::vector<Op> ops{Subobjects, Quotients, Extensions, Kernels, Cokernels, FiniteSums, Summands, Images};
  return ops;
}

/// Set of iso classes, canonical forms.
using TypeSet = std::set<ZModule>;

/// Types produced by an operation plus whether some result necessarily falls
/// outside the universe that was used to enumerate candidates.
struct OpResult {
  TypeSet types;
  bool escapes = false;
};

/// Brute-force operations with caches. One instance per universe.
class Oracle {
 public:
  explicit Oracle(Universe u) : u_(std::move(u)) {}

  const Universe& universe() const { return u_; }

  /// Subgroup types: ℤ^s ⊕ T' for s ≤ rank and T' a subgroup type of the torsion part.
  TypeSet subobject_types(const ZModule& m) {
    TypeSet out;
    for (auto& t : data(m).sub_types)
      for (std::size_t s = 0; s <= m.free_rank(); ++s) out.emplace(s, t.invariant_factors());
    return out;
  }

  /// Quotient types with torsion part drawn from the universe. `escapes` is set
  /// when M has a free part (ℤ ↠ ℤ/q for q outside the universe).
  OpResult quotient_types(const ZModule& m) {
    OpResult r;
    const std::size_t rank = m.free_rank();
    for (std::size_t s = 0; s <= rank; ++s) {
      const std::size_t k = rank - s;
      if (k == 0) {
        for (auto& t : data(m).quot_types) r.types.emplace(s, t.invariant_factors());
        continue;
      }
      for (auto& tb : torsion_candidates())
        if (is_quotient_of(tb, k, m)) r.types.emplace(s, tb.invariant_factors());
    }
    r.escapes = rank > 0;
    return r;
  }

  /// Middle terms of 0 → A → B → C → 0. Ext¹(C, A) splits over the primes of
  /// C and the p-torsion of B depends only on the p-component of the class,
  /// so each prime is enumerated on its own and the parts are combined.
  TypeSet extension_types(const ZModule& a, const ZModule& c) {
    auto key = std::make_pair(a, c);
    if (auto it = ext_cache_.find(key); it != ext_cache_.end()) return it->second;
    const auto ea = a.elementary_divisors(), ec = c.elementary_divisors();
    std::set<Integer> primes;
    for (auto& pe : ea) primes.insert(pe.first);
    for (auto& pe : ec) primes.insert(pe.first);
    using Parts = std::vector<std::pair<Integer, unsigned>>;
    auto part = [](const Parts& ed, const Integer& p) {
      Parts out;
      for (auto& pe : ed)
        if (pe.first == p) out.push_back(pe);
      return out;
    };
    std::vector<Parts> partial{{}};
    for (auto& p : primes) {
      std::set<Parts> local;
      for (auto& b : extensions_direct(ZModule::from_elementary(a.free_rank(), part(ea, p)), ZModule::from_elementary(0, part(ec, p))))
        local.insert(b.elementary_divisors());
      std::vector<Parts> next;
      for (auto& acc : partial)
        for (auto& l : local) {
          Parts joined = acc;
          joined.insert(joined.end(), l.begin(), l.end());
          next.push_back(std::move(joined));
        }
      partial = std::move(next);
    }
    TypeSet out;
    for (auto& pe : partial) out.insert(ZModule::from_elementary(a.free_rank() + c.free_rank(), pe));
    ext_cache_[key] = out;
    return out;
  }

 private:
  // One middle term per representative of ⊕_j A/m_j A.
  TypeSet extensions_direct(const ZModule& a, const ZModule& c) const {
    const std::size_t na = a.ngens(), nc = c.ngens();
    // representatives of A/m_j A for each torsion generator of C
    std::vector<std::vector<std::vector<Integer>>> reps;
    std::size_t total = 1;
    for (std::size_t j = 0; j < c.torsion_count(); ++j) {
      const Integer& m = c.invariant_factors()[j];
      std::vector<Integer> box(na);
      for (std::size_t i = 0; i < na; ++i) box[i] = a.generator_order(i) == 0 ? m : gcd_of(a.generator_order(i), m);
      // α and u·α (u a unit mod m) differ by an automorphism of ℤ/m
      std::vector<Integer> units;
      for (Integer u = 2; u < m; ++u)
        if (gcd_of(u, m) == 1) units.push_back(u);
      auto canonical = [&](const std::vector<Integer>& v) {
        for (auto& u : units) {
          std::vector<Integer> w(na);
          for (std::size_t i = 0; i < na; ++i) w[i] = mod_floor(u * v[i], box[i]);
          if (w < v) return false;
        }
        return true;
      };
      std::vector<std::vector<Integer>> rj;
      std::vector<Integer> v(na, 0);
      for (;;) {
        if (canonical(v)) rj.push_back(v);
        std::size_t i = 0;
        while (i < na && v[i] + 1 == box[i]) v[i++] = 0;
        if (i == na) break;
        ++v[i];
      }
      total *= rj.size();
      if (total > 200000) throw CapExceeded("too many extension classes of " + c.to_string() + " by " + a.to_string());
      reps.push_back(std::move(rj));
    }
    TypeSet out;
    std::vector<std::size_t> pick(reps.size(), 0);
    for (;;) {
      IntMatrix rel(na + nc, a.torsion_count() + c.torsion_count());
      for (std::size_t i = 0; i < a.torsion_count(); ++i) rel(i, i) = a.invariant_factors()[i];
      for (std::size_t j = 0; j < c.torsion_count(); ++j) {
        const std::size_t col = a.torsion_count() + j;
        rel(na + j, col) = c.invariant_factors()[j];
        const auto& alpha = reps[j][pick[j]];
        for (std::size_t i = 0; i < na; ++i) rel(i, col) = -alpha[i];
      }
      out.insert(from_presentation(rel));
      // equal cyclic factors of C may be swapped: keep picks ascending on them
      std::size_t j = 0;
      while (j < pick.size() && pick[j] + 1 == reps[j].size()) ++j;
      if (j == pick.size()) break;
      ++pick[j];
      for (std::size_t k = j; k-- > 0;)
        pick[k] = k + 1 < pick.size() && c.invariant_factors()[k] == c.invariant_factors()[k + 1] ? pick[k + 1] : 0;
    }
    return out;
  }

 public:

  /// Kernel types of all maps X → Y (ranks ≤ 1).
  TypeSet kernel_types(const ZModule& x, const ZModule& y) {
    require_small_rank(x, y);
    TypeSet out;
    const auto& dx = data(x);
    const TypeSet ysub(data(y).sub_types.begin(), data(y).sub_types.end());
    for (std::size_t i = 0; i < dx.subgroups.size(); ++i) {
      if (!ysub.count(dx.quot_of[i])) continue;  // T_X/K must embed in T_Y
      const ZModule& k = dx.sub_of[i];
      if (x.free_rank() == 0 || y.free_rank() == 1) out.insert(k);
      if (x.free_rank() == 1) out.emplace(1, k.invariant_factors());
    }
    return out;
  }

  /// Cokernel types of all maps X → Y (ranks ≤ 1). `escapes` is set when a
  /// map ℤ → ℤ of degree n outside the universe exists (X and Y both of rank 1).
  OpResult cokernel_types(const ZModule& x, const ZModule& y) {
    require_small_rank(x, y);
    OpResult r;
    const auto& dy = data(y);
    const ZModule ty(0, y.invariant_factors());
    for (std::size_t i = 0; i < dy.subgroups.size(); ++i)
      if (image_of(dy.sub_of[i], x.free_rank(), x)) r.types.emplace(y.free_rank(), dy.quot_of[i].invariant_factors());
    if (x.free_rank() == 1 && y.free_rank() == 1) {
      // f(1) = (n, t) with n ≠ 0: coker = (ℤ ⊕ T_Y) / <(n, t), h(T_X)>
      std::vector<Integer> ns;
      for (auto& d : divisors(u_.exponent_bound())) ns.push_back(d);
      ns.push_back(outside_prime());
      const FiniteAbelian& g = dy.group;
      const std::size_t m = g.orders().size();
      for (std::size_t i = 0; i < dy.subgroups.size(); ++i) {
        if (!image_of(dy.sub_of[i], 0, x)) continue;
        const Subgroup& h0 = dy.subgroups[i];
        auto hgens = generators_of(g, h0);
        std::vector<char> coset_seen(static_cast<std::size_t>(g.size()), 0);
        for (long t = 0; t < g.size(); ++t) {
          if (coset_seen[static_cast<std::size_t>(t)]) continue;
          for (long h : h0.elems) coset_seen[static_cast<std::size_t>(g.add(t, h))] = 1;
          auto tc = g.coords(t);
          for (auto& n : ns) {
            IntMatrix rel(m + 1, m + hgens.size() + 1);
            for (std::size_t a = 0; a < m; ++a) rel(a, a) = g.orders()[a];
            for (std::size_t b = 0; b < hgens.size(); ++b) {
              auto hc = g.coords(hgens[b]);
              for (std::size_t a = 0; a < m; ++a) rel(a, m + b) = hc[a];
            }
            const std::size_t last = m + hgens.size();
            for (std::size_t a = 0; a < m; ++a) rel(a, last) = tc[a];
            rel(m, last) = n;
            ZModule q = from_presentation(rel);
            if (!u_.contains(q)) r.escapes = true;
            r.types.insert(q);
          }
        }
      }
    }
    return r;
  }

  /// Image types: subobjects of Y that are quotients of X.
  TypeSet image_types(const ZModule& x, const ZModule& y) {
    TypeSet out;
    for (auto& i : subobject_types(y))
      if (i.free_rank() <= x.free_rank() && is_quotient_of(ZModule(0, i.invariant_factors()), x.free_rank() - i.free_rank(), x))
        out.insert(i);
    return out;
  }

  /// Direct summands: ℤ^s ⊕ (sub-multiset of the elementary divisors).
  TypeSet summand_types(const ZModule& m) {
    TypeSet out;
    auto ed = m.elementary_divisors();
    const std::size_t n = ed.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<std::pair<Integer, unsigned>> pick;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1u) pick.push_back(ed[i]);
      for (std::size_t s = 0; s <= m.free_rank(); ++s) out.insert(ZModule::from_elementary(s, pick));
    }
    return out;
  }

  /// Results of one operation applied to a member (unary) or an ordered pair.
  OpResult unary(Op op, const ZModule& m) {
    switch (op) {
      case Subobjects: return {subobject_types(m), false};
      case Quotients: return quotient_types(m);
      case Summands: return {summand_types(m), false};
      default: return {};
    }
  }
  OpResult binary(Op op, const ZModule& a, const ZModule& b) {
    auto key = std::make_tuple(op, a, b);
    if (auto it = op_cache_.find(key); it != op_cache_.end()) return it->second;
    return op_cache_[key] = binary_uncached(op, a, b);
  }
  static bool is_unary(Op op) { return op == Subobjects || op == Quotients || op == Summands; }

 private:
  OpResult binary_uncached(Op op, const ZModule& a, const ZModule& b) {
    switch (op) {
      case Extensions: return {extension_types(a, b), false};
      case Kernels: return {kernel_types(a, b), false};
      case Cokernels: return cokernel_types(a, b);
      case FiniteSums: return {{direct_sum(a, b)}, false};
      case Images: return {image_types(a, b), false};
      default: return {};
    }
  }

  struct TorsionData {
    FiniteAbelian group;
    std::vector<Subgroup> subgroups;
    std::vector<ZModule> sub_of, quot_of;  // per subgroup
    std::vector<ZModule> sub_types, quot_types;  // deduplicated
  };

  const TorsionData& data(const ZModule& m) {
    const auto& key = m.invariant_factors();
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    TorsionData d{FiniteAbelian(ZModule(0, key)), {}, {}, {}, {}, {}};
    d.subgroups = all_subgroups(d.group);
    TypeSet st, qt;
    for (auto& h : d.subgroups) {
      d.sub_of.push_back(subgroup_type(d.group, h));
      d.quot_of.push_back(quotient_type(d.group, h));
      st.insert(d.sub_of.back());
      qt.insert(d.quot_of.back());
    }
    d.sub_types.assign(st.begin(), st.end());
    d.quot_types.assign(qt.begin(), qt.end());
    return cache_.emplace(key, std::move(d)).first->second;
  }

  const std::vector<ZModule>& torsion_candidates() {
    if (!candidates_) candidates_ = torsion_types(u_);
    return *candidates_;
  }

  /// Q (finite) is a quotient of ℤ^k ⊕ T_M: some H' ≤ Q is a quotient of T_M
  /// and Q/H' needs at most k generators.
  bool is_quotient_of(const ZModule& q, std::size_t k, const ZModule& m) {
    const auto& dq = data(q);
    const auto& qm = data(m).quot_types;
    const TypeSet quot_m(qm.begin(), qm.end());
    for (std::size_t i = 0; i < dq.subgroups.size(); ++i)
      if (quot_m.count(dq.sub_of[i]) && dq.quot_of[i].torsion_count() <= k) return true;
    return false;
  }

  /// H (a subgroup type of T_Y) is the image of a map from ℤ^k ⊕ T_X.
  bool image_of(const ZModule& h, std::size_t k, const ZModule& x) { return is_quotient_of(h, k, x); }

  void require_small_rank(const ZModule& x, const ZModule& y) const {
    if (x.free_rank() > 1 || y.free_rank() > 1)
      throw CapExceeded("kernel/cokernel enumeration handles free rank at most 1");
  }

  Integer outside_prime() const {
    Integer p = 2;
    while (std::find(u_.primes.begin(), u_.primes.end(), p.get_si()) != u_.primes.end()) mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    return p;
  }

  static std::vector<Integer> divisors(const Integer& n) {
    std::vector<Integer> out{1};
    for (auto& [p, e] : factorize(n)) {
      std::size_t cur = out.size();
      Integer pk = 1;
      for (unsigned k = 1; k <= e; ++k) {
        pk *= p;
        for (std::size_t i = 0; i < cur; ++i) out.push_back(out[i] * pk);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  Universe u_;
  std::map<std::vector<Integer>, TorsionData> cache_;
  std::map<std::pair<ZModule, ZModule>, TypeSet> ext_cache_;
  std::map<std::tuple<Op, ZModule, ZModule>, OpResult> op_cache_;
  std::optional<std::vector<ZModule>> candidates_;
};

// ---------------------------------------------------------------------------
// Closures

struct ClosureResult {
  std::vector<ZModule> members;  // universe order
  bool clipped = false;
  std::size_t clip_events = 0;
  std::vector<ZModule> escaped;  // distinct out-of-universe results seen
  std::size_t iterations = 0;

  bool contains(const ZModule& m) const { return std::find(members.begin(), members.end(), m) != members.end(); }
};

/// Least fixed point inside the universe of the chosen operations.
inline ClosureResult close(Oracle& o, const std::vector<ZModule>& gens, OpSet kinds) {
  const Universe& u = o.universe();
  ClosureResult r;
  TypeSet in, escaped;
  std::vector<ZModule> processed;
  std::deque<ZModule> queue;
  auto offer = [&](const ZModule& m) {
    if (!u.contains(m)) {
      r.clipped = true;
      ++r.clip_events;
      escaped.insert(m);
      return;
    }
    if (in.insert(m).second) queue.push_back(m);
  };
  for (auto& g : gens) {
    if (!u.contains(g)) throw Error("generator " + g.to_string() + " lies outside the universe");
    offer(g);
  }
  if (gens.empty()) offer(ZModule::zero());
  auto absorb = [&](const OpResult& res) {
    for (auto& t : res.types) offer(t);
    if (res.escapes) {
      r.clipped = true;
      ++r.clip_events;
    }
  };
  while (!queue.empty()) {
    if (++r.iterations > kIterationCap) throw CapExceeded("closure did not settle within the iteration cap");
    ZModule m = queue.front();
    queue.pop_front();
    processed.push_back(m);
    for (Op op : all_ops()) {
      if (!(kinds & op)) continue;
      if (Oracle::is_unary(op)) {
        absorb(o.unary(op, m));
        continue;
      }
      for (auto& n : processed) {
        absorb(o.binary(op, m, n));
        if (!(n == m)) absorb(o.binary(op, n, m));
      }
    }
  }
  r.members.assign(in.begin(), in.end());
  std::sort(r.members.begin(), r.members.end(), universe_order);
  r.escaped.assign(escaped.begin(), escaped.end());
  return r;
}

inline ClosureResult close(const std::vector<ZModule>& gens, OpSet kinds, const Universe& u) {
  Oracle o(u);
  return close(o, gens, kinds);
}

struct CheckResult {
  bool closed = true;
  std::optional<ZModule> counterexample;
  std::string witness;  // which member(s) produced it
};

/// Whether `subset` is closed under `property` within the universe.
inline CheckResult check_closed(Oracle& o, const std::vector<ZModule>& subset, Op property) {
  const Universe& u = o.universe();
  const TypeSet have(subset.begin(), subset.end());
  auto test = [&](const OpResult& res, const std::string& from) -> std::optional<CheckResult> {
    for (auto& t : res.types)
      if (u.contains(t) && !have.count(t)) return CheckResult{false, t, from};
    return std::nullopt;
  };
  for (auto& m : subset) {
    if (!u.contains(m)) throw Error(m.to_string() + " lies outside the universe");
    if (Oracle::is_unary(property)) {
      if (auto bad = test(o.unary(property, m), op_name(property) + " of " + m.to_string())) return *bad;
      continue;
    }
    for (auto& n : subset)
      if (auto bad = test(o.binary(property, m, n), op_name(property) + " of (" + m.to_string() + ", " + n.to_string() + ")"))
        return *bad;
  }
  return {};
}

inline CheckResult check_closed(const std::vector<ZModule>& subset, Op property, const Universe& u) {
  Oracle o(u);
  return check_closed(o, subset, property);
}

// Convenience wrappers with a throwaway oracle.
inline TypeSet subobject_types(const ZModule& m) { return Oracle(Universe{}).subobject_types(m); }
inline OpResult quotient_types(const ZModule& m, const Universe& u) { return Oracle(u).quotient_types(m); }
inline TypeSet extension_types(const ZModule& a, const ZModule& c) { return Oracle(Universe{}).extension_types(a, c); }

}  // namespace subcat::oracle
