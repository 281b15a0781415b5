#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "subcat/error.hpp"
#include "subcat/monomial.hpp"
#include "subcat/random_modules.hpp"
#include "subcat/spec.hpp"
#include "subcat/zmod.hpp"

namespace subcat {

/// A finitely generated module over either backend.
using Module = std::variant<ZModule, MonomialModule>;

inline Backend backend_of(const Module& m) {
  if (std::holds_alternative<ZModule>(m)) return Backend::integers();
  return std::get<MonomialModule>(m).context();
}

inline SpecSubset ass_of(const Module& m) {
  return std::visit([](const auto& x) { return ass(x); }, m);
}
inline SpecSubset supp_of(const Module& m) {
  return std::visit([](const auto& x) { return supp(x); }, m);
}
inline bool is_zero_module(const Module& m) {
  return std::visit([](const auto& x) { return x.is_zero(); }, m);
}
inline std::string to_string(const Module& m) {
  return std::visit([](const auto& x) { return x.to_string(); }, m);
}

/// R/p.
inline Module residue_module(const Backend& b, const PrimeId& p) {
  if (p.backend() != b.kind) throw BackendMismatch("prime does not belong to " + b.to_string());
  if (b.kind == BackendKind::Monomial) return MonomialModule::cyclic(MonomialIdeal::prime(b, p.vars));
  if (p.kind == PrimeId::Kind::ZGeneric) return ZModule::free(1);
  return ZModule::cyclic(p.p);
}

namespace detail {

inline void require_backend(const Module& m, const Backend& b) {
  if (!(backend_of(m) == b)) throw BackendMismatch("module over " + backend_of(m).to_string() + ", expected " + b.to_string());
}

inline void require_closed(const SpecSubset& s) {
  if (!is_specialization_closed(s)) throw Error("criterion set " + s.to_string() + " is not specialization-closed");
}

}  // namespace detail

enum class ClosureKind { Torsion, Serre, Coherent, SubExt };

inline std::string to_string(ClosureKind k) {
  switch (k) {
    case ClosureKind::Torsion: return "torsion";
    case ClosureKind::Serre: return "serre";
    case ClosureKind::Coherent: return "coherent";
    default: return "subext";
  }
}

// ---------------------------------------------------------------------------
// The lattice maps

/// Supp M ⊆ S, S specialization-closed.
inline bool sigma_member(const Module& m, const SpecSubset& s) {
  detail::require_closed(s);
  detail::require_backend(m, s.backend());
  return leq(supp_of(m), s);
}

/// Join of the supports.
inline SpecSubset tau(const Backend& b, const std::vector<Module>& gens) {
  SpecSubset s = SpecSubset::empty(b);
  for (auto& m : gens) {
    detail::require_backend(m, b);
    s = lattice_join(s, supp_of(m));
  }
  return s;
}

// Same formulas on finitely generated modules.
inline bool phi_member(const Module& m, const SpecSubset& s) { return sigma_member(m, s); }
inline SpecSubset psi(const Backend& b, const std::vector<Module>& gens) { return tau(b, gens); }

/// Ass M ⊆ S for an arbitrary S.
inline bool Phi_member(const Module& m, const SpecSubset& s) {
  detail::require_backend(m, s.backend());
  return leq(ass_of(m), s);
}

/// Union of the associated primes, not closed.
inline SpecSubset Psi(const Backend& b, const std::vector<Module>& gens) {
  std::vector<PrimeId> g;
  for (auto& m : gens) {
    detail::require_backend(m, b);
    const SpecSubset a = ass_of(m);
    g.insert(g.end(), a.generators().begin(), a.generators().end());
  }
  return SpecSubset(b, std::move(g), false);
}

/// Membership in the subcategory of the given kind generated by gens.
inline bool generated_member(const Module& m, const std::vector<Module>& gens, ClosureKind kind, const Backend& b) {
  detail::require_backend(m, b);
  if (kind == ClosureKind::SubExt) return Phi_member(m, Psi(b, gens));
  return sigma_member(m, tau(b, gens));
}

/// A lattice element as a finite description: a criterion set or a list of
/// generators.
class SubcatSpec {
 public:
  static SubcatSpec by_criterion(ClosureKind k, SpecSubset s) {
    if (k != ClosureKind::SubExt) detail::require_closed(s);
    SubcatSpec out;
    out.kind_ = k;
    out.backend_ = s.backend();
    out.data_ = std::move(s);
    return out;
  }
  static SubcatSpec by_generators(ClosureKind k, Backend b, std::vector<Module> gens) {
    for (auto& m : gens) detail::require_backend(m, b);
    SubcatSpec out;
    out.kind_ = k;
    out.backend_ = std::move(b);
    out.data_ = std::move(gens);
    return out;
  }

  ClosureKind kind() const { return kind_; }
  const Backend& backend() const { return backend_; }
  bool is_criterion() const { return std::holds_alternative<SpecSubset>(data_); }

  /// The criterion set (Supp-level for Torsion/Serre/Coherent, Ass-level for SubExt).
  SpecSubset criterion() const {
    if (is_criterion()) return std::get<SpecSubset>(data_);
    const auto& g = std::get<std::vector<Module>>(data_);
    return kind_ == ClosureKind::SubExt ? Psi(backend_, g) : tau(backend_, g);
  }

  SubcatSpec normalized() const { return by_criterion(kind_, criterion()); }

  bool contains(const Module& m) const {
    return kind_ == ClosureKind::SubExt ? Phi_member(m, criterion()) : sigma_member(m, criterion());
  }

  SubcatSpec with_kind(ClosureKind k) const {
    SubcatSpec out = *this;
    out.kind_ = k;
    return out;
  }

  std::string to_string() const { return subcat::to_string(kind_) + ":" + criterion().to_string(); }

 private:
  SubcatSpec() = default;
  ClosureKind kind_ = ClosureKind::Serre;
  Backend backend_;
  std::variant<SpecSubset, std::vector<Module>> data_;
};

/// Torsion class generated by a Serre subcategory: the same description.
inline SubcatSpec nu(const SubcatSpec& serre) {
  if (serre.kind() != ClosureKind::Serre && serre.kind() != ClosureKind::Coherent)
    throw Error("nu expects a Serre description");
  return serre.with_kind(ClosureKind::Torsion);
}

/// Restriction of a torsion class to finitely generated modules.
inline SubcatSpec mu(const SubcatSpec& torsion) {
  if (torsion.kind() != ClosureKind::Torsion) throw Error("mu expects a torsion-class description");
  return torsion.with_kind(ClosureKind::Serre);
}

// ---------------------------------------------------------------------------
// Probe families and adjunctions

inline std::vector<std::vector<PrimeId>> subsets_up_to(const std::vector<PrimeId>& pool, std::size_t k) {
  std::vector<std::vector<PrimeId>> out{{}};
  for (auto& p : pool) {
    std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i)
      if (out[i].size() < k) {
        auto s = out[i];
        s.push_back(p);
        out.push_back(s);
      }
  }
  return out;
}

/// Primes every probe draws from: (0), (2), (3), (5), (7) over ℤ; every
/// monomial prime otherwise.
inline std::vector<PrimeId> probe_window(const Backend& b) {
  if (b.kind == BackendKind::Monomial) return all_monomial_primes(b);
  std::vector<PrimeId> w{PrimeId::generic()};
  for (long p : {2, 3, 5, 7}) w.push_back(PrimeId::maximal(p));
  return w;
}

struct ProbeFamily {
  Backend backend;
  std::vector<SpecSubset> closed_sets;
  std::vector<SpecSubset> arbitrary_sets;
  std::vector<std::vector<Module>> generator_lists;
  std::vector<Module> modules;
};

/// Closed sets with at most max_gens generators from the window (deduplicated),
/// the matching arbitrary sets, residue modules R/p, and generator lists of
/// length ≤ 2.
inline ProbeFamily default_probe_family(const Backend& b, std::size_t max_gens = 3) {
  ProbeFamily f;
  f.backend = b;
  auto window = probe_window(b);
  for (auto& g : subsets_up_to(window, max_gens)) {
    SpecSubset c = specialization_closure(b, g);
    if (std::none_of(f.closed_sets.begin(), f.closed_sets.end(), [&](auto& s) { return s == c; }))
      f.closed_sets.push_back(c);
    f.arbitrary_sets.emplace_back(b, g, false);
  }
  for (auto& p : window) f.modules.push_back(residue_module(b, p));
  if (b.kind == BackendKind::Z) {
    f.modules.push_back(ZModule::zero());
    f.modules.push_back(ZModule::cyclic(4));
    f.modules.push_back(ZModule::cyclic(12));
    f.modules.push_back(ZModule(1, {4}));
    f.modules.push_back(ZModule(0, {3, 9}));
  } else {
    f.modules.push_back(MonomialModule(b));
    if (b.nvars() >= 2) {
      Exponent a(b.nvars(), 0), c(b.nvars(), 0);
      a[0] = 2;
      c[0] = c[1] = 1;
      f.modules.push_back(MonomialModule::cyclic(MonomialIdeal(b, {a, c})));
    }
  }
  std::size_t nres = window.size();
  f.generator_lists.push_back({});
  for (auto& m : f.modules) f.generator_lists.push_back({m});
  for (std::size_t i = 0; i < nres; ++i)
    for (std::size_t j = i + 1; j < nres; ++j) f.generator_lists.push_back({f.modules[i], f.modules[j]});
  return f;
}

enum class AdjointPair { TauSigma, NuMu, PsiPhi };

inline std::string to_string(AdjointPair p) {
  switch (p) {
    case AdjointPair::TauSigma: return "tau-sigma";
    case AdjointPair::NuMu: return "nu-mu";
    default: return "Psi-Phi";
  }
}

struct AdjunctionReport {
  std::string pair;
  std::size_t checked = 0;
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};

/// left(a) ≤ b ⟺ a ≤ right(b) over the probe family. The lattice side uses
/// set containment; the subcategory side compares memberships of every probe
/// module (generators are always probes).
inline AdjunctionReport adjunction_check(AdjointPair pair, const ProbeFamily& f) {
  AdjunctionReport r;
  r.pair = to_string(pair);
  const Backend& b = f.backend;
  std::vector<Module> probes = f.modules;
  for (auto& g : f.generator_lists) probes.insert(probes.end(), g.begin(), g.end());

  auto record = [&](bool lhs, bool rhs, const std::string& a, const std::string& c) {
    ++r.checked;
    if (lhs != rhs)
      r.violations.push_back(r.pair + ": a=" + a + " b=" + c + " left=" + (lhs ? "true" : "false") +
                             " right=" + (rhs ? "true" : "false"));
  };
  auto list_string = [](const std::vector<Module>& g) {
    std::string s = "[";
    for (std::size_t i = 0; i < g.size(); ++i) s += (i ? ", " : "") + to_string(g[i]);
    return s + "]";
  };

  switch (pair) {
    case AdjointPair::TauSigma:
      for (auto& a : f.generator_lists)
        for (auto& s : f.closed_sets) {
          bool lhs = leq(tau(b, a), s);
          bool rhs = std::all_of(probes.begin(), probes.end(), [&](const Module& p) {
            return !generated_member(p, a, ClosureKind::Torsion, b) || sigma_member(p, s);
          });
          record(lhs, rhs, list_string(a), s.to_string());
        }
      break;
    case AdjointPair::NuMu:
      for (auto& sa : f.closed_sets)
        for (auto& sb : f.closed_sets) {
          auto a = SubcatSpec::by_criterion(ClosureKind::Serre, sa);
          auto c = SubcatSpec::by_criterion(ClosureKind::Torsion, sb);
          auto na = nu(a), mc = mu(c);
          bool lhs = std::all_of(probes.begin(), probes.end(), [&](auto& p) { return !na.contains(p) || c.contains(p); });
          bool rhs = std::all_of(probes.begin(), probes.end(), [&](auto& p) { return !a.contains(p) || mc.contains(p); });
          record(lhs, rhs, sa.to_string(), sb.to_string());
        }
      break;
    case AdjointPair::PsiPhi:
      for (auto& a : f.generator_lists)
        for (auto& s : f.arbitrary_sets) {
          bool lhs = leq(Psi(b, a), s);
          bool rhs = std::all_of(probes.begin(), probes.end(), [&](const Module& p) {
            return !generated_member(p, a, ClosureKind::SubExt, b) || Phi_member(p, s);
          });
          record(lhs, rhs, list_string(a), s.to_string());
        }
      break;
  }
  return r;
}

/// τσ(S) = S on the window: the residue modules R/p inside σ(S) have
/// supports joining back to S.
inline bool tau_sigma_identity(const SpecSubset& s) {
  detail::require_closed(s);
  std::vector<Module> fam;
  for (auto& p : probe_window(s.backend())) {
    Module m = residue_module(s.backend(), p);
    if (sigma_member(m, s)) fam.push_back(m);
  }
  const SpecSubset back = tau(s.backend(), fam);
  if (!s.is_infinite()) return same_set(back, s);
  // an infinite closed set over ℤ: compare on the window
  for (auto& p : probe_window(s.backend()))
    if (back.contains(p) != s.contains(p)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Round trip of Φ and Ψ

struct RoundtripReport {
  std::string backend;
  std::uint64_t seed = 0;
  std::size_t sets_checked = 0;
  std::size_t membership_checks = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// Ψ of the Φ-members among R/p (p in the window) against S, for every S with
/// ≤ max_gens window generators; for closed S also Φ ≡ φ on `probes` random
/// modules, τσ = id and μν = id.
inline RoundtripReport roundtrip_suite(const Backend& b, std::size_t probes = 200, std::uint64_t seed = 1,
                                       std::size_t max_gens = 4) {
  RoundtripReport r;
  r.backend = b.to_string();
  r.seed = seed;
  std::mt19937_64 rng(seed);
  std::vector<Module> random_probes;
  for (std::size_t i = 0; i < probes; ++i) {
    if (b.kind == BackendKind::Z) random_probes.push_back(random_zmodule(rng));
    else random_probes.push_back(random_monomial_module(rng, b));
  }
  const auto window = probe_window(b);
  for (auto& g : subsets_up_to(window, max_gens))
    for (bool closed : {false, true}) {
      SpecSubset s(b, g, closed);
      ++r.sets_checked;
      std::vector<Module> fam;
      for (auto& p : window) {
        Module m = residue_module(b, p);
        if (Phi_member(m, s)) fam.push_back(m);
      }
      SpecSubset back = Psi(b, fam);
      bool ok = leq(back, s);
      if (s.is_infinite()) {
        for (auto& p : window) ok = ok && back.contains(p) == s.contains(p);
      } else {
        ok = ok && same_set(back, s);
      }
      if (!ok) r.failures.push_back("Psi(Phi(" + s.to_string() + ")) = " + back.to_string());
      if (!closed) continue;
      for (auto& m : random_probes) {
        ++r.membership_checks;
        if (Phi_member(m, s) != phi_member(m, s))
          r.failures.push_back("Phi/phi disagree on " + to_string(m) + " for " + s.to_string());
      }
      if (!tau_sigma_identity(s)) r.failures.push_back("tau sigma != id on " + s.to_string());
      auto spec = SubcatSpec::by_criterion(ClosureKind::Serre, s);
      if (!same_set(mu(nu(spec)).criterion(), s)) r.failures.push_back("mu nu != id on " + s.to_string());
    }
  return r;
}

// ---------------------------------------------------------------------------
// The ten example correspondences

struct ExampleReport {
  int item = 0;
  std::string backend;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t agreements = 0;
  std::size_t left_true = 0;  // how often the module-side predicate held
  std::optional<std::string> counterexample;
  bool passed() const { return !counterexample && agreements == trials; }
};

inline bool example_supported(int item, BackendKind k) {
  if (item < 1 || item > 10) return false;
  if (k == BackendKind::Z) return true;
  return item == 1 || item == 6 || item == 8 || item == 9 || item == 10;
}

/// grade(ℤ/p, X) (or grade(ℤ, X) for p = (0)) from the shape of X.
inline ExtCount prime_grade(const PrimeId& p, const ZModule& x) {
  if (p.kind == PrimeId::Kind::ZGeneric) return x.is_zero() ? ExtCount::infinity() : ExtCount::finite(0);
  for (auto& [q, e] : x.elementary_divisors())
    if (q == p.p) return ExtCount::finite(0);
  return x.free_rank() > 0 ? ExtCount::finite(1) : ExtCount::infinity();
}

namespace detail {

inline bool all_ass(const SpecSubset& a, const std::function<bool(const PrimeId&)>& pred) {
  const auto ms = *a.members();
  return std::all_of(ms.begin(), ms.end(), pred);
}

/// Largest prime dividing the torsion order, at least 1.
inline Integer torsion_prime_bound(const ZModule& m) {
  Integer b = 1;
  for (auto& [p, e] : m.elementary_divisors()) b = std::max(b, p);
  return b;
}

inline bool multiplication_injective(const ZModule& m, const Integer& a) {
  return is_injective(ZModuleMap::scalar(m, a));
}

inline bool grade_at_least(const ZModule& n, const ZModule& m, std::uint64_t k) {
  if (n.is_zero()) return true;  // empty infimum
  return grade_module(n, m) >= ExtCount::finite(k);
}

inline bool prime_contains_ideal(std::uint32_t p, const MonomialIdeal& i) {
  return std::all_of(i.generators().begin(), i.generators().end(),
                     [&](auto& g) { return (mono::support(g) & p) != 0; });
}

struct Trial {
  bool lhs = false, rhs = false, consistent = true;
  std::string detail;
};

inline Trial z_trial(int item, std::mt19937_64& rng) {
  Trial t;
  ZModule m = random_zmodule(rng, 2);
  const SpecSubset a = ass(m);
  std::uniform_int_distribution<long> ideal_gen(0, 40);
  std::uniform_int_distribution<std::uint64_t> small(0, 2);
  t.detail = "M=" + m.to_string();
  switch (item) {
    case 1: {
      IdealZ i(ideal_gen(rng));
      SpecSubset v = v_of_integer(i.n);
      t.lhs = is_torsion_for(i, m);
      t.rhs = all_ass(a, [&](auto& p) { return v.contains(p); });
      t.detail += " I=" + i.to_string();
      break;
    }
    case 2: {
      ZModule x = random_zmodule(rng);
      SpecSubset sx = supp(x);
      t.lhs = x.is_zero() || grade_module(x, m) > ExtCount::finite(0);
      t.rhs = all_ass(a, [&](auto& p) { return !sx.contains(p); });
      t.detail += " X=" + x.to_string();
      break;
    }
    case 3: {
      IdealZ i(ideal_gen(rng));
      SpecSubset v = v_of_integer(i.n);
      t.lhs = is_torsionfree_for(i, m);
      t.consistent = t.lhs == (grade_ideal(i, m) > ExtCount::finite(0));
      t.rhs = all_ass(a, [&](auto& p) { return !v.contains(p); });
      t.detail += " I=" + i.to_string();
      break;
    }
    case 4: {
      ZModule x = random_zmodule(rng);
      std::uint64_t n = small(rng);
      t.lhs = grade_at_least(m, x, n);
      t.rhs = all_ass(a, [&](auto& p) { return prime_grade(p, x) >= ExtCount::finite(n); });
      t.detail += " X=" + x.to_string() + " n=" + std::to_string(n);
      break;
    }
    case 5: {
      ZModule r = ZModule::free(1);
      t.lhs = rank(m) == 0;
      t.consistent = t.lhs == (grade_of(m) > ExtCount::finite(0));
      t.rhs = all_ass(a, [&](auto& p) { return prime_grade(p, r) > ExtCount::finite(0); });
      break;
    }
    case 6: {
      ZModule x = random_zmodule(rng);
      Integer bound = torsion_prime_bound(m);
      t.lhs = true;
      for (Integer c = 0; c <= bound && t.lhs; ++c)
        if (multiplication_injective(x, c) && !multiplication_injective(m, c)) t.lhs = false;
      t.rhs = all_ass(a, [&](auto& p) { return prime_grade(p, x) == ExtCount::finite(0); });
      t.detail += " X=" + x.to_string();
      break;
    }
    case 7: {
      ZModule r = ZModule::free(1);
      Integer bound = torsion_prime_bound(m);
      t.lhs = true;
      for (Integer c = 1; c <= bound && t.lhs; ++c) t.lhs = multiplication_injective(m, c);
      t.rhs = all_ass(a, [&](auto& p) { return prime_grade(p, r) == ExtCount::finite(0); });
      break;
    }
    case 8: {
      std::uint64_t n = small(rng);
      t.lhs = height_ann(m) >= ExtCount::finite(n);
      t.rhs = all_ass(a, [&](auto& p) { return p.height() >= n; });
      t.detail += " n=" + std::to_string(n);
      break;
    }
    case 9: {
      int n = static_cast<int>(small(rng));
      auto d = dim(m);
      t.lhs = !d || *d <= n;
      t.rhs = all_ass(a, [&](auto& p) { return (p.kind == PrimeId::Kind::ZGeneric ? 1 : 0) <= n; });
      t.detail += " n=" + std::to_string(n);
      break;
    }
    default: {
      t.lhs = length(m).is_finite();
      t.rhs = all_ass(a, [](auto& p) { return p.is_maximal_z(); });
      break;
    }
  }
  return t;
}

inline Trial monomial_trial(int item, const Backend& ctx, std::mt19937_64& rng) {
  Trial t;
  MonomialModule m = random_monomial_module(rng, ctx);
  const SpecSubset a = ass(m);
  const int nv = static_cast<int>(ctx.nvars());
  std::uniform_int_distribution<int> small(0, nv);
  t.detail = "M=" + m.to_string();
  switch (item) {
    case 1: {
      MonomialIdeal i = random_monomial_ideal(rng, ctx);
      t.lhs = is_torsion_for(i, m);
      t.rhs = all_ass(a, [&](auto& p) { return prime_contains_ideal(p.vars, i); });
      t.detail += " I=" + i.to_string();
      break;
    }
    case 6: {
      MonomialModule x = random_monomial_module(rng, ctx);
      t.lhs = true;
      for (std::uint32_t bset = 0; bset <= ctx.full_mask() && t.lhs; ++bset)
        if (!linear_form_is_zero_divisor(bset, x) && linear_form_is_zero_divisor(bset, m)) t.lhs = false;
      t.rhs = x.is_zero() ? a.is_empty() : all_ass(a, [&](auto& p) { return grade_zero(p, x); });
      t.detail += " X=" + x.to_string();
      break;
    }
    case 8: {
      int n = small(rng);
      t.lhs = height_ann(m) >= ExtCount::finite(static_cast<std::uint64_t>(n));
      t.rhs = all_ass(a, [&](auto& p) { return std::popcount(p.vars) >= n; });
      t.detail += " n=" + std::to_string(n);
      break;
    }
    case 9: {
      int n = small(rng);
      auto d = dim(m);
      t.lhs = !d || *d <= n;
      t.rhs = all_ass(a, [&](auto& p) { return nv - std::popcount(p.vars) <= n; });
      t.detail += " n=" + std::to_string(n);
      break;
    }
    default: {
      t.lhs = has_finite_length(m);
      t.rhs = all_ass(a, [&](auto& p) { return p.vars == ctx.full_mask(); });
      break;
    }
  }
  return t;
}

}  // namespace detail

/// Random trials of example item `item`: the module-side predicate against
/// Ass containment in the item's prime set.
inline ExampleReport example_suite(int item, const Backend& b, std::size_t trials, std::uint64_t seed = 1) {
  if (!example_supported(item, b.kind))
    throw Error("example item " + std::to_string(item) + " is not available over " + b.to_string());
  ExampleReport r;
  r.item = item;
  r.backend = b.to_string();
  r.seed = seed;
  r.trials = trials;
  for (std::size_t k = 0; k < trials; ++k) {
    std::mt19937_64 rng(seed * 1000003u + k);
    auto t = b.kind == BackendKind::Z ? detail::z_trial(item, rng) : detail::monomial_trial(item, b, rng);
    if (t.lhs) ++r.left_true;
    if (t.lhs == t.rhs && t.consistent) {
      ++r.agreements;
    } else if (!r.counterexample) {
      r.counterexample = t.detail + " module-side=" + (t.lhs ? "true" : "false") +
                         " spec-side=" + (t.rhs ? "true" : "false") + (t.consistent ? "" : " (module-side forms differ)");
    }
  }
  return r;
}

}  // namespace subcat
