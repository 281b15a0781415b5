#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subcat/error.hpp"
#include "subcat/ext_count.hpp"
#include "subcat/spec.hpp"

namespace subcat {

using Exponent = std::vector<unsigned>;

/// Default limit on the number of variables; subset enumerations are 2ⁿ.
inline constexpr std::size_t kDefaultVariableCap = 8;

namespace mono {

inline bool divides(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Exponent lcm(const Exponent& a, const Exponent& b) {
  Exponent c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = std::max(a[i], b[i]);
  return c;
}

inline std::uint32_t support(const Exponent& a) {
  std::uint32_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]) s |= 1u << i;
  return s;
}

inline std::string to_string(const Exponent& a, const std::vector<std::string>& vars) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (a[i] > 1) s += "^" + std::to_string(a[i]);
  }
  return s.empty() ? "1" : s;
}

}  // namespace mono

/// Monomial ideal of k[x₁..xₙ] by its minimal generators. The zero ideal has
/// no generators; the unit ideal is generated by the monomial 1.
class MonomialIdeal {
 public:
  MonomialIdeal() = default;
  MonomialIdeal(Backend ctx, std::vector<Exponent> gens) : ctx_(std::move(ctx)), gens_(std::move(gens)) {
    if (ctx_.kind != BackendKind::Monomial) throw BackendMismatch("monomial ideal over Z");
    for (auto& g : gens_)
      if (g.size() != ctx_.nvars()) throw Error("exponent vector length does not match the ring");
    minimalize();
  }

  static MonomialIdeal zero(Backend ctx) { return {std::move(ctx), {}}; }
  static MonomialIdeal unit(Backend ctx) {
    Exponent one(ctx.nvars(), 0);
    return {std::move(ctx), {one}};
  }
  /// The monomial prime P_A.
  static MonomialIdeal prime(Backend ctx, std::uint32_t mask) {
    std::vector<Exponent> g;
    for (std::size_t i = 0; i < ctx.nvars(); ++i)
      if (mask >> i & 1u) {
        Exponent e(ctx.nvars(), 0);
        e[i] = 1;
        g.push_back(e);
      }
    return {std::move(ctx), g};
  }

  const Backend& context() const { return ctx_; }
  const std::vector<Exponent>& generators() const { return gens_; }
  std::size_t nvars() const { return ctx_.nvars(); }

  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const { return gens_.size() == 1 && mono::support(gens_[0]) == 0; }

  bool contains(const Exponent& m) const {
    return std::any_of(gens_.begin(), gens_.end(), [&](auto& g) { return mono::divides(g, m); });
  }
  /// J ⊆ this
  bool contains(const MonomialIdeal& j) const {
    return std::all_of(j.gens_.begin(), j.gens_.end(), [&](auto& g) { return contains(g); });
  }

  /// Largest exponent of each variable among the generators.
  Exponent max_exponents() const {
    Exponent m(nvars(), 0);
    for (auto& g : gens_)
      for (std::size_t i = 0; i < nvars(); ++i) m[i] = std::max(m[i], g[i]);
    return m;
  }

  /// Irreducible means generated by pure powers of distinct variables.
  bool is_irreducible() const {
    return !is_unit() && std::all_of(gens_.begin(), gens_.end(), [](auto& g) { return std::popcount(mono::support(g)) == 1; });
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + mono::to_string(gens_[i], ctx_.vars);
    if (gens_.empty()) s += "0";
    return s + ")";
  }

  friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) {
    return a.ctx_ == b.ctx_ && a.gens_ == b.gens_;
  }
  friend bool operator<(const MonomialIdeal& a, const MonomialIdeal& b) { return a.gens_ < b.gens_; }

 private:
  void minimalize() {
    std::sort(gens_.begin(), gens_.end());
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
    std::vector<Exponent> keep;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < gens_.size() && !redundant; ++j)
        redundant = j != i && mono::divides(gens_[j], gens_[i]);
      if (!redundant) keep.push_back(gens_[i]);
    }
    gens_ = std::move(keep);
  }

  Backend ctx_;
  std::vector<Exponent> gens_;
};

inline void require_same_context(const MonomialIdeal& a, const MonomialIdeal& b) {
  if (!(a.context() == b.context())) throw BackendMismatch("monomial ideals over different rings");
}

inline MonomialIdeal ideal_sum(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_context(a, b);
  auto g = a.generators();
  g.insert(g.end(), b.generators().begin(), b.generators().end());
  return {a.context(), g};
}

inline MonomialIdeal ideal_intersection(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_context(a, b);
  std::vector<Exponent> g;
  for (auto& x : a.generators())
    for (auto& y : b.generators()) g.push_back(mono::lcm(x, y));
  return {a.context(), g};
}

/// Radical: generated by the squarefree supports of the generators.
inline MonomialIdeal radical(const MonomialIdeal& a) {
  std::vector<Exponent> g;
  for (auto& x : a.generators()) {
    Exponent s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] ? 1 : 0;
    g.push_back(s);
  }
  return {a.context(), g};
}

inline void check_variable_cap(const Backend& ctx, std::size_t cap) {
  if (ctx.nvars() > cap)
    throw CapExceeded(std::to_string(ctx.nvars()) + " variables exceeds the cap of " + std::to_string(cap));
}

namespace detail {

using IrreducibleMemo = std::map<std::vector<Exponent>, std::vector<MonomialIdeal>>;

inline std::vector<MonomialIdeal> split_irreducible(const MonomialIdeal& i, IrreducibleMemo& memo) {
  if (auto it = memo.find(i.generators()); it != memo.end()) return it->second;
  std::vector<MonomialIdeal> out;
  auto mixed = std::find_if(i.generators().begin(), i.generators().end(),
                            [](auto& g) { return std::popcount(mono::support(g)) > 1; });
  if (mixed == i.generators().end()) {
    out.push_back(i);
  } else {
    // m = x_v^a · m' with x_v ∤ m'  ⇒  I = (I + x_v^a) ∩ (I + m').
    const Exponent m = *mixed;
    std::size_t v = static_cast<std::size_t>(std::countr_zero(mono::support(m)));
    Exponent pure(m.size(), 0), rest = m;
    pure[v] = m[v];
    rest[v] = 0;
    for (auto& part : {pure, rest}) {
      auto sub = split_irreducible(ideal_sum(i, MonomialIdeal(i.context(), {part})), memo);
      out.insert(out.end(), sub.begin(), sub.end());
    }
  }
  memo[i.generators()] = out;
  return out;
}

}  // namespace detail

/// Irredundant decomposition I = ∩ Jₖ into ideals generated by pure powers.
inline std::vector<MonomialIdeal> irreducible_decomposition(const MonomialIdeal& i,
                                                            std::size_t cap = kDefaultVariableCap) {
  check_variable_cap(i.context(), cap);
  if (i.is_zero()) throw Error("the zero ideal has no irreducible decomposition here");
  if (i.is_unit()) throw Error("the unit ideal has no irreducible decomposition");
  detail::IrreducibleMemo memo;
  auto parts = detail::split_irreducible(i, memo);
  std::sort(parts.begin(), parts.end());
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
  // Jₖ is redundant when it contains some other component.
  std::vector<MonomialIdeal> out;
  for (std::size_t a = 0; a < parts.size(); ++a) {
    bool redundant = false;
    for (std::size_t b = 0; b < parts.size() && !redundant; ++b)
      redundant = a != b && parts[a].contains(parts[b]);
    if (!redundant) out.push_back(parts[a]);
  }
  return out;
}

/// Associated primes of R/I: radicals of the irreducible components.
inline std::vector<PrimeId> ass_cyclic(const MonomialIdeal& i, std::size_t cap = kDefaultVariableCap) {
  if (i.is_unit()) return {};
  if (i.is_zero()) return {PrimeId::monomial(0)};
  std::vector<PrimeId> out;
  for (auto& c : irreducible_decomposition(i, cap)) {
    std::uint32_t s = 0;
    for (auto& g : c.generators()) s |= mono::support(g);
    out.push_back(PrimeId::monomial(s));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Minimal variable sets meeting the support of every generator.
inline std::vector<PrimeId> min_primes(const MonomialIdeal& i, std::size_t cap = kDefaultVariableCap) {
  check_variable_cap(i.context(), cap);
  if (i.is_unit()) throw Error("the unit ideal has no minimal primes");
  std::vector<std::uint32_t> covers;
  const std::uint32_t full = i.context().full_mask();
  for (std::uint64_t a = 0; a <= full; ++a) {
    auto mask = static_cast<std::uint32_t>(a);
    bool cover = std::all_of(i.generators().begin(), i.generators().end(),
                             [&](auto& g) { return (mono::support(g) & mask) != 0; });
    if (cover) covers.push_back(mask);
  }
  std::vector<PrimeId> out;
  for (auto c : covers) {
    bool minimal = std::none_of(covers.begin(), covers.end(), [&](auto d) { return d != c && (d & ~c) == 0; });
    if (minimal) out.push_back(PrimeId::monomial(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Krull dimension of R/I: n minus the smallest cover.
inline std::size_t dim_cyclic(const MonomialIdeal& i, std::size_t cap = kDefaultVariableCap) {
  std::size_t best = i.nvars();
  for (auto& p : min_primes(i, cap)) best = std::min(best, p.height());
  return i.nvars() - best;
}

/// Height of I: the smallest cover.
inline std::size_t height(const MonomialIdeal& i, std::size_t cap = kDefaultVariableCap) {
  std::size_t best = i.nvars();
  for (auto& p : min_primes(i, cap)) best = std::min(best, p.height());
  return best;
}

/// V(I) presented by its minimal primes.
inline SpecSubset v_of_monomial_ideal(const MonomialIdeal& i, std::size_t cap = kDefaultVariableCap) {
  if (i.is_unit()) return SpecSubset::empty(i.context());
  return specialization_closure(i.context(), min_primes(i, cap));
}

/// Formal direct sum ⊕ R/Iⱼ.
class MonomialModule {
 public:
  explicit MonomialModule(Backend ctx = Backend::monomial({})) : ctx_(std::move(ctx)) {}
  MonomialModule(Backend ctx, std::vector<MonomialIdeal> summands) : ctx_(std::move(ctx)) {
    for (auto& s : summands) {
      if (!(s.context() == ctx_)) throw BackendMismatch("summand over a different ring");
      if (!s.is_unit()) summands_.push_back(s);
    }
  }
  static MonomialModule cyclic(const MonomialIdeal& i) { return {i.context(), {i}}; }

  const Backend& context() const { return ctx_; }
  const std::vector<MonomialIdeal>& summands() const { return summands_; }
  bool is_zero() const { return summands_.empty(); }

  std::string to_string() const {
    if (summands_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < summands_.size(); ++i) s += (i ? " + " : "") + ("R/" + summands_[i].to_string());
    return s;
  }

  friend bool operator==(const MonomialModule&, const MonomialModule&) = default;

 private:
  Backend ctx_;
  std::vector<MonomialIdeal> summands_;
};

inline MonomialModule direct_sum(const MonomialModule& a, const MonomialModule& b) {
  if (!(a.context() == b.context())) throw BackendMismatch("modules over different rings");
  auto s = a.summands();
  s.insert(s.end(), b.summands().begin(), b.summands().end());
  return {a.context(), s};
}

inline SpecSubset ass(const MonomialModule& m, std::size_t cap = kDefaultVariableCap) {
  std::vector<PrimeId> g;
  for (auto& s : m.summands()) {
    auto a = ass_cyclic(s, cap);
    g.insert(g.end(), a.begin(), a.end());
  }
  return SpecSubset(m.context(), std::move(g), false);
}

inline SpecSubset supp(const MonomialModule& m, std::size_t cap = kDefaultVariableCap) {
  std::vector<PrimeId> g;
  for (auto& s : m.summands()) {
    auto a = min_primes(s, cap);
    g.insert(g.end(), a.begin(), a.end());
  }
  return specialization_closure(m.context(), std::move(g));
}

inline MonomialIdeal ann(const MonomialModule& m) {
  MonomialIdeal a = MonomialIdeal::unit(m.context());
  for (auto& s : m.summands()) a = ideal_intersection(a, s);
  return a;
}

/// grade(P, X) = 0, i.e. P lies inside an associated prime of X.
inline bool grade_zero(const PrimeId& p, const MonomialModule& x, std::size_t cap = kDefaultVariableCap) {
  if (x.is_zero()) throw Error("grade against the zero module is not defined here");
  const SpecSubset a = ass(x, cap);
  return std::any_of(a.generators().begin(), a.generators().end(), [&](auto& q) { return prime_leq(p, q); });
}

/// Krull dimension; nullopt for the zero module.
inline std::optional<int> dim(const MonomialModule& m, std::size_t cap = kDefaultVariableCap) {
  if (m.is_zero()) return std::nullopt;
  std::size_t d = 0;
  for (auto& s : m.summands()) d = std::max(d, dim_cyclic(s, cap));
  return static_cast<int>(d);
}

/// Height of Ann M (∞ for the zero module, whose annihilator is the unit ideal).
inline ExtCount height_ann(const MonomialModule& m, std::size_t cap = kDefaultVariableCap) {
  if (m.is_zero()) return ExtCount::infinity();
  return ExtCount::finite(height(ann(m), cap));
}

/// ℓ(M) < ∞ iff every summand contains a pure power of every variable.
inline bool has_finite_length(const MonomialModule& m) {
  for (auto& s : m.summands()) {
    std::uint32_t pure = 0;
    for (auto& g : s.generators())
      if (std::popcount(mono::support(g)) == 1) pure |= mono::support(g);
    if (pure != s.context().full_mask()) return false;
  }
  return true;
}

/// ℓ(M) as the number of standard monomials, ∞ when not finite.
inline ExtCount length(const MonomialModule& m) {
  if (!has_finite_length(m)) return ExtCount::infinity();
  std::uint64_t total = 0;
  for (auto& s : m.summands()) {
    Exponent box = s.max_exponents(), u(box.size(), 0);
    for (;;) {
      if (!s.contains(u)) ++total;
      std::size_t i = 0;
      while (i < u.size() && u[i] == box[i]) u[i++] = 0;
      if (i == u.size()) break;
      ++u[i];
    }
  }
  return ExtCount::finite(total);
}

/// M is I-torsion iff Iᵏ ⊆ Ann M for some k, i.e. I ⊆ √Iⱼ for every summand.
inline bool is_torsion_for(const MonomialIdeal& i, const MonomialModule& m) {
  for (auto& s : m.summands())
    if (!radical(s).contains(i)) return false;
  return true;
}

/// Whether the linear form Σ_{i∈B} xᵢ is a zero-divisor on M: some standard
/// monomial u of a summand has xᵢu in the summand ideal for every i ∈ B.
inline bool linear_form_is_zero_divisor(std::uint32_t b, const MonomialModule& m) {
  for (auto& s : m.summands()) {
    Exponent box = s.max_exponents(), u(box.size(), 0);
    for (;;) {
      if (!s.contains(u)) {
        bool kills = true;
        for (std::size_t i = 0; i < u.size() && kills; ++i)
          if (b >> i & 1u) {
            Exponent v = u;
            ++v[i];
            kills = s.contains(v);
          }
        if (kills) return true;
      }
      std::size_t i = 0;
      while (i < u.size() && u[i] == box[i]) u[i++] = 0;
      if (i == u.size()) break;
      ++u[i];
    }
  }
  return false;
}

}  // namespace subcat
