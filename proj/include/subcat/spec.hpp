#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subcat/error.hpp"
#include "subcat/linalg/integer.hpp"

namespace subcat {

enum class BackendKind { Z, Monomial };

/// Which ring the primes live in. For the monomial backend, `vars` names the
/// variables of k[x₁..xₙ] in order.
struct Backend {
  BackendKind kind = BackendKind::Z;
  std::vector<std::string> vars;

  static Backend integers() { return {}; }
  static Backend monomial(std::vector<std::string> names) {
    if (names.size() > 31) throw CapExceeded("too many variables for the monomial backend");
    return {BackendKind::Monomial, std::move(names)};
  }

  std::size_t nvars() const { return vars.size(); }
  std::uint32_t full_mask() const {
    return nvars() == 0 ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << nvars()) - 1);
  }

  std::string to_string() const {
    if (kind == BackendKind::Z) return "Z";
    std::string s = "k[";
    for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? "," : "") + vars[i];
    return s + "]";
  }

  friend bool operator==(const Backend&, const Backend&) = default;
};

/// A representable prime: (0) or (p) in ℤ, or the monomial prime generated
/// by a subset of the variables (bit i = variable i).
struct PrimeId {
  enum class Kind { ZGeneric, ZMaximal, Monomial };
  Kind kind = Kind::ZGeneric;
  Integer p = 0;
  std::uint32_t vars = 0;

  static PrimeId generic() { return {}; }
  static PrimeId maximal(const Integer& p) {
    if (!is_prime(p)) throw Error(p.get_str() + " is not prime");
    return {Kind::ZMaximal, p, 0};
  }
  static PrimeId monomial(std::uint32_t mask) { return {Kind::Monomial, 0, mask}; }

  BackendKind backend() const { return kind == Kind::Monomial ? BackendKind::Monomial : BackendKind::Z; }
  bool is_maximal_z() const { return kind == Kind::ZMaximal; }

  /// Krull height of the prime.
  std::size_t height() const {
    switch (kind) {
      case Kind::ZGeneric: return 0;
      case Kind::ZMaximal: return 1;
      default: return static_cast<std::size_t>(std::popcount(vars));
    }
  }

  friend bool operator==(const PrimeId& a, const PrimeId& b) {
    return a.kind == b.kind && a.p == b.p && a.vars == b.vars;
  }
  // Generic first, then by p; monomial by size then mask.
  friend bool operator<(const PrimeId& a, const PrimeId& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.kind == Kind::Monomial) {
      int ha = std::popcount(a.vars), hb = std::popcount(b.vars);
      return ha != hb ? ha < hb : a.vars < b.vars;
    }
    return a.p < b.p;
  }
};

/// p ⊆ q in the specialization order.
inline bool prime_leq(const PrimeId& p, const PrimeId& q) {
  if (p.backend() != q.backend()) throw BackendMismatch("comparing primes of different backends");
  if (p.kind == PrimeId::Kind::Monomial) return (p.vars & ~q.vars) == 0;
  if (p.kind == PrimeId::Kind::ZGeneric) return true;
  return q.kind == PrimeId::Kind::ZMaximal && q.p == p.p;
}

inline std::string to_string(const PrimeId& p, const Backend& b) {
  switch (p.kind) {
    case PrimeId::Kind::ZGeneric: return "(0)";
    case PrimeId::Kind::ZMaximal: return "(" + p.p.get_str() + ")";
    default: break;
  }
  if (p.vars == 0) return "(0)";
  std::string s = "(";
  bool first = true;
  for (std::size_t i = 0; i < b.nvars(); ++i)
    if (p.vars >> i & 1u) {
      s += (first ? "" : ",") + b.vars[i];
      first = false;
    }
  return s + ")";
}

/// Every monomial prime of the backend, ascending.
inline std::vector<PrimeId> all_monomial_primes(const Backend& b) {
  if (b.kind != BackendKind::Monomial) throw BackendMismatch("monomial primes requested over Z");
  std::vector<PrimeId> out;
  for (std::uint32_t m = 0; m <= b.full_mask(); ++m) {
    out.push_back(PrimeId::monomial(m));
    if (m == b.full_mask()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// A finitely generated subset of Spec. With closed=true it denotes the union
/// of V(p) over the generators, otherwise exactly the listed primes.
class SpecSubset {
 public:
  SpecSubset() = default;
  SpecSubset(Backend b, std::vector<PrimeId> gens, bool closed)
      : backend_(std::move(b)), gens_(std::move(gens)), closed_(closed) {
    for (auto& p : gens_) check(p);
    std::sort(gens_.begin(), gens_.end());
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
    if (closed_) minimalize();
  }

  static SpecSubset empty(Backend b) { return {std::move(b), {}, true}; }
  static SpecSubset whole(Backend b) {
    PrimeId bottom = b.kind == BackendKind::Z ? PrimeId::generic() : PrimeId::monomial(0);
    return {std::move(b), {bottom}, true};
  }

  const Backend& backend() const { return backend_; }
  const std::vector<PrimeId>& generators() const { return gens_; }
  bool closed() const { return closed_; }

  /// Only the closure of (0) over ℤ is infinite.
  bool is_infinite() const {
    return closed_ && backend_.kind == BackendKind::Z && !gens_.empty() &&
           gens_.front().kind == PrimeId::Kind::ZGeneric;
  }

  bool contains(const PrimeId& q) const {
    check(q);
    if (!closed_) return std::find(gens_.begin(), gens_.end(), q) != gens_.end();
    return std::any_of(gens_.begin(), gens_.end(), [&](const PrimeId& g) { return prime_leq(g, q); });
  }

  /// Explicit member list, or nullopt when the set is infinite.
  std::optional<std::vector<PrimeId>> members() const {
    if (is_infinite()) return std::nullopt;
    if (!closed_ || backend_.kind == BackendKind::Z) return gens_;
    std::vector<PrimeId> out;
    for (auto& q : all_monomial_primes(backend_))
      if (contains(q)) out.push_back(q);
    return out;
  }

  bool is_empty() const { return gens_.empty(); }

  /// Minimal members (Min of the set). For closed sets these are the
  /// minimalized generators.
  std::vector<PrimeId> minimal_members() const {
    if (closed_) return gens_;
    std::vector<PrimeId> out;
    for (auto& p : gens_) {
      bool minimal = true;
      for (auto& q : gens_)
        if (!(q == p) && prime_leq(q, p)) minimal = false;
      if (minimal) out.push_back(p);
    }
    return out;
  }

  std::string to_string() const {
    std::string s = closed_ ? "closure{" : "set{";
    for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? "," : "") + subcat::to_string(gens_[i], backend_);
    return s + "}";
  }

  /// Structural equality (same presentation). Use same_set for denoted sets.
  friend bool operator==(const SpecSubset& a, const SpecSubset& b) {
    return a.backend_ == b.backend_ && a.gens_ == b.gens_ && a.closed_ == b.closed_;
  }

 private:
  void check(const PrimeId& p) const {
    if (p.backend() != backend_.kind) throw BackendMismatch("prime does not belong to " + backend_.to_string());
    if (p.kind == PrimeId::Kind::Monomial && (p.vars & ~backend_.full_mask()) != 0)
      throw BackendMismatch("monomial prime uses variables outside " + backend_.to_string());
  }

  void minimalize() {
    std::vector<PrimeId> keep;
    for (auto& p : gens_) {
      bool redundant = false;
      for (auto& q : gens_)
        if (!(q == p) && prime_leq(q, p)) redundant = true;
      if (!redundant) keep.push_back(p);
    }
    gens_ = std::move(keep);
  }

  Backend backend_;
  std::vector<PrimeId> gens_;
  bool closed_ = true;
};

inline void require_same_backend(const SpecSubset& a, const SpecSubset& b) {
  if (!(a.backend() == b.backend())) throw BackendMismatch("subsets over different backends");
}

/// Closed subset generated by `primes`. All primes must share one backend.
inline SpecSubset specialization_closure(const Backend& b, std::vector<PrimeId> primes) {
  return SpecSubset(b, std::move(primes), true);
}

inline SpecSubset specialization_closure(const SpecSubset& s) {
  return SpecSubset(s.backend(), s.generators(), true);
}

/// Denoted-set inclusion.
inline bool leq(const SpecSubset& a, const SpecSubset& b) {
  require_same_backend(a, b);
  if (a.is_infinite()) return b.is_infinite();
  const auto ms = *a.members();
  for (auto& p : ms)
    if (!b.contains(p)) return false;
  return true;
}

inline bool same_set(const SpecSubset& a, const SpecSubset& b) { return leq(a, b) && leq(b, a); }

inline SpecSubset lattice_join(const SpecSubset& a, const SpecSubset& b) {
  require_same_backend(a, b);
  if (a.closed() && b.closed()) {
    auto g = a.generators();
    g.insert(g.end(), b.generators().begin(), b.generators().end());
    return SpecSubset(a.backend(), std::move(g), true);
  }
  if (a.is_infinite()) return a;
  if (b.is_infinite()) return b;
  auto g = *a.members();
  auto h = *b.members();
  g.insert(g.end(), h.begin(), h.end());
  return SpecSubset(a.backend(), std::move(g), false);
}

inline SpecSubset lattice_meet(const SpecSubset& a, const SpecSubset& b) {
  require_same_backend(a, b);
  if (a.closed() && b.closed()) {
    // V(p) ∩ V(q) closed forms, generator by generator.
    std::vector<PrimeId> g;
    for (auto& p : a.generators())
      for (auto& q : b.generators()) {
        if (p.kind == PrimeId::Kind::Monomial) {
          g.push_back(PrimeId::monomial(p.vars | q.vars));
        } else if (prime_leq(p, q)) {
          g.push_back(q);
        } else if (prime_leq(q, p)) {
          g.push_back(p);
        }
      }
    return SpecSubset(a.backend(), std::move(g), true);
  }
  if (a.is_infinite()) return b;
  if (b.is_infinite()) return a;
  const auto ms = *a.members();
  std::vector<PrimeId> g;
  for (auto& p : ms)
    if (b.contains(p)) g.push_back(p);
  return SpecSubset(a.backend(), std::move(g), false);
}

/// Whether the denoted set is closed under specialization.
inline bool is_specialization_closed(const SpecSubset& s) {
  if (s.closed()) return true;
  const auto& g = s.generators();
  if (s.backend().kind == BackendKind::Z)
    return std::none_of(g.begin(), g.end(), [](auto& p) { return p.kind == PrimeId::Kind::ZGeneric; });
  for (auto& p : g)
    for (auto& q : all_monomial_primes(s.backend()))
      if (prime_leq(p, q) && !s.contains(q)) return false;
  return true;
}

/// V((n)) over ℤ: primes dividing n; all of Spec for n = 0; empty for n = ±1.
inline SpecSubset v_of_integer(const Integer& n) {
  Backend z = Backend::integers();
  if (n == 0) return SpecSubset::whole(z);
  std::vector<PrimeId> g;
  if (abs(n) != 1)
    for (auto& p : prime_divisors(n)) g.push_back(PrimeId::maximal(p));
  return SpecSubset(z, std::move(g), true);
}

}  // namespace subcat
