#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "subcat/error.hpp"
#include "subcat/ext_count.hpp"
#include "subcat/linalg/normal_form.hpp"
#include "subcat/spec.hpp"

namespace subcat {

/// Finitely generated abelian group in canonical form ℤ^r ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k
/// with d₁ | d₂ | … | d_k and every dᵢ >= 2.
///
/// Generator order everywhere: the k torsion generators first (in chain
/// order), then the r free generators.
class ZModule {
 public:
  ZModule() = default;
  ZModule(std::size_t free_rank, std::vector<Integer> invariant_factors)
      : free_rank_(free_rank), torsion_(std::move(invariant_factors)) {
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
      if (torsion_[i] < 2) throw Error("invariant factor " + torsion_[i].get_str() + " is below 2");
      if (i && !divides(torsion_[i - 1], torsion_[i])) throw Error("invariant factors do not form a divisibility chain");
    }
  }

  static ZModule zero() { return {}; }
  static ZModule free(std::size_t r) { return {r, {}}; }
  /// ℤ/n, with n = 0 meaning ℤ and n = ±1 the zero module.
  static ZModule cyclic(const Integer& n) { return from_cyclic_orders({n}); }

  /// ⊕ ℤ/nᵢ for arbitrary orders (0 means a free summand, ±1 is dropped).
  static ZModule from_cyclic_orders(const std::vector<Integer>& orders) {
    std::size_t r = 0;
    std::vector<std::pair<Integer, unsigned>> pe;
    for (auto& n : orders) {
      if (n == 0) {
        ++r;
        continue;
      }
      if (abs(n) == 1) continue;
      auto f = factorize(n);
      pe.insert(pe.end(), f.begin(), f.end());
    }
    return from_elementary(r, pe);
  }

  /// Rebuild invariant factors from elementary divisors p^e.
  static ZModule from_elementary(std::size_t free_rank, const std::vector<std::pair<Integer, unsigned>>& pe) {
    std::map<Integer, std::vector<unsigned>> by_prime;
    for (auto& [p, e] : pe)
      if (e > 0) by_prime[p].push_back(e);
    std::size_t k = 0;
    for (auto& [p, es] : by_prime) {
      std::sort(es.rbegin(), es.rend());
      k = std::max(k, es.size());
    }
    // The largest factor collects the largest power of each prime, and so on.
    std::vector<Integer> d(k, 1);
    for (auto& [p, es] : by_prime)
      for (std::size_t i = 0; i < es.size(); ++i) d[k - 1 - i] *= pow_of(p, es[i]);
    return {free_rank, d};
  }

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& invariant_factors() const { return torsion_; }
  std::size_t torsion_count() const { return torsion_.size(); }
  std::size_t ngens() const { return torsion_.size() + free_rank_; }
  bool is_zero() const { return free_rank_ == 0 && torsion_.empty(); }
  bool is_torsion() const { return free_rank_ == 0; }

  /// Order of generator i (0 for a free generator).
  Integer generator_order(std::size_t i) const { return i < torsion_.size() ? torsion_[i] : Integer(0); }

  /// Order of the torsion part.
  Integer torsion_order() const {
    Integer o = 1;
    for (auto& d : torsion_) o *= d;
    return o;
  }

  /// Prime-power cyclic summands of the torsion part, ascending.
  std::vector<std::pair<Integer, unsigned>> elementary_divisors() const {
    std::vector<std::pair<Integer, unsigned>> out;
    for (auto& d : torsion_)
      for (auto& f : factorize(d)) out.push_back(f);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Relation matrix of the canonical presentation: ngens × torsion_count.
  IntMatrix relations() const {
    IntMatrix r(ngens(), torsion_.size());
    for (std::size_t i = 0; i < torsion_.size(); ++i) r(i, i) = torsion_[i];
    return r;
  }

  /// Canonical representative of an element given in generator coordinates.
  std::vector<Integer> reduce(std::span<const Integer> x) const {
    if (x.size() != ngens()) throw Error("element has the wrong number of coordinates");
    std::vector<Integer> y(x.begin(), x.end());
    for (std::size_t i = 0; i < torsion_.size(); ++i) y[i] = mod_floor(y[i], torsion_[i]);
    return y;
  }

  bool is_zero_element(std::span<const Integer> x) const {
    auto y = reduce(x);
    return std::all_of(y.begin(), y.end(), [](auto& v) { return v == 0; });
  }

  /// Additive order of an element (0 when it has infinite order).
  Integer element_order(std::span<const Integer> x) const {
    auto y = reduce(x);
    for (std::size_t i = torsion_.size(); i < y.size(); ++i)
      if (y[i] != 0) return 0;
    Integer o = 1;
    for (std::size_t i = 0; i < torsion_.size(); ++i) o = lcm_of(o, torsion_[i] / gcd_of(torsion_[i], y[i]));
    return o;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    if (free_rank_ == 1) s = "Z";
    if (free_rank_ > 1) s = "Z^" + std::to_string(free_rank_);
    for (auto& d : torsion_) s += (s.empty() ? "" : " + ") + ("Z/" + d.get_str());
    return s;
  }

  friend bool operator==(const ZModule&, const ZModule&) = default;
  friend bool operator<(const ZModule& a, const ZModule& b) {
    if (a.free_rank_ != b.free_rank_) return a.free_rank_ < b.free_rank_;
    if (a.torsion_.size() != b.torsion_.size()) return a.torsion_.size() < b.torsion_.size();
    return a.torsion_ < b.torsion_;
  }

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
};

inline ZModule direct_sum(const ZModule& a, const ZModule& b) {
  auto pe = a.elementary_divisors();
  auto qe = b.elementary_divisors();
  pe.insert(pe.end(), qe.begin(), qe.end());
  return ZModule::from_elementary(a.free_rank() + b.free_rank(), pe);
}

inline ZModule direct_power(const ZModule& a, std::size_t n) {
  ZModule out;
  for (std::size_t i = 0; i < n; ++i) out = direct_sum(out, a);
  return out;
}

/// ℤⁿ / (column span of a relation matrix), with the change of
/// coordinates to the canonical generators of the quotient.
class Presentation {
 public:
  explicit Presentation(const IntMatrix& relations) : n_(relations.rows()) {
    SmithDecomposition s = smith_normal_form(relations);
    const std::size_t r = s.rank();
    std::vector<Integer> torsion;
    for (std::size_t i = 0; i < r; ++i)
      if (s.D(i, i) != 1) {
        index_.push_back(i);
        torsion.push_back(s.D(i, i));
      }
    for (std::size_t i = r; i < n_; ++i) index_.push_back(i);
    module_ = ZModule(n_ - r, torsion);
    u_ = s.U;
    u_inv_ = *solve_integer(s.U, IntMatrix::identity(n_));
  }

  const ZModule& module() const { return module_; }
  std::size_t ambient_rank() const { return n_; }

  /// Canonical coordinates of the class of x ∈ ℤⁿ.
  std::vector<Integer> to_canonical(std::span<const Integer> x) const {
    auto ux = u_ * x;
    std::vector<Integer> y;
    for (auto i : index_) y.push_back(ux[i]);
    return module_.reduce(y);
  }

  /// A vector of ℤⁿ whose class is canonical generator j.
  std::vector<Integer> lift(std::size_t j) const { return u_inv_.col(index_.at(j)); }

  /// Matrix of the quotient map ℤⁿ → module() (rows of U).
  IntMatrix projection() const {
    IntMatrix p(index_.size(), n_);
    for (std::size_t a = 0; a < index_.size(); ++a)
      for (std::size_t b = 0; b < n_; ++b) p(a, b) = u_(index_[a], b);
    return p;
  }

  /// n × ngens matrix whose columns are the lifts.
  IntMatrix lifts() const {
    IntMatrix l(n_, index_.size());
    for (std::size_t j = 0; j < index_.size(); ++j)
      for (std::size_t i = 0; i < n_; ++i) l(i, j) = u_inv_(i, index_[j]);
    return l;
  }

 private:
  std::size_t n_;
  ZModule module_;
  IntMatrix u_, u_inv_;
  std::vector<std::size_t> index_;
};

inline ZModule from_presentation(const IntMatrix& relations) { return Presentation(relations).module(); }

/// Homomorphism between canonical modules, acting on canonical generators:
/// column j is the image of source generator j.
class ZModuleMap {
 public:
  ZModuleMap() = default;
  ZModuleMap(ZModule source, ZModule target, IntMatrix matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_.ngens() || matrix_.cols() != source_.ngens())
      throw Error("map matrix is " + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()) +
                  ", expected " + std::to_string(target_.ngens()) + "x" + std::to_string(source_.ngens()));
    for (std::size_t j = 0; j < source_.ngens(); ++j) {
      auto col = target_.reduce(matrix_.col(j));
      Integer d = source_.generator_order(j);
      if (d != 0) {
        std::vector<Integer> killed(col.size());
        for (std::size_t i = 0; i < col.size(); ++i) killed[i] = d * col[i];
        if (!target_.is_zero_element(killed))
          throw Error("map does not respect the relation of source generator " + std::to_string(j));
      }
      for (std::size_t i = 0; i < col.size(); ++i) matrix_(i, j) = col[i];
    }
  }

  static ZModuleMap identity(const ZModule& m) { return {m, m, IntMatrix::identity(m.ngens())}; }
  static ZModuleMap zero(const ZModule& s, const ZModule& t) { return {s, t, IntMatrix(t.ngens(), s.ngens())}; }
  static ZModuleMap scalar(const ZModule& m, const Integer& a) {
    return {m, m, a * IntMatrix::identity(m.ngens())};
  }

  const ZModule& source() const { return source_; }
  const ZModule& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  std::vector<Integer> apply(std::span<const Integer> x) const { return target_.reduce(matrix_ * x); }

  bool is_zero() const { return matrix_.is_zero(); }

  friend bool operator==(const ZModuleMap&, const ZModuleMap&) = default;

 private:
  ZModule source_, target_;
  IntMatrix matrix_;
};

/// g ∘ f
inline ZModuleMap compose(const ZModuleMap& g, const ZModuleMap& f) {
  if (!(f.target() == g.source())) throw Error("compose: modules do not match");
  return {f.source(), g.target(), g.matrix() * f.matrix()};
}

/// A module together with its structure map (inclusion or projection).
struct ModuleWithMap {
  ZModule module;
  ZModuleMap map;
};

namespace detail {

// {x ∈ ℤ^{n_M} : F x ∈ im R_N}, as a spanning set (columns).
inline IntMatrix preimage_of_relations(const ZModuleMap& f) {
  const std::size_t nm = f.source().ngens();
  IntMatrix k = kernel_basis(IntMatrix::hconcat(f.matrix(), Integer(-1) * f.target().relations()));
  return k.row_range(0, nm);
}

// Basis (columns) of the column span of a matrix.
inline IntMatrix column_span_basis(const IntMatrix& a) {
  IntMatrix h = hermite_normal_form(a.transpose()).H;
  std::size_t l = 0;
  while (l < h.rows() && !IntMatrix(h.row_range(l, 1)).is_zero()) ++l;
  return h.row_range(0, l).transpose();
}

}  // namespace detail

/// Kernel with its inclusion into the source.
inline ModuleWithMap kernel_with_map(const ZModuleMap& f) {
  const ZModule& m = f.source();
  IntMatrix basis = detail::column_span_basis(detail::preimage_of_relations(f));
  if (basis.cols() == 0) basis = IntMatrix(m.ngens(), 0);
  // Coordinates of the relations of M in the kernel basis.
  IntMatrix c = *solve_integer(basis, m.relations());
  Presentation p(c);
  IntMatrix incl = basis * p.lifts();
  return {p.module(), ZModuleMap(p.module(), m, incl)};
}

/// Cokernel with the projection from the target.
inline ModuleWithMap cokernel_with_map(const ZModuleMap& f) {
  const ZModule& n = f.target();
  Presentation p(IntMatrix::hconcat(n.relations(), f.matrix()));
  return {p.module(), ZModuleMap(n, p.module(), p.projection())};
}

struct ImageResult {
  ZModule module;
  ZModuleMap projection;  // source -> image
  ZModuleMap inclusion;   // image -> target
};

inline ImageResult image_with_maps(const ZModuleMap& f) {
  Presentation p(detail::preimage_of_relations(f));
  return {p.module(), ZModuleMap(f.source(), p.module(), p.projection()),
          ZModuleMap(p.module(), f.target(), f.matrix() * p.lifts())};
}

inline ZModule kernel(const ZModuleMap& f) { return kernel_with_map(f).module; }
inline ZModule cokernel(const ZModuleMap& f) { return cokernel_with_map(f).module; }
inline ZModule image(const ZModuleMap& f) { return image_with_maps(f).module; }

inline bool is_injective(const ZModuleMap& f) { return kernel(f).is_zero(); }
inline bool is_surjective(const ZModuleMap& f) { return cokernel(f).is_zero(); }

/// Submodule of M generated by the given elements (columns), with its
/// inclusion.
inline ModuleWithMap submodule(const ZModule& m, const IntMatrix& generators) {
  ZModuleMap g(ZModule::free(generators.cols()), m, generators);
  auto im = image_with_maps(g);
  return {im.module, im.inclusion};
}

/// M / (submodule generated by the columns), with the projection.
inline ModuleWithMap quotient(const ZModule& m, const IntMatrix& generators) {
  return cokernel_with_map(ZModuleMap(ZModule::free(generators.cols()), m, generators));
}

// ---------------------------------------------------------------------------
// Ideals, annihilators, primes

/// The ideal (n) of ℤ, n >= 0.
struct IdealZ {
  Integer n = 0;

  IdealZ() = default;
  explicit IdealZ(const Integer& g) : n(abs(g)) {}

  bool is_zero() const { return n == 0; }
  bool is_unit() const { return n == 1; }
  std::string to_string() const { return "(" + n.get_str() + ")"; }
  friend bool operator==(const IdealZ&, const IdealZ&) = default;
};

inline IdealZ ann(const ZModule& m) {
  if (m.free_rank() > 0) return IdealZ(0);
  if (m.is_zero()) return IdealZ(1);
  return IdealZ(m.invariant_factors().back());
}

inline SpecSubset supp(const ZModule& m) {
  if (m.is_zero()) return SpecSubset::empty(Backend::integers());
  return v_of_integer(ann(m).n);
}

inline SpecSubset ass(const ZModule& m) {
  std::vector<PrimeId> g;
  if (m.free_rank() > 0) g.push_back(PrimeId::generic());
  if (!m.invariant_factors().empty())
    for (auto& p : prime_divisors(m.invariant_factors().back())) g.push_back(PrimeId::maximal(p));
  return SpecSubset(Backend::integers(), std::move(g), false);
}

/// The module ℤ/I.
inline ZModule quotient_ring(const IdealZ& i) { return ZModule::cyclic(i.n); }

/// Cyclic orders of the canonical summands (0 for ℤ).
inline std::vector<Integer> cyclic_orders(const ZModule& m) {
  std::vector<Integer> out = m.invariant_factors();
  out.insert(out.end(), m.free_rank(), Integer(0));
  return out;
}

/// Hom(M, N) from the closed forms Hom(ℤ/a, ℤ/b) = ℤ/gcd(a, b),
/// Hom(ℤ, N) = N, Hom(ℤ/a, ℤ) = 0.
inline ZModule hom(const ZModule& m, const ZModule& n) {
  std::vector<Integer> orders;
  for (auto& a : cyclic_orders(m))
    for (auto& b : cyclic_orders(n)) {
      if (a == 0) orders.push_back(b);
      else if (b != 0) orders.push_back(gcd_of(a, b));
    }
  return ZModule::from_cyclic_orders(orders);
}

/// Ext¹(M, N): Ext¹(ℤ/a, N) = N/aN, Ext¹(ℤ, N) = 0.
inline ZModule ext1(const ZModule& m, const ZModule& n) {
  std::vector<Integer> orders;
  for (auto& a : cyclic_orders(m)) {
    if (a == 0) continue;
    for (auto& b : cyclic_orders(n)) orders.push_back(b == 0 ? a : gcd_of(a, b));
  }
  return ZModule::from_cyclic_orders(orders);
}

/// inf { i : Ext^i(N, M) != 0 }; over ℤ only degrees 0 and 1 can be nonzero.
inline ExtCount grade_module(const ZModule& n, const ZModule& m) {
  if (n.is_zero()) throw Error("grade of the zero module is an infimum over the empty set");
  if (!hom(n, m).is_zero()) return ExtCount::finite(0);
  if (!ext1(n, m).is_zero()) return ExtCount::finite(1);
  return ExtCount::infinity();
}

inline ExtCount grade_ideal(const IdealZ& i, const ZModule& m) {
  if (i.is_unit()) return ExtCount::infinity();
  return grade_module(quotient_ring(i), m);
}

/// grade M = grade(Ann M, ℤ).
inline ExtCount grade_of(const ZModule& m) { return grade_ideal(ann(m), ZModule::free(1)); }

inline std::size_t rank(const ZModule& m) { return m.free_rank(); }

inline ExtCount length(const ZModule& m) {
  if (m.free_rank() > 0) return ExtCount::infinity();
  std::uint64_t l = 0;
  for (auto& d : m.invariant_factors()) l += big_omega(d);
  return ExtCount::finite(l);
}

/// Krull dimension; nullopt for the zero module.
inline std::optional<int> dim(const ZModule& m) {
  if (m.is_zero()) return std::nullopt;
  return m.free_rank() > 0 ? 1 : 0;
}

inline ExtCount height_ann(const ZModule& m) {
  IdealZ a = ann(m);
  if (a.is_unit()) return ExtCount::infinity();
  return ExtCount::finite(a.is_zero() ? 0 : 1);
}

/// Γ_I(M): elements killed by a power of I. Γ_(0)(M) = M by convention.
inline ZModule torsion_submodule(const IdealZ& i, const ZModule& m) {
  if (i.is_zero()) return m;
  if (i.is_unit()) return ZModule::zero();
  std::vector<std::pair<Integer, unsigned>> keep;
  for (auto& [p, e] : m.elementary_divisors())
    if (divides(p, i.n)) keep.emplace_back(p, e);
  return ZModule::from_elementary(0, keep);
}

inline bool is_torsion_for(const IdealZ& i, const ZModule& m) { return torsion_submodule(i, m) == m; }
inline bool is_torsionfree_for(const IdealZ& i, const ZModule& m) { return torsion_submodule(i, m).is_zero(); }

// ---------------------------------------------------------------------------
// Filtrations and coprimary structure

struct CyclicFiltration {
  std::vector<IdealZ> ideals;           // I₁ … I_n
  std::vector<ZModule> stages;          // M₀ = M, …, M_n = 0
  std::vector<std::vector<Integer>> generators;  // image of xᵢ in M_{i-1}
};

/// Chain M = M₀ ⊋ … ⊋ M_n = 0 with Mᵢ₋₁/… realized as quotients
/// Mᵢ = Mᵢ₋₁ / ⟨xᵢ⟩ and ⟨xᵢ⟩ ≅ ℤ/Iᵢ. Generators are taken in canonical order.
inline CyclicFiltration cyclic_filtration(const ZModule& m) {
  CyclicFiltration out;
  out.stages.push_back(m);
  const std::size_t n = m.ngens();
  IntMatrix killed(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Presentation prev(IntMatrix::hconcat(m.relations(), killed));
    std::vector<Integer> e(n);
    e[i] = 1;
    auto x = prev.to_canonical(e);
    out.generators.push_back(x);
    out.ideals.emplace_back(prev.module().element_order(x));
    killed = IntMatrix::hconcat(killed, IntMatrix::column(e));
    out.stages.push_back(Presentation(IntMatrix::hconcat(m.relations(), killed)).module());
  }
  return out;
}

/// Replays a filtration: each step needs ℤ/Iᵢ → Mᵢ₋₁ (1 ↦ xᵢ) injective with
/// cokernel Mᵢ, and the last stage must be zero.
inline bool replay_filtration(const CyclicFiltration& f) {
  if (f.stages.size() != f.ideals.size() + 1 || f.generators.size() != f.ideals.size()) return false;
  if (!f.stages.back().is_zero()) return false;
  for (std::size_t i = 0; i < f.ideals.size(); ++i) {
    ZModule c = quotient_ring(f.ideals[i]);
    if (c.ngens() != 1) return false;
    ZModuleMap g(c, f.stages[i], IntMatrix::column(f.generators[i]));
    if (!is_injective(g) || !(cokernel(g) == f.stages[i + 1])) return false;
  }
  return true;
}

inline ZModule primary_part(const ZModule& m, const Integer& p) { return torsion_submodule(IdealZ(p), m); }

/// For each 𝔭 ∈ Ass M, the 𝔭-coprimary quotient M/N_𝔭.
inline std::vector<std::pair<PrimeId, ZModule>> coprimary_components(const ZModule& m) {
  std::vector<std::pair<PrimeId, ZModule>> out;
  const SpecSubset a = ass(m);
  for (auto& p : a.generators()) {
    if (p.kind == PrimeId::Kind::ZGeneric) out.emplace_back(p, ZModule::free(m.free_rank()));
    else out.emplace_back(p, primary_part(m, p.p));
  }
  return out;
}

/// The diagonal map M → ⊕ M/N_𝔭 onto the coprimary components.
inline ZModuleMap coprimary_diagonal(const ZModule& m) {
  auto comps = coprimary_components(m);
  // Build the map piecewise in elementary coordinates, then normalize by
  // presenting the target as the direct sum of the component presentations.
  std::vector<Integer> blocks;
  std::vector<std::vector<Integer>> rows;  // one row per target cyclic block
  const std::size_t k = m.torsion_count();
  for (auto& [p, c] : comps) {
    if (p.kind == PrimeId::Kind::ZGeneric) {
      for (std::size_t j = 0; j < m.free_rank(); ++j) {
        std::vector<Integer> r(m.ngens());
        r[k + j] = 1;
        rows.push_back(r);
        blocks.push_back(0);
      }
      continue;
    }
    // ℤ/dᵢ → ℤ/p^{v_p(dᵢ)} for each torsion generator with p | dᵢ.
    for (std::size_t i = 0; i < k; ++i) {
      Integer q = 1, d = m.invariant_factors()[i];
      while (divides(p.p, d)) {
        d /= p.p;
        q *= p.p;
      }
      if (q == 1) continue;
      std::vector<Integer> r(m.ngens());
      r[i] = 1;
      rows.push_back(r);
      blocks.push_back(q);
    }
  }
  // Presentation of ⊕ ℤ/blocks and its canonical coordinates.
  IntMatrix rel(blocks.size(), 0);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    if (blocks[b] != 0) {
      std::vector<Integer> e(blocks.size());
      e[b] = blocks[b];
      rel = IntMatrix::hconcat(rel, IntMatrix::column(e));
    }
  Presentation pres(rel);
  IntMatrix raw = rows.empty() ? IntMatrix(0, m.ngens()) : IntMatrix::from_rows(rows);
  return {m, pres.module(), pres.projection() * raw};
}

/// Mᵢ₊₁ = ∩ kernels of a generating set of Hom(Mᵢ, ℤ/p), until 0.
inline std::vector<ZModule> coprimary_chain(const ZModule& m, const PrimeId& p) {
  if (!p.is_maximal_z()) throw Error("coprimary chain needs a maximal prime of Z");
  auto a = ass(m);
  if (a.generators().size() != 1 || !(a.generators().front() == p))
    throw Error("module " + m.to_string() + " is not " + to_string(p, Backend::integers()) + "-coprimary");
  std::vector<ZModule> chain{m};
  while (!chain.back().is_zero()) {
    const ZModule& cur = chain.back();
    // Hom(Mᵢ, ℤ/p) is generated by the coordinate projections.
    const std::size_t s = cur.ngens();
    ZModule fp = direct_power(ZModule::cyclic(p.p), s);
    ZModuleMap pr(cur, fp, IntMatrix::identity(s));
    ZModule next = kernel(pr);
    if (!(length(next) < length(cur))) throw Error("coprimary chain failed to descend");
    chain.push_back(next);
  }
  return chain;
}

}  // namespace subcat
