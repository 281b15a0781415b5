#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "subcat/error.hpp"
#include "subcat/zmod.hpp"

namespace subcat {

/// Bounded complex of free ℤ-modules F_b, …, F_{b+L}. differentials[k] is
/// d_{b+k+1}: F_{b+k+1} → F_{b+k}, a rank(F_{b+k}) × rank(F_{b+k+1}) matrix.
class FreeComplex {
 public:
  FreeComplex() = default;
  FreeComplex(long bottom_degree, std::vector<std::size_t> ranks, std::vector<IntMatrix> differentials)
      : bottom_(bottom_degree), ranks_(std::move(ranks)), diffs_(std::move(differentials)) {
    if (ranks_.empty()) {
      if (!diffs_.empty()) throw Error("differentials without modules");
      return;
    }
    if (diffs_.size() + 1 != ranks_.size()) throw Error("need one differential between consecutive modules");
    for (std::size_t k = 0; k < diffs_.size(); ++k)
      if (diffs_[k].rows() != ranks_[k] || diffs_[k].cols() != ranks_[k + 1])
        throw Error("differential d_" + std::to_string(bottom_ + static_cast<long>(k) + 1) + " has the wrong shape");
    for (std::size_t k = 0; k + 1 < diffs_.size(); ++k)
      if (!(diffs_[k] * diffs_[k + 1]).is_zero())
        throw Error("d_" + std::to_string(bottom_ + static_cast<long>(k) + 1) + " · d_" +
                    std::to_string(bottom_ + static_cast<long>(k) + 2) + " is not zero");
  }

  /// Rebuild from a bottom degree and differentials alone.
  static FreeComplex from_differentials(long bottom_degree, std::vector<IntMatrix> d) {
    if (d.empty()) throw Error("need at least one differential to infer ranks");
    std::vector<std::size_t> ranks{d.front().rows()};
    for (auto& m : d) ranks.push_back(m.cols());
    return {bottom_degree, ranks, std::move(d)};
  }

  long bottom_degree() const { return bottom_; }
  long top_degree() const { return bottom_ + static_cast<long>(ranks_.size()) - 1; }
  const std::vector<std::size_t>& ranks() const { return ranks_; }
  const std::vector<IntMatrix>& differentials() const { return diffs_; }

  std::size_t rank_at(long i) const {
    if (ranks_.empty() || i < bottom_ || i > top_degree()) return 0;
    return ranks_[static_cast<std::size_t>(i - bottom_)];
  }

  /// d_i: F_i → F_{i-1} (zero matrix of the right shape outside the range).
  IntMatrix differential(long i) const {
    if (ranks_.empty() || i <= bottom_ || i > top_degree()) return IntMatrix(rank_at(i - 1), rank_at(i));
    return diffs_[static_cast<std::size_t>(i - bottom_ - 1)];
  }

 private:
  long bottom_ = 0;
  std::vector<std::size_t> ranks_;
  std::vector<IntMatrix> diffs_;
};

/// H_i = ker d_i / im d_{i+1}.
inline ZModule homology(const FreeComplex& c, long i) {
  if (c.rank_at(i) == 0) return ZModule::zero();
  IntMatrix k = kernel_basis(c.differential(i));
  IntMatrix next = c.differential(i + 1);
  auto coords = solve_integer(k, next);
  if (!coords) throw Error("image of d_" + std::to_string(i + 1) + " is not inside ker d_" + std::to_string(i));
  return from_presentation(*coords);
}

/// Degrees in which F is nonzero, in order.
inline std::vector<long> degrees(const FreeComplex& c) {
  std::vector<long> out;
  for (long i = c.bottom_degree(); i <= c.top_degree(); ++i) out.push_back(i);
  return out;
}

namespace detail {

inline std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t r, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < r; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace detail

/// Koszul complex K(x₁, …, x_r) over ℤ in degrees 0..r, with basis e_J of
/// F_i indexed by increasing i-subsets J and
/// d(e_J) = Σ_k (−1)^{k+1} x_{j_k} e_{J∖j_k}.
inline FreeComplex koszul_complex(const std::vector<Integer>& x) {
  if (x.empty()) throw Error("Koszul complex of an empty sequence");
  const std::size_t r = x.size();
  std::vector<std::vector<std::vector<std::size_t>>> basis;
  std::vector<std::size_t> ranks;
  for (std::size_t i = 0; i <= r; ++i) {
    basis.push_back(detail::subsets_of_size(r, i));
    ranks.push_back(basis.back().size());
  }
  std::vector<IntMatrix> d;
  for (std::size_t i = 1; i <= r; ++i) {
    IntMatrix m(ranks[i - 1], ranks[i]);
    for (std::size_t col = 0; col < basis[i].size(); ++col) {
      const auto& J = basis[i][col];
      for (std::size_t k = 0; k < J.size(); ++k) {
        std::vector<std::size_t> face = J;
        face.erase(face.begin() + static_cast<long>(k));
        auto row = static_cast<std::size_t>(std::find(basis[i - 1].begin(), basis[i - 1].end(), face) - basis[i - 1].begin());
        m(row, col) += (k % 2 == 0 ? x[J[k]] : Integer(-x[J[k]]));
      }
    }
    d.push_back(m);
  }
  return {0, ranks, d};
}

struct GfReport {
  std::vector<ZModule> homology;  // H_0 … H_r
  bool h0_is_quotient = false;    // H_0 ≅ ℤ/n
  bool annihilated = false;       // n · H_j = 0 for every j
  bool supported_in_v = false;    // Supp H_j ⊆ V((n)) for every j
  bool exact_if_unit = true;      // n = 1 ⇒ every H_j = 0

  bool passed() const { return h0_is_quotient && annihilated && supported_in_v && exact_if_unit; }
};

/// The three assertions on the Koszul complex of a generating list of (n).
inline GfReport verify_gf(const Integer& n, const std::vector<Integer>& gens) {
  Integer g = 0;
  for (auto& x : gens) g = gcd_of(g, x);
  if (g != abs(n)) throw Error("generators have gcd " + g.get_str() + ", not " + n.get_str());
  FreeComplex k = koszul_complex(gens);
  GfReport r;
  for (long i = 0; i <= k.top_degree(); ++i) r.homology.push_back(homology(k, i));
  IdealZ ideal(n);
  r.h0_is_quotient = r.homology.front() == quotient_ring(ideal);
  SpecSubset v = v_of_integer(n);
  r.annihilated = true;
  r.supported_in_v = true;
  for (auto& h : r.homology) {
    // n kills H iff ann(H) divides into (n): (n) ⊆ ann H.
    IdealZ a = ann(h);
    r.annihilated = r.annihilated && divides(a.n, ideal.n);
    r.supported_in_v = r.supported_in_v && leq(supp(h), v);
    if (ideal.is_unit()) r.exact_if_unit = r.exact_if_unit && h.is_zero();
  }
  return r;
}

/// Join of the supports of all homology modules.
inline SpecSubset complex_support(const FreeComplex& c) {
  SpecSubset s = SpecSubset::empty(Backend::integers());
  for (long i : degrees(c)) s = lattice_join(s, supp(homology(c, i)));
  return s;
}

/// C lies in the thick subcategory attached to the closed set S: every
/// homology module is supported in S.
inline bool thick_member(const FreeComplex& c, const SpecSubset& s) {
  if (s.backend().kind != BackendKind::Z) throw BackendMismatch("complexes live over Z");
  if (!is_specialization_closed(s)) throw Error("thick membership needs a specialization-closed set");
  for (long i : degrees(c))
    if (!leq(supp(homology(c, i)), s)) return false;
  return true;
}

/// Koszul probe complexes for a torsion module: one K(Iᵢ) per step of the
/// canonical cyclic filtration.
inline std::vector<FreeComplex> gf_pipeline(const ZModule& m) {
  std::vector<FreeComplex> out;
  for (auto& i : cyclic_filtration(m).ideals) out.push_back(koszul_complex({i.n}));
  return out;
}

struct FgProbeReport {
  bool generators_are_members = true;  // K(p) ∈ S for each generator p
  bool supports_join_to_s = false;     // ∨ Supp K(p) == S
  bool outsider_rejected = true;       // K(q) ∉ S for the given outside primes
};

/// Probe the f/g round trip on a closed set of maximal primes over ℤ.
inline FgProbeReport fg_probe(const SpecSubset& s, const std::vector<Integer>& outside_primes) {
  FgProbeReport r;
  SpecSubset join = SpecSubset::empty(Backend::integers());
  for (auto& p : s.generators()) {
    if (!p.is_maximal_z()) throw Error("fg probe expects maximal generators");
    FreeComplex k = koszul_complex({p.p});
    r.generators_are_members = r.generators_are_members && thick_member(k, s);
    join = lattice_join(join, complex_support(k));
  }
  r.supports_join_to_s = same_set(join, s);
  for (auto& q : outside_primes) {
    if (s.contains(PrimeId::maximal(q))) throw Error("probe prime " + q.get_str() + " lies in S");
    r.outsider_rejected = r.outsider_rejected && !thick_member(koszul_complex({q}), s);
  }
  return r;
}

}  // namespace subcat
