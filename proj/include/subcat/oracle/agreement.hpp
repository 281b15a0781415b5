#pragma once

#include <string>
#include <vector>

#include "subcat/classify.hpp"
#include "subcat/oracle/oracle.hpp"

namespace subcat::oracle {

/// Members of the universe satisfying the criterion of the subcategory
/// generated by `gens`.
inline std::vector<ZModule> criterion_set(const std::vector<ZModule>& universe, const std::vector<ZModule>& gens, ClosureKind kind) {
  std::vector<Module> g(gens.begin(), gens.end());
  std::vector<ZModule> out;
  for (auto& m : universe)
    if (generated_member(m, g, kind, Backend::integers())) out.push_back(m);
  return out;
}

struct AgreementReport {
  std::size_t sets_checked = 0;
  std::size_t mismatches = 0;
  std::size_t clipped_runs = 0;
  std::string first_mismatch;

  bool passed() const { return mismatches == 0; }
};

/// Closure of every generator set of size ≤ max_gens (drawn from the universe)
/// against the criterion set, compared inside the universe.
inline AgreementReport closure_agreement(Oracle& o, OpSet kinds, ClosureKind kind, std::size_t max_gens) {
  const auto u = enumerate_universe(o.universe());
  AgreementReport rep;
  std::vector<std::size_t> idx;
  auto visit = [&] {
    std::vector<ZModule> gens;
    for (auto i : idx) gens.push_back(u[i]);
    auto closed = close(o, gens, kinds);
    auto expect = criterion_set(u, gens, kind);
    ++rep.sets_checked;
    if (closed.clipped) ++rep.clipped_runs;
    if (closed.members != expect) {
      if (rep.mismatches++ == 0) {
        std::string s = "gens [";
        for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? ", " : "") + gens[i].to_string();
        s += "]: closure has " + std::to_string(closed.members.size()) + " members, criterion " + std::to_string(expect.size());
        rep.first_mismatch = s;
      }
    }
  };
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    visit();
    if (idx.size() == max_gens) return;
    for (std::size_t i = start; i < u.size(); ++i) {
      idx.push_back(i);
      rec(i + 1);
      idx.pop_back();
    }
  };
  rec(0);
  return rep;
}

}  // namespace subcat::oracle
