#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "subcat/classify.hpp"
#include "subcat/koszul.hpp"
#include "subcat/oracle/agreement.hpp"
#include "subcat/oracle/derive.hpp"
#include "subcat/oracle/oracle.hpp"
#include "subcat/random_modules.hpp"
#include "subcat/report.hpp"

// The acceptance matrix. Each suite checks one statement exactly and reports
// its counts; the CLI `suite` verb and the acceptance binary both run these.

namespace subcat::suites {

using report::json;

struct Options {
  std::uint64_t seed = 1;
  std::optional<std::size_t> trials;  // overrides every randomized count
  std::optional<BackendKind> backend;  // restricts the two-backend suites
};

struct SuiteResult {
  std::string name;
  std::string statement;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  bool passed = false;
  bool vacuous = false;
  std::string summary;
  json detail = json::object();
  double seconds = 0;

  json to_json() const {
    json j = {{"suite", name}, {"statement", statement}, {"seed", seed}, {"trials", trials}, {"passed", passed}};
    if (vacuous) j["warning"] = "no trials run; vacuous pass";
    j["summary"] = summary;
    j["detail"] = detail;
    return j;
  }
};

namespace detail {

inline std::size_t count(const Options& o, std::size_t fallback) { return o.trials.value_or(fallback); }

inline std::vector<Backend> backends(const Options& o) {
  std::vector<Backend> out;
  if (!o.backend || *o.backend == BackendKind::Z) out.push_back(Backend::integers());
  if (!o.backend || *o.backend == BackendKind::Monomial) out.push_back(Backend::monomial({"x", "y", "z"}));
  return out;
}

inline SuiteResult start(std::string name, std::string statement, const Options& o, std::size_t trials) {
  SuiteResult r;
  r.name = std::move(name);
  r.statement = std::move(statement);
  r.seed = o.seed;
  r.trials = trials;
  return r;
}

inline void finish_vacuous(SuiteResult& r) {
  if (r.trials == 0) {
    r.vacuous = true;
    r.passed = true;
    r.summary = "0 trials";
  }
}

inline std::string join(const std::vector<ZModule>& ms) {
  std::string s;
  for (auto& m : ms) s += (s.empty() ? "" : ", ") + m.to_string();
  return "[" + s + "]";
}

}  // namespace detail

// 1 -------------------------------------------------------------------------

inline SuiteResult snf(const Options& o) {
  auto r = detail::start("snf", "Smith normal form: U·A·V = D, unimodular U and V, divisibility chain, pivot-strategy independence", o,
                         detail::count(o, 1000));
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  std::uniform_int_distribution<long> entry(-50, 50);
  std::size_t ok = 0;
  for (std::size_t t = 0; t < r.trials; ++t) {
    IntMatrix a(dim(rng), dim(rng));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = entry(rng);
    auto s = smith_normal_form(a, PivotStrategy::MinimalEntry);
    auto g = smith_normal_form(a, PivotStrategy::GcdCombination);
    bool good = s.U * a * s.V == s.D && abs(determinant(s.U)) == 1 && abs(determinant(s.V)) == 1;
    good = good && g.U * a * g.V == g.D && abs(determinant(g.U)) == 1 && abs(determinant(g.V)) == 1 && g.D == s.D;
    auto d = s.diagonal();
    for (std::size_t i = 0; i < s.D.rows(); ++i)
      for (std::size_t j = 0; j < s.D.cols(); ++j)
        if (i != j && s.D(i, j) != 0) good = false;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] < 0) good = false;
      if (i + 1 < d.size() && !divides(d[i], d[i + 1])) good = false;
    }
    if (good) ++ok;
    else if (r.detail.find("counterexample") == r.detail.end()) r.detail["counterexample"] = report::matrix(a);
  }
  r.passed = ok == r.trials;
  r.summary = std::to_string(ok) + "/" + std::to_string(r.trials) + " matrices";
  detail::finish_vacuous(r);
  return r;
}

// 2 -------------------------------------------------------------------------

inline SuiteResult roundtrip(const Options& o) {
  auto r = detail::start("roundtrip", "associated-prime criterion and union of associated primes are mutually inverse", o,
                         detail::count(o, 200));
  r.passed = true;
  json per = json::array();
  for (const Backend& b : detail::backends(o)) {
    auto rep = roundtrip_suite(b, r.trials, o.seed, 4);
    per.push_back({{"backend", rep.backend},
                   {"sets_checked", rep.sets_checked},
                   {"membership_checks", rep.membership_checks},
                   {"failures", rep.failures}});
    r.passed = r.passed && rep.passed();
    r.summary += (r.summary.empty() ? "" : "; ") + rep.backend + ": " + std::to_string(rep.sets_checked) + " sets, " +
                 std::to_string(rep.membership_checks) + " probes, " + std::to_string(rep.failures.size()) + " failures";
  }
  r.detail["backends"] = std::move(per);
  detail::finish_vacuous(r);
  return r;
}

// 3 -------------------------------------------------------------------------

inline SuiteResult adjunction(const Options& o) {
  auto r = detail::start("adjunction", "support/criterion maps form adjoint pairs and the criterion round trip is the identity", o, 0);
  r.passed = true;
  json per = json::array();
  std::size_t checks = 0;
  for (const Backend& b : detail::backends(o)) {
    auto fam = default_probe_family(b, 3);
    for (auto pair : {AdjointPair::TauSigma, AdjointPair::NuMu, AdjointPair::PsiPhi}) {
      auto rep = adjunction_check(pair, fam);
      checks += rep.checked;
      r.passed = r.passed && rep.passed();
      per.push_back({{"backend", b.to_string()}, {"pair", rep.pair}, {"checked", rep.checked}, {"violations", rep.violations}});
    }
    std::size_t ids = 0, bad = 0;
    for (auto& s : fam.closed_sets) {
      ++ids;
      if (!tau_sigma_identity(s)) {
        ++bad;
        r.detail["identity_failure"] = s.to_string();
      }
    }
    checks += ids;
    r.passed = r.passed && bad == 0;
    per.push_back({{"backend", b.to_string()}, {"pair", "tau-sigma identity"}, {"checked", ids}, {"violations", bad}});
  }
  r.trials = checks;
  r.summary = std::to_string(checks) + " checks";
  r.detail["checks"] = std::move(per);
  return r;
}

// 4, 5 ----------------------------------------------------------------------

inline oracle::Universe acceptance_universe() { return {{2, 3}, 2, 1, 2}; }

inline SuiteResult closure_vs_criterion(const Options& o, oracle::Oracle& orc, bool subext) {
  const auto kinds = subext ? oracle::Subobjects | oracle::Extensions
                            : oracle::Subobjects | oracle::Quotients | oracle::Extensions | oracle::FiniteSums;
  auto r = detail::start(subext ? "subext-closure" : "serre-closure",
                         subext ? "closure under subobjects and extensions equals the associated-prime criterion set"
                                : "closure under subobjects, quotients, extensions and sums equals the support criterion set",
                         o, 0);
  auto rep = oracle::closure_agreement(orc, kinds, subext ? ClosureKind::SubExt : ClosureKind::Serre, 2);
  r.trials = rep.sets_checked;
  r.passed = rep.passed();
  r.detail = {{"universe", orc.universe().to_string()},
              {"sets_checked", rep.sets_checked},
              {"mismatches", rep.mismatches},
              {"clipped_runs", rep.clipped_runs}};
  if (!rep.passed()) r.detail["first_mismatch"] = rep.first_mismatch;
  r.summary = std::to_string(rep.sets_checked) + " generator sets, " + std::to_string(rep.mismatches) + " mismatches, " +
              std::to_string(rep.clipped_runs) + " runs clipped";
  if (subext) {
    const ZModule z = ZModule::free(1), two = ZModule::cyclic(2);
    const bool serre = generated_member(two, {z}, ClosureKind::Serre, Backend::integers());
    const bool se = generated_member(two, {z}, ClosureKind::SubExt, Backend::integers());
    auto oracle_serre = oracle::close(orc, {z}, oracle::Subobjects | oracle::Quotients | oracle::Extensions | oracle::FiniteSums);
    auto oracle_se = oracle::close(orc, {z}, oracle::Subobjects | oracle::Extensions);
    const bool probe = serre && !se && oracle_serre.contains(two) && !oracle_se.contains(two);
    r.detail["probe"] = {{"gens", "Z"}, {"module", "Z/2"}, {"serre_member", serre}, {"subext_member", se},
                         {"oracle_serre", oracle_serre.contains(two)}, {"oracle_subext", oracle_se.contains(two)}};
    r.passed = r.passed && probe;
    r.summary += probe ? "; probe Z/2 over [Z]: serre yes, subext no" : "; probe failed";
  }
  return r;
}

inline SuiteResult serre_closure(const Options& o) {
  oracle::Oracle orc(acceptance_universe());
  return closure_vs_criterion(o, orc, false);
}
inline SuiteResult subext_closure(const Options& o) {
  oracle::Oracle orc(acceptance_universe());
  return closure_vs_criterion(o, orc, true);
}

// 6 -------------------------------------------------------------------------

inline SuiteResult coherent(const Options& o, std::size_t closures = 50, std::size_t derivations = 200) {
  if (o.trials) closures = derivations = *o.trials;
  auto r = detail::start("coherent", "closures under kernels, cokernels, extensions and sums are subobject-closed; submodules derive by kernels, cokernels and summands", o,
                         closures + derivations);
  oracle::Oracle orc(acceptance_universe());
  const auto u = oracle::enumerate_universe(orc.universe());
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<std::size_t> pick(0, u.size() - 1), len(1, 2);
  std::size_t closed_ok = 0, clipped = 0;
  for (std::size_t t = 0; t < closures; ++t) {
    std::vector<ZModule> gens;
    for (std::size_t k = len(rng); k > 0; --k) gens.push_back(u[pick(rng)]);
    auto c = oracle::close(orc, gens, oracle::Kernels | oracle::Cokernels | oracle::Extensions | oracle::FiniteSums);
    if (c.clipped) ++clipped;
    auto chk = oracle::check_closed(orc, c.members, oracle::Subobjects);
    if (chk.closed) ++closed_ok;
    else if (r.detail.find("closure_counterexample") == r.detail.end())
      r.detail["closure_counterexample"] = {{"gens", detail::join(gens)}, {"missing", chk.counterexample->to_string()}, {"from", chk.witness}};
  }
  std::uniform_int_distribution<long> entry(-6, 6);
  std::uniform_int_distribution<std::size_t> ncols(0, 3);
  std::size_t replay_ok = 0, steps = 0, summands = 0;
  for (std::size_t t = 0; t < derivations; ++t) {
    ZModule x = random_zmodule(rng, 2, 2);
    IntMatrix g(x.ngens(), ncols(rng));
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) = entry(rng);
    auto trace = oracle::derive_submodule(x, g);
    auto rep = oracle::replay(trace);
    bool good = rep.ok && trace.steps.back().result == submodule(x, g).module;
    for (auto& s : trace.steps) {
      good = good && (s.op != oracle::StepOp::Start || &s == &trace.steps.front());
      summands += s.op == oracle::StepOp::Summand;
    }
    steps += trace.steps.size();
    if (good) ++replay_ok;
    else if (r.detail.find("derive_failure") == r.detail.end())
      r.detail["derive_failure"] = {{"ambient", x.to_string()}, {"sub", report::matrix(g)}, {"replay", rep.failure}};
  }
  r.passed = closed_ok == closures && replay_ok == derivations;
  r.detail["closures"] = {{"checked", closures}, {"subobject_closed", closed_ok}, {"clipped", clipped}};
  r.detail["derivations"] = {{"checked", derivations}, {"replayed", replay_ok}, {"steps", steps}, {"summand_steps", summands}};
  r.summary = std::to_string(closed_ok) + "/" + std::to_string(closures) + " closures subobject-closed (" + std::to_string(clipped) +
              " clipped), " + std::to_string(replay_ok) + "/" + std::to_string(derivations) + " traces replay";
  detail::finish_vacuous(r);
  return r;
}

// 7 -------------------------------------------------------------------------

inline SuiteResult gf(const Options& o) {
  auto r = detail::start("gf", "Koszul complex of generators of (n): H0 = Z/n, n kills all homology, supports in V(n), exact for the unit ideal", o,
                         detail::count(o, 200));
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<std::size_t> len(1, 4);
  std::uniform_int_distribution<long> entry(-30, 30);
  std::size_t ok = 0, units = 0;
  for (std::size_t t = 0; t < r.trials; ++t) {
    std::vector<Integer> gens;
    for (std::size_t k = len(rng); k > 0; --k) gens.push_back(entry(rng));
    Integer n = 0;
    for (auto& x : gens) n = gcd_of(n, x);
    units += n == 1;
    if (verify_gf(n, gens).passed()) ++ok;
    else if (r.detail.find("counterexample") == r.detail.end()) r.detail["counterexample"] = report::integers(gens);
  }
  r.passed = ok == r.trials;
  r.detail["unit_ideal_cases"] = units;
  r.summary = std::to_string(ok) + "/" + std::to_string(r.trials) + " generator lists (" + std::to_string(units) + " unit ideals)";
  detail::finish_vacuous(r);
  return r;
}

// 8 -------------------------------------------------------------------------

inline SuiteResult filtration(const Options& o) {
  auto r = detail::start("filtration", "cyclic filtration M = M0 > ... > Mn = 0 replays with rank and torsion-order accounting", o,
                         detail::count(o, 500));
  std::mt19937_64 rng(o.seed);
  std::size_t ok = 0;
  for (std::size_t t = 0; t < r.trials; ++t) {
    ZModule m = random_zmodule(rng, 2, 3);
    auto f = cyclic_filtration(m);
    bool good = replay_filtration(f) && f.stages.front() == m;
    for (std::size_t i = 0; good && i < f.ideals.size(); ++i) {
      const ZModule &prev = f.stages[i], &next = f.stages[i + 1];
      if (f.ideals[i].is_zero()) good = prev.free_rank() == next.free_rank() + 1 && prev.torsion_order() == next.torsion_order();
      else good = prev.free_rank() == next.free_rank() && prev.torsion_order() == next.torsion_order() * f.ideals[i].n;
    }
    if (good) ++ok;
    else if (r.detail.find("counterexample") == r.detail.end()) r.detail["counterexample"] = m.to_string();
  }
  r.passed = ok == r.trials;
  r.summary = std::to_string(ok) + "/" + std::to_string(r.trials) + " modules";
  detail::finish_vacuous(r);
  return r;
}

// 9 -------------------------------------------------------------------------

inline SuiteResult coprimary(const Options& o) {
  auto r = detail::start("coprimary", "coprimary chains descend to 0 within length steps; the diagonal into coprimary components is an embedding", o,
                         detail::count(o, 500));
  std::mt19937_64 rng(o.seed);
  std::size_t ok = 0, chains = 0;
  for (std::size_t t = 0; t < r.trials; ++t) {
    ZModule m = random_zmodule(rng, 2, 3);
    bool good = true;
    auto d = coprimary_diagonal(m);
    good = is_injective(d);
    Integer order = 1;
    std::size_t rank_sum = 0;
    for (auto& [p, c] : coprimary_components(m)) {
      const SpecSubset a = ass(c);
      good = good && a.generators().size() == 1 && a.generators().front() == p;
      order *= c.torsion_order();
      rank_sum += c.free_rank();
      if (!p.is_maximal_z()) continue;
      auto ch = coprimary_chain(c, p);
      ++chains;
      const auto len = length(c);
      good = good && ch.back().is_zero() && len.is_finite() && ch.size() - 1 <= len.value;
      for (std::size_t i = 0; i + 1 < ch.size(); ++i) good = good && length(ch[i + 1]) < length(ch[i]);
    }
    good = good && order == m.torsion_order() && rank_sum == m.free_rank() && d.target().torsion_order() == order &&
           d.target().free_rank() == rank_sum;
    if (good) ++ok;
    else if (r.detail.find("counterexample") == r.detail.end()) r.detail["counterexample"] = m.to_string();
  }
  r.passed = ok == r.trials;
  r.detail["chains"] = chains;
  r.summary = std::to_string(ok) + "/" + std::to_string(r.trials) + " modules, " + std::to_string(chains) + " chains";
  detail::finish_vacuous(r);
  return r;
}

// 10 ------------------------------------------------------------------------

inline SuiteResult examples(const Options& o) {
  const std::size_t trials = detail::count(o, 500);
  auto r = detail::start("examples", "each listed module-side condition agrees with its prime-side description", o, trials);
  r.passed = true;
  json per = json::array();
  std::size_t runs = 0;
  for (const Backend& b : detail::backends(o))
    for (int item = 1; item <= 10; ++item) {
      if (!example_supported(item, b.kind)) continue;
      auto rep = example_suite(item, b, trials, o.seed);
      ++runs;
      r.passed = r.passed && rep.passed();
      json j = {{"item", item}, {"backend", rep.backend}, {"trials", rep.trials}, {"agreements", rep.agreements}, {"left_true", rep.left_true}};
      if (rep.counterexample) j["counterexample"] = *rep.counterexample;
      per.push_back(std::move(j));
    }
  r.detail["items"] = std::move(per);
  r.summary = std::to_string(runs) + " item/backend runs of " + std::to_string(trials) + " trials";
  detail::finish_vacuous(r);
  return r;
}

// 11 ------------------------------------------------------------------------

inline SuiteResult fg(const Options& o) {
  auto r = detail::start("fg", "Koszul probes of the generators of a closed set of maximal primes are thick members whose supports join to the set", o, 0);
  const Backend z = Backend::integers();
  std::vector<PrimeId> pool;
  for (long p : {2, 3, 5, 7}) pool.push_back(PrimeId::maximal(p));
  std::size_t ok = 0, sets = 0;
  for (auto& g : subsets_up_to(pool, 3)) {
    SpecSubset s(z, g, true);
    std::vector<Integer> outside{11};
    for (auto& p : pool)
      if (!s.contains(p)) outside.push_back(p.p);
    auto rep = fg_probe(s, outside);
    ++sets;
    if (rep.generators_are_members && rep.supports_join_to_s && rep.outsider_rejected) ++ok;
    else if (r.detail.find("counterexample") == r.detail.end()) r.detail["counterexample"] = s.to_string();
  }
  r.trials = sets;
  r.passed = ok == sets;
  r.summary = std::to_string(ok) + "/" + std::to_string(sets) + " closed sets";
  return r;
}

// ---------------------------------------------------------------------------

struct Entry {
  std::string name;
  int criterion;
  std::function<SuiteResult(const Options&)> run;
};

inline const std::vector<Entry>& registry() {
  static const std::vector<Entry> all = {
      {"snf", 1, snf},
      {"roundtrip", 2, roundtrip},
      {"adjunction", 3, adjunction},
      {"serre-closure", 4, serre_closure},
      {"subext-closure", 5, subext_closure},
      {"coherent", 6, [](const Options& o) { return coherent(o); }},
      {"gf", 7, gf},
      {"filtration", 8, filtration},
      {"coprimary", 9, coprimary},
      {"examples", 10, examples},
      {"fg", 11, fg},
  };
  return all;
}

inline const Entry* find(const std::string& name) {
  for (auto& e : registry())
    if (e.name == name) return &e;
  return nullptr;
}

inline SuiteResult run(const Entry& e, const Options& o) {
  auto t0 = std::chrono::steady_clock::now();
  SuiteResult r = e.run(o);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace subcat::suites
