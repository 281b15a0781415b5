#pragma once

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subcat/parse.hpp"
#include "subcat/report.hpp"
#include "subcat/suites.hpp"

// Command surface. Exit codes: 0 success, 1 a check failed or found a
// counterexample, 2 usage or parse error.

namespace subcat::cli {

using report::json;

inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;
inline constexpr int kUsage = 2;

namespace detail {

inline std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline void render_text(const json& j, std::ostream& out, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (!j.is_object()) {
    out << pad << scalar_text(j) << "\n";
    return;
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    bool flat = !v.is_structured();
    if (v.is_array()) {
      flat = std::all_of(v.begin(), v.end(), [](const json& x) { return !x.is_structured(); });
      if (flat) {
        std::string s;
        for (auto& x : v) s += (s.empty() ? "" : ", ") + scalar_text(x);
        out << pad << it.key() << ": " << s << "\n";
        continue;
      }
    }
    if (flat) {
      out << pad << it.key() << ": " << scalar_text(v) << "\n";
    } else if (v.is_array()) {
      out << pad << it.key() << ":\n";
      for (auto& x : v) {
        if (x.is_object()) {
          out << pad << "  -\n";
          render_text(x, out, indent + 4);
        } else {
          out << pad << "  - " << x.dump() << "\n";
        }
      }
    } else {
      out << pad << it.key() << ":\n";
      render_text(v, out, indent + 2);
    }
  }
}

// "z", "k[x,y]", or "monomial" together with a variable list.
inline Backend backend(const std::string& name, const std::string& vars) {
  if (name == "monomial") return parse::variables(vars);
  return parse::backend(name);
}

inline ClosureKind closure_kind(const std::string& s) {
  if (s == "torsion") return ClosureKind::Torsion;
  if (s == "serre") return ClosureKind::Serre;
  if (s == "coherent") return ClosureKind::Coherent;
  if (s == "subext") return ClosureKind::SubExt;
  throw ParseError("unknown kind '" + s + "'", 0, "torsion, serre, coherent or subext");
}

inline oracle::Op op_from(const std::string& s) {
  using namespace oracle;
  static const std::vector<std::pair<std::string, Op>> names = {
      {"sub", Subobjects},       {"subobjects", Subobjects}, {"quot", Quotients},     {"quotients", Quotients},
      {"ext", Extensions},       {"extensions", Extensions}, {"ker", Kernels},        {"kernels", Kernels},
      {"coker", Cokernels},      {"cokernels", Cokernels},   {"sum", FiniteSums},     {"finite_sums", FiniteSums},
      {"summand", Summands},     {"summands", Summands},     {"image", Images},       {"images", Images},
  };
  for (auto& [n, op] : names)
    if (n == s) return op;
  throw ParseError("unknown operation '" + s + "'", 0, "sub, quot, ext, ker, coker, sum, summand or image");
}

inline oracle::OpSet ops_from(const std::string& list) {
  oracle::OpSet k = 0;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) k |= op_from(item);
  return k;
}

inline std::vector<ZModule> zmodules(const std::string& text) {
  std::vector<ZModule> out;
  for (auto& m : parse::module_list(text, Backend::integers())) out.push_back(std::get<ZModule>(m));
  return out;
}

struct UniverseFlags {
  std::string primes = "2";
  unsigned max_exp = 1;
  std::size_t max_rank = 0;
  std::size_t max_factors = 2;

  void add(CLI::App* cmd) {
    cmd->add_option("--primes", primes, "comma-separated primes")->capture_default_str();
    cmd->add_option("--max-exp", max_exp, "largest prime-power exponent")->capture_default_str();
    cmd->add_option("--max-rank", max_rank, "largest free rank")->capture_default_str();
    cmd->add_option("--max-factors", max_factors, "most elementary divisors")->capture_default_str();
  }
  oracle::Universe universe() const {
    oracle::Universe u;
    for (auto& p : parse::integer_list(primes)) {
      if (!is_prime(p) || !p.fits_slong_p()) throw ParseError(p.get_str() + " is not a prime", 0, "a list of primes");
      u.primes.push_back(p.get_si());
    }
    u.max_exponent = max_exp;
    u.max_rank = max_rank;
    u.max_torsion_factors = max_factors;
    return u;
  }
};

}  // namespace detail

/// Runs one command line (without the program name).
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classification of subcategories of finitely generated modules: decision procedures and checks", "subcat"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  std::string backend_name = "z", vars = "x,y,z";
  auto add_backend = [&](CLI::App* c) {
    c->add_option("--backend", backend_name, "z, monomial, or k[x,...]")->capture_default_str();
    c->add_option("--vars", vars, "variables for --backend monomial")->capture_default_str();
  };

  json result;
  int code = kOk;
  std::vector<std::string> warnings;

  // snf
  auto* snf = app.add_subcommand("snf", "Smith normal form with transforms");
  std::string matrix_text, strategy = "minimal";
  snf->add_option("matrix", matrix_text, "matrix literal [[a,b],[c,d]]")->required();
  snf->add_option("--strategy", strategy, "pivot strategy")->check(CLI::IsMember({"minimal", "gcd"}))->capture_default_str();
  snf->callback([&] {
    IntMatrix a = parse::matrix(matrix_text);
    auto s = smith_normal_form(a, strategy == "gcd" ? PivotStrategy::GcdCombination : PivotStrategy::MinimalEntry);
    result = {{"A", report::matrix(a)}, {"D", report::matrix(s.D)}, {"U", report::matrix(s.U)}, {"V", report::matrix(s.V)},
              {"diagonal", report::integers(s.diagonal())}, {"rank", s.rank()}};
  });

  // module / ass / supp
  std::string module_text;
  auto* mod = app.add_subcommand("module", "canonical form of a module literal");
  mod->add_option("module", module_text)->required();
  add_backend(mod);
  mod->callback([&] {
    Module m = parse::module(module_text, detail::backend(backend_name, vars));
    result = report::module(m);
    if (auto z = std::get_if<ZModule>(&m)) {
      json ed = json::array();
      for (auto& [p, e] : z->elementary_divisors()) ed.push_back(report::integer(pow_of(p, e)));
      result["elementary_divisors"] = std::move(ed);
    }
  });
  auto* ass_cmd = app.add_subcommand("ass", "associated primes");
  ass_cmd->add_option("module", module_text)->required();
  add_backend(ass_cmd);
  ass_cmd->callback([&] {
    const Backend b = detail::backend(backend_name, vars);
    const SpecSubset a = ass_of(parse::module(module_text, b));
    result = {{"ass", report::primes(a.generators(), b)}};
  });
  auto* supp_cmd = app.add_subcommand("supp", "support as a closed subset");
  supp_cmd->add_option("module", module_text)->required();
  add_backend(supp_cmd);
  supp_cmd->callback([&] {
    const Backend b = detail::backend(backend_name, vars);
    const SpecSubset s = supp_of(parse::module(module_text, b));
    result = {{"supp", s.to_string()}, {"minimal", report::primes(s.minimal_members(), b)}};
  });

  // grade
  auto* grade = app.add_subcommand("grade", "grade of an ideal or module on a module");
  std::string ideal_text, of_text, prime_text;
  grade->add_option("module", module_text)->required();
  auto* o_ideal = grade->add_option("--ideal", ideal_text, "ideal (n) over Z");
  auto* o_of = grade->add_option("--of", of_text, "module N for grade(N, M) over Z");
  auto* o_prime = grade->add_option("--prime", prime_text, "prime for the grade-zero test over a monomial ring");
  o_ideal->excludes(o_of)->excludes(o_prime);
  o_of->excludes(o_prime);
  add_backend(grade);
  grade->callback([&] {
    const Backend b = detail::backend(backend_name, vars);
    if (b.kind == BackendKind::Monomial) {
      if (prime_text.empty()) throw ParseError("monomial grade needs --prime", 0, "--prime (x,...)");
      auto m = std::get<MonomialModule>(parse::module(module_text, b));
      parse::Cursor c(prime_text);
      PrimeId p = parse::prime(c, b);
      c.expect_end("end of prime");
      result = {{"prime", to_string(p, b)}, {"module", m.to_string()}, {"grade_zero", grade_zero(p, m)}};
      return;
    }
    ZModule m = parse::zmodule(module_text);
    if (!of_text.empty()) {
      ZModule n = parse::zmodule(of_text);
      result = {{"of", n.to_string()}, {"module", m.to_string()}, {"grade", report::ext_count(grade_module(n, m))}};
    } else {
      IdealZ i = ideal_text.empty() ? IdealZ(0) : parse::zideal(ideal_text);
      if (ideal_text.empty()) i = ann(m);
      result = {{"ideal", i.to_string()}, {"module", m.to_string()}, {"grade", report::ext_count(grade_ideal(i, m))}};
    }
  });

  // filtration
  auto* filt = app.add_subcommand("filtration", "cyclic filtration of a Z-module");
  filt->add_option("module", module_text)->required();
  filt->callback([&] {
    ZModule m = parse::zmodule(module_text);
    auto f = cyclic_filtration(m);
    json ideals = json::array(), stages = json::array(), gens = json::array();
    for (auto& i : f.ideals) ideals.push_back(i.to_string());
    for (auto& s : f.stages) stages.push_back(s.to_string());
    for (auto& g : f.generators) gens.push_back(report::integers(g));
    const bool ok = replay_filtration(f);
    result = {{"module", m.to_string()}, {"ideals", ideals}, {"stages", stages}, {"generators", gens}, {"replay", ok}};
    if (!ok) code = kFailed;
  });

  // koszul
  auto* kos = app.add_subcommand("koszul", "Koszul complex of a list of integers");
  std::string list_text;
  kos->add_option("elements", list_text, "comma-separated integers")->required();
  kos->callback([&] {
    auto x = parse::integer_list(list_text);
    result = report::complex(koszul_complex(x));
    result["support"] = complex_support(koszul_complex(x)).to_string();
  });

  // classify
  auto* cls = app.add_subcommand("classify", "membership, lattice round trips and example checks");
  cls->require_subcommand(1);
  std::string kind_text = "serre", gens_text, criterion_text;
  auto* member = cls->add_subcommand("member", "membership in a generated or criterion subcategory");
  member->add_option("--kind", kind_text)->capture_default_str();
  auto* o_gens = member->add_option("--gens", gens_text, "generating modules, comma-separated");
  auto* o_crit = member->add_option("--criterion", criterion_text, "Spec subset closure{...} or set{...}");
  o_gens->excludes(o_crit);
  member->add_option("--module", module_text)->required();
  add_backend(member);
  member->callback([&] {
    const Backend b = detail::backend(backend_name, vars);
    const ClosureKind k = detail::closure_kind(kind_text);
    SubcatSpec spec = criterion_text.empty() ? SubcatSpec::by_generators(k, b, parse::module_list(gens_text, b))
                                             : SubcatSpec::by_criterion(k, parse::spec_subset(criterion_text, b));
    Module m = parse::module(module_text, b);
    result = {{"kind", to_string(k)}, {"subcategory", spec.to_string()}, {"criterion", spec.criterion().to_string()},
              {"module", to_string(m)}, {"member", spec.contains(m)}};
  });

  int item = 1;
  std::size_t trials = 500, probes = 200;
  std::uint64_t seed = 1;
  auto* ex = cls->add_subcommand("examples", "module-side against prime-side conditions on random modules");
  ex->add_option("--item", item)->required()->check(CLI::Range(1, 10));
  ex->add_option("--trials", trials)->capture_default_str();
  ex->add_option("--seed", seed)->capture_default_str();
  add_backend(ex);
  ex->callback([&] {
    auto r = example_suite(item, detail::backend(backend_name, vars), trials, seed);
    result = {{"item", r.item}, {"backend", r.backend}, {"seed", r.seed}, {"trials", r.trials}, {"agreements", r.agreements},
              {"left_true", r.left_true}, {"passed", r.passed()}};
    if (r.counterexample) result["counterexample"] = *r.counterexample;
    if (!r.passed()) code = kFailed;
  });

  auto* rt = cls->add_subcommand("roundtrip", "associated-prime criterion round trip");
  rt->add_option("--probes", probes)->capture_default_str();
  rt->add_option("--seed", seed)->capture_default_str();
  add_backend(rt);
  rt->callback([&] {
    auto r = roundtrip_suite(detail::backend(backend_name, vars), probes, seed);
    result = {{"backend", r.backend}, {"seed", r.seed}, {"sets_checked", r.sets_checked}, {"membership_checks", r.membership_checks},
              {"failures", r.failures}, {"passed", r.passed()}};
    if (!r.passed()) code = kFailed;
  });

  auto* adj = cls->add_subcommand("adjunction", "adjoint-pair checks over the probe lattice");
  std::size_t max_gens = 3;
  adj->add_option("--max-gens", max_gens)->capture_default_str();
  add_backend(adj);
  adj->callback([&] {
    auto fam = default_probe_family(detail::backend(backend_name, vars), max_gens);
    json pairs = json::array();
    bool all = true;
    for (auto pair : {AdjointPair::TauSigma, AdjointPair::NuMu, AdjointPair::PsiPhi}) {
      auto r = adjunction_check(pair, fam);
      all = all && r.passed();
      pairs.push_back({{"pair", r.pair}, {"checked", r.checked}, {"violations", r.violations}});
    }
    result = {{"backend", fam.backend.to_string()}, {"pairs", pairs}, {"passed", all}};
    if (!all) code = kFailed;
  });

  // oracle
  auto* orc = app.add_subcommand("oracle", "brute-force closures over a finite universe of Z-modules");
  orc->require_subcommand(1);
  detail::UniverseFlags uf;
  auto* en = orc->add_subcommand("enumerate", "list the universe");
  uf.add(en);
  en->callback([&] {
    auto u = uf.universe();
    auto ms = oracle::enumerate_universe(u);
    result = {{"universe", u.to_string()}, {"size", ms.size()}, {"members", report::module_list(ms)}};
  });

  std::string kinds_text = "sub,quot,ext,sum";
  auto* cl = orc->add_subcommand("close", "closure of generators under operations");
  cl->add_option("--gens", gens_text)->required();
  cl->add_option("--kinds", kinds_text)->capture_default_str();
  uf.add(cl);
  cl->callback([&] {
    auto u = uf.universe();
    auto r = oracle::close(detail::zmodules(gens_text), detail::ops_from(kinds_text), u);
    result = {{"universe", u.to_string()}, {"members", report::module_list(r.members)}, {"clipped", r.clipped},
              {"clip_events", r.clip_events}, {"escaped", report::module_list(r.escaped)}, {"iterations", r.iterations}};
  });

  std::string subset_text, property_text = "sub";
  auto* chk = orc->add_subcommand("check", "is a subset closed under one operation");
  chk->add_option("--subset", subset_text)->required();
  chk->add_option("--property", property_text)->capture_default_str();
  uf.add(chk);
  chk->callback([&] {
    auto u = uf.universe();
    auto op = detail::op_from(property_text);
    auto r = oracle::check_closed(detail::zmodules(subset_text), op, u);
    result = {{"universe", u.to_string()}, {"property", oracle::op_name(op)}, {"closed", r.closed}};
    if (r.counterexample) {
      result["counterexample"] = r.counterexample->to_string();
      result["witness"] = r.witness;
      code = kFailed;
    }
  });

  std::string ambient_text, sub_text;
  auto* der = orc->add_subcommand("derive", "derive a submodule by kernels, cokernels and summands");
  der->add_option("--ambient", ambient_text)->required();
  der->add_option("--sub", sub_text, "generators over g0, g1, ...")->required();
  der->callback([&] {
    ZModule x = parse::zmodule(ambient_text);
    auto t = oracle::derive_submodule(x, parse::elements(sub_text, x.ngens()));
    auto rep = oracle::replay(t);
    result = report::trace(t);
    result["replay"] = rep.ok;
    if (!rep.ok) {
      result["failure"] = rep.failure;
      code = kFailed;
    }
  });

  // suite
  auto* suite = app.add_subcommand("suite", "run acceptance suites");
  std::string suite_name = "all";
  std::vector<std::string> only;
  std::optional<std::size_t> suite_trials;
  suite->add_option("--name", suite_name, "suite name or all")->capture_default_str();
  suite->add_option("--only", only, "restrict to these suites");
  suite->add_option("--trials", suite_trials, "override randomized trial counts");
  suite->add_option("--seed", seed)->capture_default_str();
  auto* o_sb = suite->add_option("--backend", backend_name, "z or monomial");
  suite->callback([&] {
    suites::Options opts;
    opts.seed = seed;
    opts.trials = suite_trials;
    if (o_sb->count()) {
      if (backend_name == "z" || backend_name == "Z") opts.backend = BackendKind::Z;
      else if (backend_name == "monomial" || backend_name.rfind("k[", 0) == 0) opts.backend = BackendKind::Monomial;
      else throw ParseError("unknown backend '" + backend_name + "'", 0, "z or monomial");
    }
    std::vector<const suites::Entry*> todo;
    if (!only.empty()) {
      for (auto& n : only) {
        auto* e = suites::find(n);
        if (!e) throw ParseError("unknown suite '" + n + "'", 0, "a suite name");
        todo.push_back(e);
      }
    } else if (suite_name == "all") {
      for (auto& e : suites::registry()) todo.push_back(&e);
    } else {
      auto* e = suites::find(suite_name);
      if (!e) throw ParseError("unknown suite '" + suite_name + "'", 0, "a suite name");
      todo.push_back(e);
    }
    json rs = json::array();
    bool all = true;
    for (auto* e : todo) {
      auto r = suites::run(*e, opts);
      all = all && r.passed;
      if (r.vacuous) warnings.push_back(r.name + ": no trials run, pass is vacuous");
      rs.push_back(r.to_json());
    }
    result = {{"seed", seed}, {"passed", all}, {"suites", rs}};
    if (!all) code = kFailed;
  });

  std::vector<std::string> argv_store{"subcat"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  } catch (const subcat::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  for (auto& w : warnings) err << "warning: " << w << "\n";
  if (format == "json") out << result.dump(2) << "\n";
  else detail::render_text(result, out);
  return code;
}

}  // namespace subcat::cli
