#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subcat/error.hpp"
#include "subcat/zmod.hpp"

namespace subcat::oracle {

enum class StepOp { Start, Kernel, Cokernel, Summand, FiniteSum };

inline std::string to_string(StepOp op) {
  switch (op) {
    case StepOp::Start: return "start";
    case StepOp::Kernel: return "kernel";
    case StepOp::Cokernel: return "cokernel";
    case StepOp::Summand: return "summand";
    default: return "finite_sum";
  }
}

// kernel:    inputs {Y, T}, map Y → T, result ker(map)
// cokernel:  inputs {Y},    map Y → Y, result coker(map)
// summand:   inputs {Q},    map an idempotent e of Q, result ker(e)
// finite_sum inputs {A, B}, no map, result A ⊕ B
struct DerivationStep {
  StepOp op = StepOp::Start;
  std::vector<std::size_t> inputs;
  std::optional<ZModuleMap> map;
  ZModule result;
};

struct DerivationTrace {
  ZModule ambient;
  ZModule target;
  std::vector<DerivationStep> steps;
};

namespace detail {

// Some x with f(x) = y, or nullopt.
inline std::optional<std::vector<Integer>> preimage(const ZModuleMap& f, const std::vector<Integer>& y) {
  auto sol = solve_integer(IntMatrix::hconcat(f.matrix(), f.target().relations()), IntMatrix::column(y));
  if (!sol) return std::nullopt;
  std::vector<Integer> x(f.source().ngens());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = (*sol)(i, 0);
  return f.source().reduce(x);
}

inline std::vector<Integer> must_preimage(const ZModuleMap& f, const std::vector<Integer>& y) {
  auto x = preimage(f, y);
  if (!x) throw Error("derivation: element has no preimage");
  return *x;
}

inline bool in_span(const ZModule& x, const IntMatrix& gens, const std::vector<Integer>& v) {
  return solve_integer(IntMatrix::hconcat(gens, x.relations()), IntMatrix::column(v)).has_value();
}

inline IntMatrix with_column(const IntMatrix& m, const std::vector<Integer>& v) {
  return IntMatrix::hconcat(m, IntMatrix::column(v));
}

inline std::vector<Integer> unit(std::size_t n, std::size_t j) {
  std::vector<Integer> e(n, 0);
  e[j] = 1;
  return e;
}

}  // namespace detail

/// Derive the submodule of X spanned by the columns of `sub` from X with
/// kernels, cokernels and summand extraction. Ascends M ⊊ M + Rx ⊊ … ⊊ X,
/// x always the smallest canonical generator of X outside the current span,
/// then walks back down: with Y = M' + Rx and I = (M' : x), R/I is a summand
/// of Y/IY and M' = ker(Y → R/I).
inline DerivationTrace derive_submodule(const ZModule& x, const IntMatrix& sub) {
  if (sub.rows() != x.ngens()) throw Error("derive: generator columns must have " + std::to_string(x.ngens()) + " rows");
  DerivationTrace t{x, submodule(x, sub).module, {}};
  t.steps.push_back({StepOp::Start, {}, std::nullopt, x});

  std::vector<IntMatrix> chain{sub};
  for (;;) {
    const IntMatrix& cur = chain.back();
    std::optional<std::size_t> next;
    for (std::size_t j = 0; j < x.ngens() && !next; ++j)
      if (!detail::in_span(x, cur, detail::unit(x.ngens(), j))) next = j;
    if (!next) break;
    chain.push_back(detail::with_column(cur, detail::unit(x.ngens(), *next)));
  }

  std::size_t y_idx = 0;
  for (std::size_t lvl = chain.size() - 1; lvl-- > 0;) {
    const auto y = submodule(x, chain[lvl + 1]);
    if (!(y.module == t.steps[y_idx].result)) throw Error("derive: chain level does not match the derived object");
    const ZModule& ym = y.module;
    IntMatrix w(ym.ngens(), chain[lvl].cols());
    for (std::size_t c = 0; c < chain[lvl].cols(); ++c) {
      auto v = detail::must_preimage(y.map, chain[lvl].col(c));
      for (std::size_t i = 0; i < v.size(); ++i) w(i, c) = v[i];
    }
    const auto cq = quotient(ym, w);  // C = Y/M' ≅ R/I
    if (cq.module.ngens() != 1) throw Error("derive: Y/M' is not cyclic");
    const Integer a = cq.module.generator_order(0);

    // Y/aY = coker(a: Y → Y)
    auto f = ZModuleMap::scalar(ym, a);
    const auto qq = cokernel_with_map(f);
    t.steps.push_back({StepOp::Cokernel, {y_idx}, f, qq.module});
    const std::size_t q_idx = t.steps.size() - 1;

    // π̄: Y/aY → C
    IntMatrix pb(1, qq.module.ngens());
    for (std::size_t j = 0; j < qq.module.ngens(); ++j)
      pb(0, j) = cq.map.apply(detail::must_preimage(qq.map, detail::unit(qq.module.ngens(), j)))[0];
    const ZModuleMap pibar(qq.module, cq.module, pb);

    if (is_injective(pibar)) {
      t.steps.push_back({StepOp::Kernel, {y_idx, q_idx}, qq.map, kernel(qq.map)});
    } else {
      // section s(c) = class of a lift of c, e = 1 − s∘π̄
      auto yc = detail::must_preimage(cq.map, {Integer(1)});
      auto sc = qq.map.apply(yc);
      const ZModuleMap s(cq.module, qq.module, IntMatrix::column(sc));
      const std::size_t nq = qq.module.ngens();
      const ZModuleMap sp = compose(s, pibar);
      IntMatrix em = IntMatrix::identity(nq);
      for (std::size_t i = 0; i < nq; ++i)
        for (std::size_t j = 0; j < nq; ++j) em(i, j) -= sp.matrix()(i, j);
      const ZModuleMap e(qq.module, qq.module, em);
      const auto kk = kernel_with_map(e);
      t.steps.push_back({StepOp::Summand, {q_idx}, e, kk.module});
      const std::size_t k_idx = t.steps.size() - 1;
      IntMatrix gm(kk.module.ngens(), ym.ngens());
      for (std::size_t j = 0; j < ym.ngens(); ++j) {
        auto v = detail::must_preimage(kk.map, s.apply(cq.map.apply(detail::unit(ym.ngens(), j))));
        for (std::size_t i = 0; i < v.size(); ++i) gm(i, j) = v[i];
      }
      const ZModuleMap g(ym, kk.module, gm);
      t.steps.push_back({StepOp::Kernel, {y_idx, k_idx}, g, kernel(g)});
    }
    y_idx = t.steps.size() - 1;
    if (!(t.steps[y_idx].result == submodule(x, chain[lvl]).module))
      throw Error("derive: kernel step does not reproduce the smaller submodule");
  }
  return t;
}

struct ReplayResult {
  bool ok = true;
  std::string failure;
};

/// Re-run every step from the stored maps.
inline ReplayResult replay(const DerivationTrace& t) {
  auto fail = [](std::size_t i, const std::string& why) {
    return ReplayResult{false, "step " + std::to_string(i) + ": " + why};
  };
  if (t.steps.empty()) return {false, "empty trace"};
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& st = t.steps[i];
    for (auto in : st.inputs)
      if (in >= i) return fail(i, "input refers forward");
    auto input = [&](std::size_t k) -> const ZModule& { return t.steps[st.inputs[k]].result; };
    switch (st.op) {
      case StepOp::Start:
        if (!st.inputs.empty() || !(st.result == t.ambient)) return fail(i, "start must be the ambient module");
        break;
      case StepOp::Kernel:
        if (st.inputs.size() != 2 || !st.map) return fail(i, "kernel needs two inputs and a map");
        if (!(st.map->source() == input(0)) || !(st.map->target() == input(1))) return fail(i, "map does not connect the inputs");
        if (!(kernel(*st.map) == st.result)) return fail(i, "kernel differs");
        break;
      case StepOp::Cokernel:
        if (st.inputs.size() != 1 || !st.map) return fail(i, "cokernel needs one input and a map");
        if (!(st.map->source() == input(0)) || !(st.map->target() == input(0))) return fail(i, "map is not an endomorphism of the input");
        if (!(cokernel(*st.map) == st.result)) return fail(i, "cokernel differs");
        break;
      case StepOp::Summand:
        if (st.inputs.size() != 1 || !st.map) return fail(i, "summand needs one input and a map");
        if (!(st.map->source() == input(0)) || !(st.map->target() == input(0))) return fail(i, "map is not an endomorphism of the input");
        if (!(compose(*st.map, *st.map) == *st.map)) return fail(i, "map is not idempotent");
        if (!(kernel(*st.map) == st.result)) return fail(i, "kernel differs");
        break;
      case StepOp::FiniteSum:
        if (st.inputs.size() != 2) return fail(i, "finite sum needs two inputs");
        if (!(direct_sum(input(0), input(1)) == st.result)) return fail(i, "sum differs");
        break;
    }
  }
  if (!(t.steps.back().result == t.target)) return {false, "final object differs from the target"};
  return {};
}

}  // namespace subcat::oracle
