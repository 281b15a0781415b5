#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "subcat/classify.hpp"
#include "subcat/koszul.hpp"
#include "subcat/oracle/derive.hpp"
#include "subcat/oracle/oracle.hpp"

// JSON mirrors of the library types. Integers that fit in 64 bits are
// numbers, larger ones are decimal strings.

namespace subcat::report {

using json = nlohmann::ordered_json;

inline json integer(const Integer& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

inline json integers(const std::vector<Integer>& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(integer(x));
  return a;
}

inline json matrix(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(integer(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Inverse of matrix(); the column count must be given for matrices without rows.
inline IntMatrix matrix_from(const json& j, std::size_t cols_if_empty = 0) {
  if (!j.is_array()) throw Error("matrix must be an array of rows");
  std::vector<std::vector<Integer>> rows;
  for (auto& r : j) {
    if (!r.is_array()) throw Error("matrix row must be an array");
    std::vector<Integer> row;
    for (auto& x : r) {
      if (x.is_number_integer()) row.emplace_back(x.get<long>());
      else if (x.is_string()) row.emplace_back(x.get<std::string>());
      else throw Error("matrix entry must be an integer");
    }
    if (!rows.empty() && row.size() != rows.front().size()) throw Error("ragged matrix");
    rows.push_back(std::move(row));
  }
  return IntMatrix::from_rows(rows, rows.empty() ? cols_if_empty : rows.front().size());
}

inline json zmodule(const ZModule& m) {
  return {{"module", m.to_string()}, {"free_rank", m.free_rank()}, {"invariant_factors", integers(m.invariant_factors())}};
}

inline ZModule zmodule_from(const json& j) {
  std::vector<Integer> d;
  for (auto& x : j.at("invariant_factors")) d.emplace_back(x.is_string() ? Integer(x.get<std::string>()) : Integer(x.get<long>()));
  return {j.at("free_rank").get<std::size_t>(), d};
}

inline json monomial_module(const MonomialModule& m) {
  json s = json::array();
  for (auto& i : m.summands()) {
    json gens = json::array();
    for (auto& g : i.generators()) gens.push_back(g);
    s.push_back(std::move(gens));
  }
  return {{"module", m.to_string()}, {"ring", m.context().to_string()}, {"summands", std::move(s)}};
}

inline json module(const Module& m) {
  if (auto z = std::get_if<ZModule>(&m)) return zmodule(*z);
  return monomial_module(std::get<MonomialModule>(m));
}

inline json primes(const std::vector<PrimeId>& ps, const Backend& b) {
  json a = json::array();
  for (auto& p : ps) a.push_back(to_string(p, b));
  return a;
}

inline json subset(const SpecSubset& s) {
  return {{"subset", s.to_string()}, {"closed", s.closed()}, {"generators", primes(s.generators(), s.backend())}};
}

inline json ext_count(const ExtCount& c) {
  if (c.infinite) return "inf";
  return c.value;
}

inline json map(const ZModuleMap& f) {
  return {{"source", f.source().to_string()}, {"target", f.target().to_string()}, {"matrix", matrix(f.matrix())}};
}

inline json complex(const FreeComplex& c) {
  json d = json::array();
  for (auto& m : c.differentials()) d.push_back(matrix(m));
  json h = json::array();
  for (long i : degrees(c)) h.push_back({{"degree", i}, {"homology", homology(c, i).to_string()}});
  return {{"bottom_degree", c.bottom_degree()}, {"ranks", c.ranks()}, {"differentials", std::move(d)}, {"homology", std::move(h)}};
}

inline json trace(const oracle::DerivationTrace& t) {
  json steps = json::array();
  for (auto& s : t.steps) {
    json j = {{"op", oracle::to_string(s.op)}, {"inputs", s.inputs}, {"result", s.result.to_string()}};
    if (s.map) j["map"] = map(*s.map);
    steps.push_back(std::move(j));
  }
  return {{"ambient", t.ambient.to_string()}, {"target", t.target.to_string()}, {"steps", std::move(steps)}};
}

inline json module_list(const std::vector<ZModule>& ms) {
  json a = json::array();
  for (auto& m : ms) a.push_back(m.to_string());
  return a;
}

}  // namespace subcat::report
