#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "subcat/classify.hpp"
#include "subcat/error.hpp"
#include "subcat/linalg/int_matrix.hpp"
#include "subcat/monomial.hpp"
#include "subcat/spec.hpp"
#include "subcat/zmod.hpp"

// Text literals used on the command line:
//   matrix   [[2,4],[6,8]]
//   ℤ module Z^2 + Z/4 + Z/6        (also "Z", "0")
//   ring     z | k[x,y,z]
//   ideal    (12) | (x^2, x*y)
//   module   R/(x^2, x*y) + R/(z)
//   prime    (0) | (7) | (x,z)
//   subset   closure{(2),(3)} | set{(0),(2)}
//   elements 2*g0 - g1, g2          (columns of a matrix over the generators)

namespace subcat::parse {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : s_(text) {}

  std::size_t pos() const { return pos_; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ == s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool accept(std::string_view word) {
    skip_ws();
    if (s_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }
  void expect(char c, const std::string& what) {
    if (!accept(c)) fail("unexpected " + describe(), what);
  }
  void expect_end(const std::string& what) {
    if (!at_end()) fail("trailing input " + describe(), what);
  }

  Integer integer(bool allow_sign = true) {
    skip_ws();
    std::size_t start = pos_;
    if (allow_sign && pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("unexpected " + describe(), "an integer");
    }
    std::string t(s_.substr(start, pos_ - start));
    if (t.front() == '+') t.erase(0, 1);
    return Integer(t);
  }
  unsigned long count() {
    Integer n = integer(false);
    if (!n.fits_ulong_p()) fail("number too large", "a small count");
    return n.get_ui();
  }
  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (pos_ == start || std::isdigit(static_cast<unsigned char>(s_[start]))) {
      pos_ = start;
      fail("unexpected " + describe(), "a variable name");
    }
    return std::string(s_.substr(start, pos_ - start));
  }

  [[noreturn]] void fail(const std::string& msg, const std::string& expected) const { throw ParseError(msg, pos_, expected); }

 private:
  std::string describe() {
    skip_ws();
    return pos_ < s_.size() ? "'" + std::string(1, s_[pos_]) + "'" : "end of input";
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline IntMatrix matrix(std::string_view text) {
  Cursor c(text);
  std::vector<std::vector<Integer>> rows;
  c.expect('[', "'[' opening the matrix");
  if (!c.accept(']')) {
    do {
      c.expect('[', "'[' opening a row");
      std::vector<Integer> row;
      if (!c.accept(']')) {
        do row.push_back(c.integer());
        while (c.accept(','));
        c.expect(']', "',' or ']' in a row");
      }
      if (!rows.empty() && row.size() != rows.front().size()) c.fail("ragged row", "rows of equal length");
      rows.push_back(std::move(row));
    } while (c.accept(','));
    c.expect(']', "',' or ']' closing the matrix");
  }
  c.expect_end("end of matrix");
  return IntMatrix::from_rows(rows, rows.empty() ? 0 : rows.front().size());
}

inline Backend backend(std::string_view text) {
  Cursor c(text);
  if (c.accept("k[")) {
    std::vector<std::string> vars;
    if (!c.accept(']')) {
      do vars.push_back(c.identifier());
      while (c.accept(','));
      c.expect(']', "',' or ']' in the variable list");
    }
    c.expect_end("end of ring");
    return Backend::monomial(std::move(vars));
  }
  if (c.accept('z') || c.accept('Z')) {
    c.expect_end("end of ring");
    return Backend::integers();
  }
  c.fail("unknown ring", "'z' or 'k[x,...]'");
}

/// Variable list "x,y,z" as a monomial backend.
inline Backend variables(std::string_view text) { return backend("k[" + std::string(text) + "]"); }

inline ZModule zmodule(Cursor& c) {
  std::vector<Integer> orders;
  if (c.accept('0')) return ZModule::zero();
  do {
    if (!c.accept('Z')) c.fail("unexpected term", "'Z', 'Z^r' or 'Z/d'");
    if (c.accept('^')) {
      orders.insert(orders.end(), c.count(), Integer(0));
    } else if (c.accept('/')) {
      std::size_t at = c.pos();
      Integer d = c.integer(false);
      if (d == 0) throw ParseError("Z/0 is not allowed", at, "a positive order");
      orders.push_back(d);
    } else {
      orders.push_back(0);
    }
  } while (c.accept('+'));
  return ZModule::from_cyclic_orders(orders);
}

inline ZModule zmodule(std::string_view text) {
  Cursor c(text);
  ZModule m = zmodule(c);
  c.expect_end("'+' or end of module");
  return m;
}

inline std::size_t variable_index(Cursor& c, const Backend& b) {
  std::size_t at = c.pos();
  std::string v = c.identifier();
  for (std::size_t i = 0; i < b.nvars(); ++i)
    if (b.vars[i] == v) return i;
  throw ParseError("unknown variable '" + v + "'", at, "one of " + b.to_string());
}

inline Exponent monomial(Cursor& c, const Backend& b) {
  Exponent e(b.nvars(), 0);
  if (c.accept('1')) return e;
  do {
    std::size_t i = variable_index(c, b);
    e[i] += c.accept('^') ? static_cast<unsigned>(c.count()) : 1u;
  } while (c.accept('*'));
  return e;
}

inline MonomialIdeal monomial_ideal(Cursor& c, const Backend& b) {
  c.expect('(', "'(' opening an ideal");
  if (c.accept('0')) {
    c.expect(')', "')' after (0)");
    return MonomialIdeal::zero(b);
  }
  std::vector<Exponent> gens;
  do gens.push_back(monomial(c, b));
  while (c.accept(','));
  c.expect(')', "',' or ')' in an ideal");
  return {b, gens};
}

inline MonomialIdeal monomial_ideal(std::string_view text, const Backend& b) {
  Cursor c(text);
  auto i = monomial_ideal(c, b);
  c.expect_end("end of ideal");
  return i;
}

inline IdealZ zideal(std::string_view text) {
  Cursor c(text);
  c.expect('(', "'(' opening an ideal");
  Integer n = c.integer();
  c.expect(')', "')' closing the ideal");
  c.expect_end("end of ideal");
  return IdealZ(abs(n));
}

inline MonomialModule monomial_module(Cursor& c, const Backend& b) {
  if (c.accept('0')) return MonomialModule(b);
  std::vector<MonomialIdeal> s;
  do {
    if (!c.accept("R/")) c.fail("unexpected term", "'R/(...)'");
    s.push_back(monomial_ideal(c, b));
  } while (c.accept('+'));
  return {b, s};
}

inline Module module(Cursor& c, const Backend& b) {
  if (b.kind == BackendKind::Z) return zmodule(c);
  return monomial_module(c, b);
}

inline Module module(std::string_view text, const Backend& b) {
  Cursor c(text);
  Module m = module(c, b);
  c.expect_end("'+' or end of module");
  return m;
}

/// Comma-separated modules, "Z/2, Z" or "R/(x), R/(y^2)".
inline std::vector<Module> module_list(std::string_view text, const Backend& b) {
  Cursor c(text);
  std::vector<Module> out;
  if (c.at_end()) return out;
  do out.push_back(module(c, b));
  while (c.accept(','));
  c.expect_end("',' or end of module list");
  return out;
}

inline PrimeId prime(Cursor& c, const Backend& b) {
  c.expect('(', "'(' opening a prime");
  if (b.kind == BackendKind::Z) {
    std::size_t at = c.pos();
    Integer p = c.integer(false);
    c.expect(')', "')' closing the prime");
    if (p == 0) return PrimeId::generic();
    if (!is_prime(p)) throw ParseError(p.get_str() + " is not prime", at, "0 or a prime");
    return PrimeId::maximal(p);
  }
  std::uint32_t mask = 0;
  if (!c.accept('0')) {
    do mask |= 1u << variable_index(c, b);
    while (c.accept(','));
  }
  c.expect(')', "',' or ')' in a prime");
  return PrimeId::monomial(mask);
}

inline SpecSubset spec_subset(std::string_view text, const Backend& b) {
  Cursor c(text);
  bool closed;
  if (c.accept("closure{")) closed = true;
  else if (c.accept("set{")) closed = false;
  else c.fail("unexpected subset", "'closure{' or 'set{'");
  std::vector<PrimeId> gens;
  if (!c.accept('}')) {
    do gens.push_back(prime(c, b));
    while (c.accept(','));
    c.expect('}', "',' or '}' in a subset");
  }
  c.expect_end("end of subset");
  return {b, gens, closed};
}

/// Integer list "2,4,6".
inline std::vector<Integer> integer_list(std::string_view text) {
  Cursor c(text);
  std::vector<Integer> out;
  if (c.at_end()) return out;
  do out.push_back(c.integer());
  while (c.accept(','));
  c.expect_end("',' or end of list");
  return out;
}

/// Elements of a module with n generators written over g0..g{n-1}, one
/// column per comma-separated entry: "2*g0 - g1, g1".
inline IntMatrix elements(std::string_view text, std::size_t ngens) {
  Cursor c(text);
  std::vector<std::vector<Integer>> cols;
  if (!c.at_end()) {
    do {
      std::vector<Integer> v(ngens, 0);
      bool first = true;
      for (;;) {
        Integer sign = 1;
        if (c.accept('-')) sign = -1;
        else if (!first && !c.accept('+')) break;
        else if (first) c.accept('+');
        first = false;
        Integer coef = 1;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
          coef = c.integer(false);
          if (c.peek() != '*') {  // a bare constant is only allowed as 0
            if (coef != 0) c.fail("constant term", "'*g<i>'");
            continue;
          }
          c.expect('*', "'*'");
        }
        if (!c.accept('g')) c.fail("unexpected token", "a generator g<i>");
        std::size_t at = c.pos();
        auto i = c.count();
        if (i >= ngens) throw ParseError("generator g" + std::to_string(i) + " out of range", at, "index below " + std::to_string(ngens));
        v[i] += sign * coef;
      }
      cols.push_back(std::move(v));
    } while (c.accept(','));
  }
  c.expect_end("',' or end of element list");
  IntMatrix m(ngens, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < ngens; ++i) m(i, j) = cols[j][i];
  return m;
}

}  // namespace subcat::parse
