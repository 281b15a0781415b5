#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subcat/error.hpp"

namespace subcat {

using Integer = mpz_class;

inline Integer abs_value(const Integer& a) { return abs(a); }

inline Integer gcd_of(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm_of(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Extended gcd: returns (g, s, t) with s*a + t*b == g >= 0.
struct Bezout {
  Integer g, s, t;
};

inline Bezout xgcd(const Integer& a, const Integer& b) {
  Bezout r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return r;
}

/// Floor division; b must be nonzero.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Least nonnegative residue of a modulo m (m > 0).
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline bool divides(const Integer& d, const Integer& n) {
  if (d == 0) return n == 0;
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline bool fits_int64(const Integer& a) { return mpz_fits_slong_p(a.get_mpz_t()) != 0; }

inline std::int64_t to_int64(const Integer& a) {
  if (!fits_int64(a)) throw Error("integer " + a.get_str() + " does not fit in 64 bits");
  return a.get_si();
}

inline std::string to_string(const Integer& a) { return a.get_str(); }

namespace detail {

inline Integer powmod(const Integer& base, const Integer& exp, const Integer& mod) {
  Integer r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

// Miller-Rabin with the first 13 primes as witnesses; deterministic below
// 3.3e24.
inline bool miller_rabin(const Integer& n) {
  static const int bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  Integer d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d /= 2;
    ++s;
  }
  for (int b : bases) {
    Integer a = b;
    if (a % n == 0) continue;
    Integer x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = (x * x) % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

/// Primality test. Deterministic for every n below 3.3e24; beyond that GMP's
/// BPSW-based test with 40 extra rounds is used.
inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  static const Integer deterministic_bound("3317044064679887385961981");
  if (n < deterministic_bound) return detail::miller_rabin(n);
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

namespace detail {

inline Integer pollard_brent(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    std::size_t r = 1;
    const std::size_t m = 64;
    auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
    while (g == 1) {
      x = y;
      for (std::size_t i = 0; i < r; ++i) y = f(y);
      std::size_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (std::size_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = (q * abs_value(x - y)) % n;
        }
        g = gcd_of(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd_of(abs_value(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_into(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(Integer(n / d), out);
}

}  // namespace detail

/// Prime factorization of |n| for n != 0, ascending primes.
inline std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n) {
  if (n == 0) throw Error("cannot factor zero");
  Integer m = abs_value(n);
  std::map<Integer, unsigned> found;
  for (unsigned long p = 2; p < 1000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      ++found[Integer(p)];
      m /= p;
    }
  }
  if (m > 1) detail::factor_into(m, found);
  return {found.begin(), found.end()};
}

inline std::vector<Integer> prime_divisors(const Integer& n) {
  std::vector<Integer> out;
  for (auto& [p, e] : factorize(n)) out.push_back(p);
  return out;
}

/// Number of prime factors counted with multiplicity.
inline unsigned long big_omega(const Integer& n) {
  unsigned long total = 0;
  for (auto& [p, e] : factorize(n)) total += e;
  return total;
}

inline Integer pow_of(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

/// Multiplicative inverse of a modulo m (m >= 2, gcd(a, m) == 1).
inline Integer mod_inverse(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw Error(a.get_str() + " is not invertible modulo " + m.get_str());
  return r;
}

}  // namespace subcat
