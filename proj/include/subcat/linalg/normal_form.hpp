#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "subcat/linalg/int_matrix.hpp"

namespace subcat {

/// U·A·V == D with U, V unimodular and D diagonal, d₁ | d₂ | …, dᵢ >= 0.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < D.rows() && i < D.cols(); ++i) d.push_back(D(i, i));
    return d;
  }

  std::size_t rank() const {
    std::size_t r = 0;
    for (std::size_t i = 0; i < D.rows() && i < D.cols(); ++i)
      if (D(i, i) != 0) ++r;
    return r;
  }
};

enum class PivotStrategy {
  /// Move the smallest nonzero entry to the pivot and reduce by division
  /// with remainder. Keeps entry growth low.
  MinimalEntry,
  /// Clear the pivot row and column with extended-gcd 2×2 unimodular
  /// combinations.
  GcdCombination,
};

namespace detail {

struct SmithState {
  IntMatrix D, U, V;

  void row_add(std::size_t dst, std::size_t src, const Integer& f) {
    D.add_row_multiple(dst, src, f);
    U.add_row_multiple(dst, src, f);
  }
  void col_add(std::size_t dst, std::size_t src, const Integer& f) {
    D.add_col_multiple(dst, src, f);
    V.add_col_multiple(dst, src, f);
  }
  void row_swap(std::size_t a, std::size_t b) {
    D.swap_rows(a, b);
    U.swap_rows(a, b);
  }
  void col_swap(std::size_t a, std::size_t b) {
    D.swap_cols(a, b);
    V.swap_cols(a, b);
  }

  // Returns (i, j) of a nonzero entry not divisible by D(t, t), if any.
  std::optional<std::pair<std::size_t, std::size_t>> divisibility_violation(std::size_t t) const {
    for (std::size_t i = t + 1; i < D.rows(); ++i)
      for (std::size_t j = t + 1; j < D.cols(); ++j)
        if (!divides(D(t, t), D(i, j))) return std::pair{i, j};
    return std::nullopt;
  }

  void normalize_sign(std::size_t t) {
    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_row(t);
    }
  }
};

inline void smith_minimal_entry(SmithState& s) {
  IntMatrix& D = s.D;
  const std::size_t m = D.rows(), n = D.cols();
  for (std::size_t t = 0; t < m && t < n; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (D(i, j) != 0 && (!best || abs(D(i, j)) < abs(D(best->first, best->second))))
          best = std::pair{i, j};
    if (!best) break;
    s.row_swap(t, best->first);
    s.col_swap(t, best->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        s.row_add(i, t, -floor_div(D(i, t), D(t, t)));
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        s.col_add(j, t, -floor_div(D(t, j), D(t, t)));
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder is strictly smaller than the pivot: swap it in.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (D(i, t) != 0 && abs(D(i, t)) < abs(D(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(t, j) != 0 && abs(D(t, j)) < abs(D(bi, bj))) bi = t, bj = j;
        s.row_swap(t, bi);
        s.col_swap(t, bj);
        continue;
      }
      auto bad = s.divisibility_violation(t);
      if (!bad) break;
      s.row_add(t, bad->first, 1);
    }
    s.normalize_sign(t);
  }
}

inline void smith_gcd_combination(SmithState& s) {
  IntMatrix& D = s.D;
  const std::size_t m = D.rows(), n = D.cols();
  for (std::size_t t = 0; t < m && t < n; ++t) {
    // First column (left to right) with a nonzero entry in the trailing block.
    std::optional<std::pair<std::size_t, std::size_t>> first;
    for (std::size_t j = t; j < n && !first; ++j)
      for (std::size_t i = t; i < m; ++i)
        if (D(i, j) != 0) {
          first = std::pair{i, j};
          break;
        }
    if (!first) break;
    s.row_swap(t, first->first);
    s.col_swap(t, first->second);

    for (;;) {
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        if (divides(D(t, t), D(i, t))) {
          s.row_add(i, t, -(D(i, t) / D(t, t)));
          continue;
        }
        Bezout b = xgcd(D(t, t), D(i, t));
        Integer a = D(t, t) / b.g, c = D(i, t) / b.g;
        D.combine_rows(t, i, b.s, b.t, -c, a);
        s.U.combine_rows(t, i, b.s, b.t, -c, a);
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        if (divides(D(t, t), D(t, j))) {
          s.col_add(j, t, -(D(t, j) / D(t, t)));
          continue;
        }
        Bezout b = xgcd(D(t, t), D(t, j));
        Integer a = D(t, t) / b.g, c = D(t, j) / b.g;
        D.combine_cols(t, j, b.s, b.t, -c, a);
        s.V.combine_cols(t, j, b.s, b.t, -c, a);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < m && clean; ++i)
        if (D(i, t) != 0) clean = false;
      if (!clean) continue;
      auto bad = s.divisibility_violation(t);
      if (!bad) break;
      s.row_add(t, bad->first, 1);
    }
    s.normalize_sign(t);
  }
}

}  // namespace detail

/// Smith normal form with transforms. D is unique; U and V depend on the
/// strategy.
inline SmithDecomposition smith_normal_form(const IntMatrix& a,
                                            PivotStrategy strategy = PivotStrategy::MinimalEntry) {
  detail::SmithState s{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols())};
  if (strategy == PivotStrategy::MinimalEntry)
    detail::smith_minimal_entry(s);
  else
    detail::smith_gcd_combination(s);
  return {std::move(s.U), std::move(s.D), std::move(s.V)};
}

/// Row-style Hermite normal form: H = U·A is in row echelon form with
/// positive pivots and entries above each pivot reduced into [0, pivot).
struct HermiteDecomposition {
  IntMatrix U;
  IntMatrix H;
};

inline HermiteDecomposition hermite_normal_form(const IntMatrix& a) {
  IntMatrix H = a, U = IntMatrix::identity(a.rows());
  const std::size_t m = H.rows(), n = H.cols();
  std::size_t pr = 0;
  for (std::size_t j = 0; j < n && pr < m; ++j) {
    for (std::size_t i = pr + 1; i < m; ++i) {
      if (H(i, j) == 0) continue;
      if (H(pr, j) == 0) {
        H.swap_rows(pr, i);
        U.swap_rows(pr, i);
        continue;
      }
      Bezout b = xgcd(H(pr, j), H(i, j));
      Integer x = H(pr, j) / b.g, y = H(i, j) / b.g;
      H.combine_rows(pr, i, b.s, b.t, -y, x);
      U.combine_rows(pr, i, b.s, b.t, -y, x);
    }
    if (H(pr, j) == 0) continue;
    if (H(pr, j) < 0) {
      H.negate_row(pr);
      U.negate_row(pr);
    }
    for (std::size_t i = 0; i < pr; ++i) {
      Integer q = floor_div(H(i, j), H(pr, j));
      H.add_row_multiple(i, pr, -q);
      U.add_row_multiple(i, pr, -q);
    }
    ++pr;
  }
  return {std::move(U), std::move(H)};
}

inline std::size_t matrix_rank(const IntMatrix& a) { return smith_normal_form(a).rank(); }

/// Basis of the integer null space {x : A·x = 0}, one basis vector per
/// column, in Hermite-canonical form. The basis is primitive: it extends to
/// a basis of ℤⁿ.
inline IntMatrix kernel_basis(const IntMatrix& a) {
  SmithDecomposition s = smith_normal_form(a);
  const std::size_t r = s.rank();
  IntMatrix k = s.V.col_range(r, a.cols() - r);
  IntMatrix h = hermite_normal_form(k.transpose()).H;
  return h.transpose();
}

/// Structure of ℤⁿ / (column span of A), where A is n×m (one column per
/// relation). Unit invariant factors are dropped.
struct CokernelStructure {
  std::size_t free_rank = 0;
  std::vector<Integer> invariant_factors;

  friend bool operator==(const CokernelStructure&, const CokernelStructure&) = default;
};

inline CokernelStructure cokernel_structure(const IntMatrix& a) {
  SmithDecomposition s = smith_normal_form(a);
  CokernelStructure out;
  const std::size_t r = s.rank();
  out.free_rank = a.rows() - r;
  for (std::size_t i = 0; i < r; ++i)
    if (s.D(i, i) != 1) out.invariant_factors.push_back(s.D(i, i));
  return out;
}

/// Some integer solution X of B·X == R, or nullopt when none exists.
inline std::optional<IntMatrix> solve_integer(const IntMatrix& b, const IntMatrix& rhs) {
  if (b.rows() != rhs.rows()) throw Error("solve_integer: row counts differ");
  SmithDecomposition s = smith_normal_form(b);
  const std::size_t r = s.rank();
  IntMatrix ur = s.U * rhs;
  IntMatrix y(b.cols(), rhs.cols());
  for (std::size_t i = 0; i < ur.rows(); ++i)
    for (std::size_t j = 0; j < ur.cols(); ++j) {
      if (i < r) {
        if (!divides(s.D(i, i), ur(i, j))) return std::nullopt;
        y(i, j) = ur(i, j) / s.D(i, i);
      } else if (ur(i, j) != 0) {
        return std::nullopt;
      }
    }
  return s.V * y;
}

}  // namespace subcat
