#pragma once

#include <cstdlib>
#include <vector>

#include "dagg/matrix.hpp"

namespace dagg {

struct HnfResult {
  IntMatrix H;  // column-style Hermite normal form of the input
  IntMatrix U;  // unimodular column-operation record, H = M * U
};

/// Column-style Hermite normal form by integer column elimination.
///
/// Pivots are positive, entries to the left of a pivot lie in [0, pivot),
/// entries to the right of a pivot in its row are zero, and zero columns are
/// pushed to the end. The nonzero columns of H generate the same lattice as
/// the columns of M. Entries are reduced modulo the pivot as soon as it is
/// established, which keeps intermediate values small.
inline HnfResult hnf(const IntMatrix& M) {
  const std::size_t m = M.rows(), n = M.cols();
  IntMatrix H = M;
  IntMatrix U = IntMatrix::identity(n);

  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m; ++i) std::swap(H.at(i, a), H.at(i, b));
    for (std::size_t i = 0; i < n; ++i) std::swap(U.at(i, a), U.at(i, b));
  };
  auto negate_col = [&](std::size_t j) {
    for (std::size_t i = 0; i < m; ++i) H.at(i, j) = -H.at(i, j);
    for (std::size_t i = 0; i < n; ++i) U.at(i, j) = -U.at(i, j);
  };
  // col_a -= t * col_b
  auto submul_col = [&](std::size_t a, std::size_t b, const BigInt& t) {
    if (t == 0) return;
    for (std::size_t i = 0; i < m; ++i) H.at(i, a) -= t * H.at(i, b);
    for (std::size_t i = 0; i < n; ++i) U.at(i, a) -= t * U.at(i, b);
  };

  std::size_t p = 0;  // next pivot column
  for (std::size_t row = 0; row < m && p < n; ++row) {
    // Euclidean elimination across columns p..n-1 in this row.
    while (true) {
      std::size_t best = n;
      for (std::size_t j = p; j < n; ++j) {
        if (H.at(row, j) == 0) continue;
        if (best == n || abs(H.at(row, j)) < abs(H.at(row, best))) best = j;
      }
      if (best == n) break;  // row has no pivot
      swap_cols(p, best);
      if (H.at(row, p) < 0) negate_col(p);
      bool clean = true;
      for (std::size_t j = p + 1; j < n; ++j) {
        if (H.at(row, j) == 0) continue;
        BigInt t;
        mpz_fdiv_q(t.get_mpz_t(), H.at(row, j).get_mpz_t(),
                   H.at(row, p).get_mpz_t());
        submul_col(j, p, t);
        if (H.at(row, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (H.at(row, p) == 0) continue;  // no pivot in this row
    // Reduce the columns left of the pivot into [0, pivot).
    for (std::size_t j = 0; j < p; ++j) {
      BigInt t;
      mpz_fdiv_q(t.get_mpz_t(), H.at(row, j).get_mpz_t(),
                 H.at(row, p).get_mpz_t());
      submul_col(j, p, t);
    }
    ++p;
  }
  return {H, U};
}

/// Exact rank by fraction-free (Bareiss) elimination.
inline std::size_t rank(const IntMatrix& M) {
  IntMatrix a = M;
  const std::size_t m = a.rows(), n = a.cols();
  std::size_t r = 0;
  BigInt prev = 1;
  for (std::size_t col = 0; col < n && r < m; ++col) {
    std::size_t piv = m;
    for (std::size_t i = r; i < m; ++i)
      if (a.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv == m) continue;
    if (piv != r)
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(r, j), a.at(piv, j));
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = col + 1; j < n; ++j)
        a.at(i, j) =
            (a.at(r, col) * a.at(i, j) - a.at(i, col) * a.at(r, j)) / prev;
      a.at(i, col) = 0;
    }
    prev = a.at(r, col);
    ++r;
  }
  return r;
}

inline std::size_t rank(const RatMatrix& M) {
  // Scale each row to integers; row scaling does not change the rank.
  IntMatrix a(M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i) {
    BigInt l = lcm_of_denominators(M.row(i));
    for (std::size_t j = 0; j < M.cols(); ++j)
      a.at(i, j) = to_int(M.at(i, j) * BigRat(l));
  }
  return rank(a);
}

/// Exact inverse of a square integer matrix. Throws SingularMatrix.
inline RatMatrix invert(const IntMatrix& M) {
  if (M.rows() != M.cols()) throw DimensionMismatch("invert: square required");
  const std::size_t n = M.rows();
  RatMatrix a = to_rational(M);
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t i = col; i < n; ++i)
      if (a.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv == n) throw SingularMatrix("invert: singular matrix");
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a.at(col, j), a.at(piv, j));
        std::swap(inv.at(col, j), inv.at(piv, j));
      }
    BigRat d = a.at(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a.at(col, j) /= d;
      inv.at(col, j) /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a.at(i, col) == 0) continue;
      BigRat f = a.at(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a.at(i, j) -= f * a.at(col, j);
        inv.at(i, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

/// Solve S w = rhs exactly for square rational S. Throws SingularMatrix.
inline RatVec solve_linear(const RatMatrix& S, const RatVec& rhs) {
  if (S.rows() != S.cols() || S.rows() != rhs.size())
    throw DimensionMismatch("solve_linear: shape");
  const std::size_t n = S.rows();
  RatMatrix a = S;
  RatVec b = rhs;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t i = col; i < n; ++i)
      if (a.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv == n) throw SingularMatrix("solve_linear: singular matrix");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(col, j), a.at(piv, j));
      std::swap(b[col], b[piv]);
    }
    BigRat d = a.at(col, col);
    for (std::size_t j = 0; j < n; ++j) a.at(col, j) /= d;
    b[col] /= d;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a.at(i, col) == 0) continue;
      BigRat f = a.at(i, col);
      for (std::size_t j = 0; j < n; ++j) a.at(i, j) -= f * a.at(col, j);
      b[i] -= f * b[col];
    }
  }
  return b;
}

template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack: row count");
  Matrix<T> c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j)
      c.at(i, a.cols() + j) = b.at(i, j);
  }
  return c;
}

namespace detail {

/// Scale a rational vector to integer entries with content 1 and a positive
/// leading nonzero entry.
inline RatVec integerize(const RatVec& v) {
  BigInt l = lcm_of_denominators(v);
  IntVec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = to_int(v[i] * BigRat(l));
  BigInt g = content(w);
  if (g == 0) return to_rational(w);
  std::size_t lead = 0;
  while (lead < w.size() && w[lead] == 0) ++lead;
  if (lead < w.size() && w[lead] < 0) g = -g;
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = BigRat(w[i] / g);
  return out;
}

}  // namespace detail

/// Basis of the right kernel {y : M y = 0}. Basis vectors are returned as
/// columns, scaled to integer entries with content 1. A full-column-rank M
/// yields a matrix with zero columns.
inline RatMatrix rational_kernel_basis(const RatMatrix& M) {
  const std::size_t k = M.rows(), n = M.cols();
  RatMatrix a = M;
  std::vector<std::size_t> pivot_col;  // pivot column of each pivot row
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < k; ++col) {
    std::size_t piv = k;
    for (std::size_t i = r; i < k; ++i)
      if (a.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv == k) continue;
    if (piv != r)
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(r, j), a.at(piv, j));
    BigRat d = a.at(r, col);
    for (std::size_t j = 0; j < n; ++j) a.at(r, j) /= d;
    for (std::size_t i = 0; i < k; ++i) {
      if (i == r || a.at(i, col) == 0) continue;
      BigRat f = a.at(i, col);
      for (std::size_t j = 0; j < n; ++j) a.at(i, j) -= f * a.at(r, j);
    }
    pivot_col.push_back(col);
    ++r;
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_col) is_pivot[c] = true;

  RatMatrix basis(n, n - r);
  std::size_t out = 0;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVec v(n, BigRat(0));
    v[f] = 1;
    for (std::size_t i = 0; i < r; ++i) v[pivot_col[i]] = -a.at(i, f);
    basis.set_col(out++, detail::integerize(v));
  }
  return basis;
}

/// Basis of the full integer kernel {y in Z^n : G y = 0} of an integer
/// matrix, read off from the unimodular multiplier of the column HNF: with
/// H = G U, the columns of U over the zero columns of H are such a basis.
inline IntMatrix integer_kernel_basis(const IntMatrix& G) {
  const std::size_t n = G.cols();
  HnfResult h = hnf(G);
  std::vector<std::size_t> zero_cols;
  for (std::size_t j = 0; j < n; ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < G.rows() && zero; ++i)
      if (h.H.at(i, j) != 0) zero = false;
    if (zero) zero_cols.push_back(j);
  }
  IntMatrix out(n, zero_cols.size());
  for (std::size_t c = 0; c < zero_cols.size(); ++c)
    out.set_col(c, h.U.col(zero_cols[c]));
  return out;
}

}  // namespace dagg
