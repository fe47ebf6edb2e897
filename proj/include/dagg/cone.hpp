#pragma once

#include <vector>

#include "dagg/lattice.hpp"
#include "dagg/lp.hpp"

namespace dagg {

/// Split of the columns of A along the lineality subspace R of the cone they
/// generate: A_R collects the columns lying in R, A_P the rest, whose cone is
/// pointed and meets R only in the origin.
struct ConeDecomposition {
  std::size_t r = 0;      // dimension of the lineality subspace
  IntMatrix R_basis;      // m x r integer basis of R
  std::vector<std::size_t> lineal_cols;
  std::vector<std::size_t> pointed_cols;
  IntMatrix A_R;
  IntMatrix A_P;
};

/// Integer vector h with h^T M_j >= |M|_inf + 1 for every column, certifying
/// that the columns generate a pointed cone.
struct SeparatingVector {
  IntVec h;
  BigRat margin;  // min_j h^T M_j
};

/// Column j lies in the lineality subspace iff -A_j is a nonnegative
/// combination of the columns, an exact LP feasibility question per column.
inline ConeDecomposition decompose_cone(const IntMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  ConeDecomposition dec;
  for (std::size_t j = 0; j < n; ++j) {
    LinearSystem ls(n);
    for (std::size_t i = 0; i < m; ++i)
      ls.add_eq(to_rational(A.row(i)), BigRat(-A.at(i, j)));
    if (lp_feasible(ls).feasible)
      dec.lineal_cols.push_back(j);
    else
      dec.pointed_cols.push_back(j);
  }
  dec.A_R = IntMatrix(m, dec.lineal_cols.size());
  for (std::size_t c = 0; c < dec.lineal_cols.size(); ++c)
    dec.A_R.set_col(c, A.col(dec.lineal_cols[c]));
  dec.A_P = IntMatrix(m, dec.pointed_cols.size());
  for (std::size_t c = 0; c < dec.pointed_cols.size(); ++c)
    dec.A_P.set_col(c, A.col(dec.pointed_cols[c]));

  // Integer basis of span(A_R) from the nonzero HNF columns.
  HnfResult h = hnf(dec.A_R);
  std::size_t nonzero = 0;
  for (std::size_t j = 0; j < h.H.cols(); ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < m && zero; ++i)
      if (h.H.at(i, j) != 0) zero = false;
    if (!zero) ++nonzero;
  }
  dec.r = nonzero;
  dec.R_basis = IntMatrix(m, nonzero);
  for (std::size_t j = 0; j < nonzero; ++j) dec.R_basis.set_col(j, h.H.col(j));
  return dec;
}

/// Find h with h^T M_j >= 1 for all j by LP, then canonicalize: clear
/// denominators, divide by the gcd, and rescale minimally so that
/// h^T M_j >= |M|_inf + 1 holds exactly. Throws NotPointed when no such h
/// exists (the columns' convex hull contains the origin).
inline SeparatingVector separating_vector(const IntMatrix& M) {
  const std::size_t m = M.rows(), n = M.cols();
  if (n == 0) throw Error("separating_vector: no columns");
  LinearSystem ls(m);
  ls.set_all_free();
  for (std::size_t j = 0; j < n; ++j)
    ls.add_ge(to_rational(M.col(j)), BigRat(1));
  LpResult lp = lp_feasible(ls);
  if (!lp.feasible)
    throw NotPointed("separating_vector: cone is not pointed");

  BigInt l = lcm_of_denominators(lp.witness);
  IntVec h(m);
  for (std::size_t i = 0; i < m; ++i) h[i] = to_int(lp.witness[i] * BigRat(l));
  BigInt g = content(h);
  if (g > 1)
    for (auto& x : h) x /= g;

  BigInt margin0;
  for (std::size_t j = 0; j < n; ++j) {
    BigInt dot = 0;
    for (std::size_t i = 0; i < m; ++i) dot += h[i] * M.at(i, j);
    if (j == 0 || dot < margin0) margin0 = dot;
  }
  BigInt target = infinity_norm(M) + 1;
  BigInt scale = rat_ceil(make_rat(target, margin0));
  if (scale > 1)
    for (auto& x : h) x *= scale;

  BigRat margin;
  for (std::size_t j = 0; j < n; ++j) {
    BigInt dot = 0;
    for (std::size_t i = 0; i < m; ++i) dot += h[i] * M.at(i, j);
    if (j == 0 || BigRat(dot) < margin) margin = BigRat(dot);
  }
  return {h, margin};
}

}  // namespace dagg
