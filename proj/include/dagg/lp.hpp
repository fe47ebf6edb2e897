#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dagg/matrix.hpp"

namespace dagg {

enum class Rel { Eq, Le, Ge };

/// A rational linear feasibility system: equalities/inequalities over
/// variables that are individually either sign-restricted (x_j >= 0, the
/// default) or free.
class LinearSystem {
 public:
  explicit LinearSystem(std::size_t nvars) : nonneg_(nvars, true) {}

  std::size_t nvars() const { return nonneg_.size(); }
  std::size_t nrows() const { return coeffs_.size(); }

  void set_free(std::size_t j) { nonneg_.at(j) = false; }
  void set_all_free() { nonneg_.assign(nonneg_.size(), false); }
  bool is_nonneg(std::size_t j) const { return nonneg_.at(j); }

  void add_row(const RatVec& coeffs, Rel rel, const BigRat& rhs) {
    if (coeffs.size() != nvars()) throw DimensionMismatch("add_row: length");
    coeffs_.push_back(coeffs);
    rels_.push_back(rel);
    rhs_.push_back(rhs);
  }
  void add_eq(const RatVec& c, const BigRat& b) { add_row(c, Rel::Eq, b); }
  void add_le(const RatVec& c, const BigRat& b) { add_row(c, Rel::Le, b); }
  void add_ge(const RatVec& c, const BigRat& b) { add_row(c, Rel::Ge, b); }

  const RatVec& row(std::size_t i) const { return coeffs_.at(i); }
  Rel rel(std::size_t i) const { return rels_.at(i); }
  const BigRat& rhs(std::size_t i) const { return rhs_.at(i); }

 private:
  std::vector<bool> nonneg_;
  std::vector<RatVec> coeffs_;
  std::vector<Rel> rels_;
  std::vector<BigRat> rhs_;
};

struct LpResult {
  bool feasible = false;
  RatVec witness;  // one exact feasible point when feasible
};

/// Exact feasibility test by phase-1 simplex over the rationals.
///
/// The system is brought to standard form (free variables split into
/// differences, slacks for inequalities, right-hand sides made nonnegative)
/// and the sum of one artificial variable per row is minimized on a dense
/// rational tableau. Pivoting follows Bland's rule throughout, so the method
/// terminates without tolerances; verdict and witness are exact.
inline LpResult lp_feasible(const LinearSystem& sys) {
  const std::size_t nv = sys.nvars();
  const std::size_t m = sys.nrows();

  // Standard-form columns: (variable index, sign) pairs for the split.
  std::vector<std::pair<std::size_t, int>> var_cols;
  for (std::size_t j = 0; j < nv; ++j) {
    var_cols.push_back({j, +1});
    if (!sys.is_nonneg(j)) var_cols.push_back({j, -1});
  }
  const std::size_t nsplit = var_cols.size();
  std::size_t nslack = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (sys.rel(i) != Rel::Eq) ++nslack;
  const std::size_t ncols = nsplit + nslack;
  const std::size_t width = ncols + m;  // artificials appended

  RatMatrix D(m, width);
  RatVec d(m, BigRat(0));
  std::size_t slack = nsplit;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t c = 0; c < nsplit; ++c)
      D.at(i, c) = BigRat(var_cols[c].second) * sys.row(i)[var_cols[c].first];
    if (sys.rel(i) == Rel::Le)
      D.at(i, slack++) = 1;
    else if (sys.rel(i) == Rel::Ge)
      D.at(i, slack++) = -1;
    d[i] = sys.rhs(i);
    if (d[i] < 0) {
      for (std::size_t c = 0; c < ncols; ++c) D.at(i, c) = -D.at(i, c);
      d[i] = -d[i];
    }
    D.at(i, ncols + i) = 1;
  }

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = ncols + i;

  // Reduced costs for min(sum of artificials) under the artificial basis:
  // 0 - sum of the column for real columns, exactly 0 for artificials.
  RatVec obj(width, BigRat(0));
  for (std::size_t c = 0; c < ncols; ++c)
    for (std::size_t i = 0; i < m; ++i) obj[c] -= D.at(i, c);

  for (;;) {
    std::size_t e = width;
    for (std::size_t c = 0; c < width; ++c)
      if (obj[c] < 0) {
        e = c;
        break;
      }
    if (e == width) break;  // optimal

    std::size_t leave = m;
    BigRat best;
    for (std::size_t i = 0; i < m; ++i) {
      if (D.at(i, e) <= 0) continue;
      BigRat ratio = d[i] / D.at(i, e);
      if (leave == m || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == m)
      throw Error("lp_feasible: phase-1 objective unbounded");  // unreachable

    BigRat piv = D.at(leave, e);
    for (std::size_t c = 0; c < width; ++c) D.at(leave, c) /= piv;
    d[leave] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || D.at(i, e) == 0) continue;
      BigRat f = D.at(i, e);
      for (std::size_t c = 0; c < width; ++c)
        D.at(i, c) -= f * D.at(leave, c);
      d[i] -= f * d[leave];
    }
    if (obj[e] != 0) {
      BigRat f = obj[e];
      for (std::size_t c = 0; c < width; ++c) obj[c] -= f * D.at(leave, c);
    }
    basis[leave] = e;
  }

  BigRat residue = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= ncols) residue += d[i];
  if (residue != 0) return {false, {}};

  LpResult res;
  res.feasible = true;
  res.witness.assign(nv, BigRat(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] >= nsplit) continue;  // slack or zero-valued artificial
    const auto& [var, sign] = var_cols[basis[i]];
    res.witness[var] += BigRat(sign) * d[i];
  }
  return res;
}

}  // namespace dagg
