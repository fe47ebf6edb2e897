#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "dagg/aggregation.hpp"

namespace dagg {

constexpr unsigned long kDefaultEnumCap = 10000000;  // box-volume limit

/// All solutions found inside the enumeration box, lexicographically sorted.
struct SolutionSet {
  std::vector<IntVec> solutions;
  IntVec window;
  bool complete_within_window = true;
};

struct CertifyResult {
  bool equal = false;
  std::optional<IntVec> counterexample;  // a spurious aggregated solution
};

namespace detail {

struct EnumState {
  IntMatrix C;      // integerized constraint rows
  IntVec rhs;
  IntVec window;
  // Suffix interval of achievable contributions from columns >= j.
  std::vector<IntVec> sufmin, sufmax;
  std::vector<IntVec>* out = nullptr;
};

// partial = contribution of the fixed columns < j to every row.
inline void enum_rec(EnumState& st, std::size_t j, const IntVec& partial,
                     IntVec& x) {
  const std::size_t k = st.C.rows(), n = st.C.cols();
  for (std::size_t i = 0; i < k; ++i) {
    if (partial[i] + st.sufmin[i][j] > st.rhs[i]) return;
    if (partial[i] + st.sufmax[i][j] < st.rhs[i]) return;
  }
  if (j == n) {
    st.out->push_back(x);
    return;
  }
  IntVec p = partial;
  for (BigInt v = 0;;) {
    x[j] = v;
    enum_rec(st, j + 1, p, x);
    if (v == st.window[j]) break;
    v += 1;
    for (std::size_t i = 0; i < k; ++i) p[i] += st.C.at(i, j);
    // Bail out once some row is violated in a direction that more of x_j
    // can only worsen.
    bool hopeless = false;
    for (std::size_t i = 0; i < k && !hopeless; ++i) {
      const BigInt& c = st.C.at(i, j);
      if (c >= 0 && p[i] + st.sufmin[i][j + 1] > st.rhs[i]) hopeless = true;
      if (c <= 0 && p[i] + st.sufmax[i][j + 1] < st.rhs[i]) hopeless = true;
    }
    if (hopeless) break;
  }
  x[j] = 0;
}

}  // namespace detail

/// Exhaustively enumerate {x integer : 0 <= x <= window, M x = rhs}. The
/// system may be rational; rows are scaled to integers first. Recursion
/// prunes on exact per-row interval bounds of the remaining columns.
inline SolutionSet enumerate(const RatMatrix& M, const RatVec& rhs,
                             const IntVec& window,
                             unsigned long cap = kDefaultEnumCap) {
  const std::size_t k = M.rows(), n = M.cols();
  if (rhs.size() != k) throw DimensionMismatch("enumerate: rhs length");
  if (window.size() != n) throw DimensionMismatch("enumerate: window length");
  BigInt volume = 1;
  for (const auto& w : window) {
    if (w < 0) throw Error("enumerate: negative window");
    volume *= w + 1;
  }
  if (volume > BigInt(cap))
    throw WindowTooLarge("enumerate: window volume exceeds the cap");

  detail::EnumState st;
  st.C = IntMatrix(k, n);
  st.rhs.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    RatVec row = M.row(i);
    BigInt l = lcm_of_denominators(row);
    l = int_lcm(l, rhs[i].get_den());
    for (std::size_t j = 0; j < n; ++j)
      st.C.at(i, j) = to_int(row[j] * BigRat(l));
    st.rhs[i] = to_int(rhs[i] * BigRat(l));
  }
  st.window = window;
  st.sufmin.assign(k, IntVec(n + 1, BigInt(0)));
  st.sufmax.assign(k, IntVec(n + 1, BigInt(0)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = n; j-- > 0;) {
      BigInt lo = st.C.at(i, j) * window[j], hi = lo;
      if (lo > 0) lo = 0;
      if (hi < 0) hi = 0;
      st.sufmin[i][j] = st.sufmin[i][j + 1] + lo;
      st.sufmax[i][j] = st.sufmax[i][j + 1] + hi;
    }

  SolutionSet result;
  result.window = window;
  st.out = &result.solutions;
  IntVec partial(k, BigInt(0)), x(n, BigInt(0));
  detail::enum_rec(st, 0, partial, x);
  return result;
}

inline SolutionSet enumerate(const IntMatrix& M, const IntVec& rhs,
                             const IntVec& window,
                             unsigned long cap = kDefaultEnumCap) {
  return enumerate(to_rational(M), to_rational(rhs), window, cap);
}

/// Compare the solution sets of the original and the aggregated system
/// inside the window. Aggregation only relaxes, so any difference shows up
/// as a spurious aggregated solution, which is reported.
inline CertifyResult certify_strong(const DiophantineSystem& sys,
                                    const AggregationMatrix& agg,
                                    const IntVec& window,
                                    unsigned long cap = kDefaultEnumCap) {
  SolutionSet original = enumerate(sys.A, sys.b, window, cap);
  RatMatrix TA = multiply(agg.T, to_rational(sys.A));
  RatVec Tb = multiply(agg.T, to_rational(sys.b));
  SolutionSet aggregated = enumerate(TA, Tb, window, cap);

  if (original.solutions == aggregated.solutions) return {true, std::nullopt};
  for (const auto& x : aggregated.solutions)
    if (!std::binary_search(original.solutions.begin(),
                            original.solutions.end(), x))
      return {false, x};
  // Should be impossible: the aggregated system is a relaxation.
  return {false, std::nullopt};
}

}  // namespace dagg
