#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "dagg/cone.hpp"
#include "dagg/lattice.hpp"
#include "dagg/primes.hpp"

namespace dagg {

/// The system A x = b, x integer and nonnegative, optionally boxed by u.
struct DiophantineSystem {
  IntMatrix A;
  IntVec b;
  std::optional<IntVec> u;
};

enum class AggregationKind { Strong, Weak };

/// Ingredients that went into a particular aggregation matrix, kept for
/// reporting and reproducibility checks.
struct Provenance {
  std::vector<BigInt> moduli;       // pairwise coprime q_i
  std::vector<IntVec> separators;   // h vectors, one per perturbable row
  BigInt bound_M = 0;               // norm bound on the relevant intersection
  BigInt threshold_C = 0;           // threshold handed to coprime_above
  std::optional<std::size_t> lineality_dim;
};

struct AggregationMatrix {
  RatMatrix T;  // k x m, rows independent
  AggregationKind kind = AggregationKind::Strong;
  std::size_t size = 0;  // k
  std::optional<IntVec> introduced_bounds;
  Provenance provenance;
};

namespace detail {

inline void check_system(const DiophantineSystem& sys) {
  if (sys.b.size() != sys.A.rows())
    throw DimensionMismatch("system: length of b");
  if (sys.u) {
    if (sys.u->size() != sys.A.cols())
      throw DimensionMismatch("system: length of u");
    for (const auto& x : *sys.u)
      if (x < 0) throw Error("system: negative upper bound");
  }
}

inline RatMatrix single_row(const RatVec& t) {
  RatMatrix T(1, t.size());
  for (std::size_t j = 0; j < t.size(); ++j) T.at(0, j) = t[j];
  return T;
}

}  // namespace detail

/// Size-one strong aggregation for a boxed system.
///
/// Pipeline: lattice basis B of L(A), membership test for b (failure means
/// the system is infeasible outright), bound M on |B^{-1}Ax|_inf over the
/// box, threshold C = M + |B^{-1}b|_inf + 1, pairwise coprime q_i > C, and
/// finally the kernel vector of the (m-1) x m matrix with rows
/// B_i^T + (1/q_i) B_m^T, normalized so its last coordinate is -1.
inline AggregationMatrix aggregate_bounded(const DiophantineSystem& sys) {
  detail::check_system(sys);
  if (!sys.u) throw Error("aggregate_bounded: upper bounds required");
  const std::size_t m = sys.A.rows();

  LatticeBasis basis = lattice_basis(sys.A);
  auto [in_lattice, beta] = member(basis, sys.b);
  if (!in_lattice)
    throw InfeasibleByLattice("aggregate_bounded: b is not in L(A)");

  AggregationMatrix agg;
  agg.kind = AggregationKind::Strong;
  agg.size = 1;
  if (m == 1) {
    // Already a single equation; the identity row is a strong aggregation.
    agg.T = detail::single_row({BigRat(1)});
    return agg;
  }

  BigInt M = bounded_image_bound(sys.A, basis, *sys.u);
  BigInt C = M + linf_norm(*beta) + 1;
  CoprimeSet cps = coprime_above(m - 1, C);

  RatMatrix lambda(m - 1, m);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    BigRat inv_q = make_rat(BigInt(1), cps.moduli[i]);
    for (std::size_t row = 0; row < m; ++row)
      lambda.at(i, row) =
          BigRat(basis.B.at(row, i)) + inv_q * BigRat(basis.B.at(row, m - 1));
  }
  RatMatrix kernel = rational_kernel_basis(lambda);
  if (kernel.cols() != 1)
    throw Error("aggregate_bounded: unexpected kernel dimension");
  RatVec t = kernel.col(0);

  // Normalize the last (nonzero) coordinate to -1.
  std::size_t lead = m;
  for (std::size_t j = m; j-- > 0;)
    if (t[j] != 0) {
      lead = j;
      break;
    }
  BigRat scale = BigRat(-1) / t[lead];
  for (auto& x : t) x *= scale;

  agg.T = detail::single_row(t);
  agg.provenance.moduli = cps.moduli;
  agg.provenance.bound_M = M;
  agg.provenance.threshold_C = C;
  return agg;
}

/// The closed-form variant: T = (1/q_1, ..., 1/q_{m-1}, -1) with pairwise
/// coprime q_i exceeding M' + |b|_inf, M' = |A|_inf * |u|_inf. Works against
/// the integer box directly, so no lattice membership test is involved.
inline AggregationMatrix aggregate_bounded_explicit(
    const DiophantineSystem& sys) {
  detail::check_system(sys);
  if (!sys.u) throw Error("aggregate_bounded_explicit: upper bounds required");
  const std::size_t m = sys.A.rows();

  BigInt Mp = infinity_norm(sys.A) * linf_norm(*sys.u);
  BigInt threshold = Mp + linf_norm(sys.b);

  AggregationMatrix agg;
  agg.kind = AggregationKind::Strong;
  agg.size = 1;
  agg.provenance.bound_M = Mp;
  agg.provenance.threshold_C = threshold;
  if (m == 1) {
    agg.T = detail::single_row({BigRat(-1)});
    return agg;
  }
  CoprimeSet cps = coprime_above(m - 1, std::max(threshold, BigInt(1)));
  RatVec t(m);
  for (std::size_t j = 0; j + 1 < m; ++j)
    t[j] = make_rat(BigInt(1), cps.moduli[j]);
  t[m - 1] = -1;
  agg.T = detail::single_row(t);
  agg.provenance.moduli = cps.moduli;
  return agg;
}

namespace detail {

/// Coprime threshold for a perturbed separating row: q_i must exceed both
/// the intersection bound M (so the divisibility argument closes) and the
/// largest column 1-norm (so the perturbation (1/q_1,...,1/q_m) costs each
/// column product strictly less than 1 and T A >= 1 survives exactly).
inline BigInt perturbation_threshold(const BigInt& M, const IntMatrix& cols) {
  return std::max({M, max_column_l1(cols), BigInt(1)});
}

}  // namespace detail

/// Size-one strong aggregation for an unbounded system whose cone is
/// pointed: T = h^T + (1/q_1, ..., 1/q_m) with h a separating vector and
/// q_i pairwise coprime above both the intersection bound
/// M = |A|_inf (|h|_inf + 1) |b|_1 + |b|_inf and the largest column 1-norm.
inline AggregationMatrix aggregate_pointed(const DiophantineSystem& sys) {
  detail::check_system(sys);
  const std::size_t m = sys.A.rows();
  ConeDecomposition dec = decompose_cone(sys.A);
  if (dec.r != 0)
    throw NotPointed("aggregate_pointed: lineality subspace is nontrivial");
  SeparatingVector sep = separating_vector(sys.A);

  BigInt M = infinity_norm(sys.A) * (linf_norm(sep.h) + 1) * l1_norm(sys.b) +
             linf_norm(sys.b);
  BigInt threshold = detail::perturbation_threshold(M, sys.A);
  CoprimeSet cps = coprime_above(m, threshold);

  RatVec t(m);
  for (std::size_t j = 0; j < m; ++j)
    t[j] = BigRat(sep.h[j]) + make_rat(BigInt(1), cps.moduli[j]);

  AggregationMatrix agg;
  agg.kind = AggregationKind::Strong;
  agg.size = 1;
  agg.T = detail::single_row(t);
  agg.provenance.moduli = cps.moduli;
  agg.provenance.separators = {sep.h};
  agg.provenance.bound_M = M;
  agg.provenance.threshold_C = threshold;
  agg.provenance.lineality_dim = 0;
  return agg;
}

/// Strong aggregation of minimum size r+1, r the lineality dimension.
///
/// The column block (B_1, ..., B_r, -sum B_i) over a lattice basis of
/// L(A) cap R is joined with the pointed columns; each leave-one-out
/// submatrix of the block gets its own separating vector, and only the first
/// row is perturbed by (1/q_1, ..., 1/q_m). Inputs with r + 1 > m (no
/// pointed part at all) are rejected: r+1 independent rows cannot exist.
inline AggregationMatrix aggregate_general(const DiophantineSystem& sys) {
  detail::check_system(sys);
  const std::size_t m = sys.A.rows();
  LatticeBasis basis = lattice_basis(sys.A);
  ConeDecomposition dec = decompose_cone(sys.A);
  const std::size_t r = dec.r;
  if (r + 1 > m)
    throw UnsupportedRegime(
        "aggregate_general: lineality dimension equals the row count");

  IntMatrix block(m, r + 1);
  if (r > 0) {
    IntMatrix L = lattice_subspace_intersection(basis, dec.R_basis);
    IntVec last(m, BigInt(0));
    for (std::size_t j = 0; j < r; ++j) {
      block.set_col(j, L.col(j));
      for (std::size_t i = 0; i < m; ++i) last[i] -= L.at(i, j);
    }
    block.set_col(r, last);
  }
  IntMatrix At = hstack(block, dec.A_P);

  std::vector<IntVec> hs;
  BigInt biggest_h = 0;
  for (std::size_t l = 0; l <= r; ++l) {
    IntMatrix minus_l(m, At.cols() - 1);
    std::size_t c = 0;
    for (std::size_t j = 0; j < At.cols(); ++j)
      if (j != l) minus_l.set_col(c++, At.col(j));
    SeparatingVector sep = separating_vector(minus_l);  // pointed by theory
    biggest_h = std::max(biggest_h, linf_norm(sep.h));
    hs.push_back(std::move(sep.h));
  }

  BigInt M =
      infinity_norm(At) * (biggest_h + 1) * l1_norm(sys.b) + linf_norm(sys.b);
  BigInt threshold = detail::perturbation_threshold(M, At);
  CoprimeSet cps = coprime_above(m, threshold);

  RatMatrix T(r + 1, m);
  for (std::size_t j = 0; j < m; ++j)
    T.at(0, j) = BigRat(hs[0][j]) + make_rat(BigInt(1), cps.moduli[j]);
  for (std::size_t l = 1; l <= r; ++l)
    for (std::size_t j = 0; j < m; ++j) T.at(l, j) = BigRat(hs[l][j]);

  AggregationMatrix agg;
  agg.kind = AggregationKind::Strong;
  agg.size = r + 1;
  agg.T = std::move(T);
  agg.provenance.moduli = cps.moduli;
  agg.provenance.separators = std::move(hs);
  agg.provenance.bound_M = M;
  agg.provenance.threshold_C = threshold;
  agg.provenance.lineality_dim = r;
  return agg;
}

/// Constructive witness that k <= r aggregated rows are never enough: given a
/// solution x_star, produce x_T solving the aggregated system but not the
/// original. A nonzero rational direction in Ker(T) intersected with the cone
/// is found either inside the lineality subspace or, when Ker(T) meets it
/// trivially, by projecting a pointed column along the direct sum; its
/// preimage is scaled to integrality and added to x_star.
inline IntVec lower_bound_witness(const DiophantineSystem& sys,
                                  const RatMatrix& T, const IntVec& x_star) {
  detail::check_system(sys);
  const std::size_t m = sys.A.rows(), n = sys.A.cols();
  if (T.cols() != m) throw DimensionMismatch("lower_bound_witness: T width");
  if (x_star.size() != n)
    throw DimensionMismatch("lower_bound_witness: x_star length");
  for (const auto& x : x_star)
    if (x < 0) throw WitnessNotFound("lower_bound_witness: x_star negative");
  IntVec Ax = multiply(sys.A, x_star);
  if (Ax != sys.b)
    throw WitnessNotFound("lower_bound_witness: x_star does not solve Ax=b");

  ConeDecomposition dec = decompose_cone(sys.A);
  if (T.rows() > dec.r)
    throw WitnessNotFound(
        "lower_bound_witness: T has more rows than the lineality dimension");

  RatMatrix R = to_rational(dec.R_basis);
  RatVec y_dir(m, BigRat(0));
  RatMatrix ker_tr = rational_kernel_basis(multiply(T, R));
  if (ker_tr.cols() > 0) {
    // Ker(T) meets the lineality subspace in a nonzero vector.
    y_dir = multiply(R, ker_tr.col(0));
  } else {
    // Direct sum: decompose a pointed column as v1 + v2 with v1 in Ker(T),
    // v2 in the lineality subspace; v1 is nonzero and stays in the cone.
    if (dec.pointed_cols.empty())
      throw WitnessNotFound("lower_bound_witness: cone has no pointed part");
    RatVec y_hat = to_rational(sys.A.col(dec.pointed_cols.front()));
    RatMatrix Hb = rational_kernel_basis(T);
    RatMatrix S = hstack(Hb, R);
    if (S.rows() != S.cols())
      throw WitnessNotFound("lower_bound_witness: subspaces do not split");
    RatVec w = solve_linear(S, y_hat);
    for (std::size_t c = 0; c < Hb.cols(); ++c)
      for (std::size_t i = 0; i < m; ++i) y_dir[i] += Hb.at(i, c) * w[c];
  }

  bool nonzero = false;
  for (const auto& v : y_dir) nonzero = nonzero || v != 0;
  if (!nonzero)
    throw WitnessNotFound("lower_bound_witness: no nonzero direction");

  LinearSystem ls(n);
  for (std::size_t i = 0; i < m; ++i)
    ls.add_eq(to_rational(sys.A.row(i)), y_dir[i]);
  LpResult lp = lp_feasible(ls);
  if (!lp.feasible)
    throw WitnessNotFound("lower_bound_witness: direction left the cone");

  BigInt lambda = lcm_of_denominators(lp.witness);
  IntVec x_T(n);
  for (std::size_t j = 0; j < n; ++j)
    x_T[j] = x_star[j] + to_int(lp.witness[j] * BigRat(lambda));
  return x_T;
}

/// Weak size-one aggregation: box the variables by u* = (n+1) * H with H the
/// Hadamard bound on (A|b) row norms, then aggregate the boxed system. Any
/// solvable system has a solution inside that box, so feasibility of the
/// boxed aggregated equation is equivalent to feasibility of the original.
inline AggregationMatrix aggregate_weak(const DiophantineSystem& sys) {
  detail::check_system(sys);
  const std::size_t m = sys.A.rows(), n = sys.A.cols();

  IntVec box;
  if (sys.u) {
    box = *sys.u;  // caller already has bounds; reuse them
  } else {
    BigInt prod_sq = 1;
    for (std::size_t i = 0; i < m; ++i) {
      BigInt s = sys.b[i] * sys.b[i];
      for (std::size_t j = 0; j < n; ++j) s += sys.A.at(i, j) * sys.A.at(i, j);
      prod_sq *= s;
    }
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), prod_sq.get_mpz_t());
    if (root * root < prod_sq) root += 1;
    BigInt bound = BigInt(n + 1) * root;
    box.assign(n, bound);
  }

  DiophantineSystem boxed{sys.A, sys.b, box};
  AggregationMatrix agg = aggregate_bounded(boxed);
  agg.kind = AggregationKind::Weak;
  agg.introduced_bounds = std::move(box);
  return agg;
}

}  // namespace dagg
