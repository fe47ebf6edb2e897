#pragma once

#include <optional>
#include <utility>

#include "dagg/linalg.hpp"

namespace dagg {

/// Square nonsingular basis B of the lattice generated by the columns of A,
/// kept together with its exact inverse.
struct LatticeBasis {
  IntMatrix B;
  RatMatrix B_inv;
};

/// The truncated lattice {B y : |y|_inf <= bound}.
struct BoundedLatticeSpec {
  LatticeBasis basis;
  BigInt bound;
};

/// Basis of L(A) from the nonzero columns of the column HNF of A.
/// Requires full row rank.
inline LatticeBasis lattice_basis(const IntMatrix& A) {
  const std::size_t m = A.rows();
  HnfResult h = hnf(A);
  std::size_t nonzero = 0;
  for (std::size_t j = 0; j < A.cols(); ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < m && zero; ++i)
      if (h.H.at(i, j) != 0) zero = false;
    if (!zero) ++nonzero;
  }
  if (nonzero < m)
    throw RankDeficient("lattice_basis: rank(A) < number of rows");
  IntMatrix B(m, m);
  for (std::size_t j = 0; j < m; ++j) B.set_col(j, h.H.col(j));
  RatMatrix B_inv = invert(B);
  return {std::move(B), std::move(B_inv)};
}

/// Lattice membership of b with its coordinate vector when it belongs.
inline std::pair<bool, std::optional<IntVec>> member(const LatticeBasis& basis,
                                                     const IntVec& b) {
  if (b.size() != basis.B.rows()) throw DimensionMismatch("member: length");
  RatVec beta = multiply(basis.B_inv, to_rational(b));
  IntVec coords(beta.size());
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (!is_integral(beta[i])) return {false, std::nullopt};
    coords[i] = beta[i].get_num();
  }
  return {true, coords};
}

/// Smallest convenient M with |B^{-1} A x|_inf <= M for all 0 <= x <= u,
/// namely ceil(|B^{-1}A|_inf * |u|_inf), clamped to at least 1 so downstream
/// thresholds stay well-posed for u = 0.
inline BigInt bounded_image_bound(const IntMatrix& A, const LatticeBasis& basis,
                                  const IntVec& u) {
  for (const auto& x : u)
    if (x < 0) throw Error("bounded_image_bound: negative bound");
  RatMatrix At = multiply(basis.B_inv, to_rational(A));
  BigInt M = rat_ceil(infinity_norm(At) * BigRat(linf_norm(u)));
  return M < 1 ? BigInt(1) : M;
}

/// Basis of the lattice L(A) intersected with the rational subspace spanned
/// by the columns of R_basis. With P a matrix whose kernel is exactly that
/// subspace, the intersection is {B y : y in Z^m, (P B) y = 0}, and the
/// integer kernel of PB comes out of the HNF multiplier directly.
inline IntMatrix lattice_subspace_intersection(const LatticeBasis& basis,
                                               const RatMatrix& R_basis) {
  const std::size_t m = basis.B.rows();
  if (R_basis.rows() != m)
    throw DimensionMismatch("lattice_subspace_intersection: row count");
  const std::size_t r = R_basis.cols();
  if (r == 0) return IntMatrix(m, 0);

  RatMatrix P = rational_kernel_basis(R_basis.transposed()).transposed();
  RatMatrix PBq = multiply(P, to_rational(basis.B));
  IntMatrix PB(PBq.rows(), PBq.cols());
  for (std::size_t i = 0; i < PBq.rows(); ++i) {
    BigInt l = lcm_of_denominators(PBq.row(i));
    for (std::size_t j = 0; j < PBq.cols(); ++j)
      PB.at(i, j) = to_int(PBq.at(i, j) * BigRat(l));
  }
  IntMatrix Y = integer_kernel_basis(PB);
  if (Y.cols() != r)
    throw DimensionMismatch(
        "lattice_subspace_intersection: subspace basis is not independent");
  return multiply(basis.B, Y);
}

inline IntMatrix lattice_subspace_intersection(const LatticeBasis& basis,
                                               const IntMatrix& R_basis) {
  return lattice_subspace_intersection(basis, to_rational(R_basis));
}

}  // namespace dagg
