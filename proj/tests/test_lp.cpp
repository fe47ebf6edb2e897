#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dagg/lp.hpp"

using namespace dagg;

namespace {

bool witness_satisfies(const LinearSystem& sys, const RatVec& w) {
  for (std::size_t j = 0; j < sys.nvars(); ++j)
    if (sys.is_nonneg(j) && w[j] < 0) return false;
  for (std::size_t i = 0; i < sys.nrows(); ++i) {
    BigRat lhs = 0;
    for (std::size_t j = 0; j < sys.nvars(); ++j) lhs += sys.row(i)[j] * w[j];
    switch (sys.rel(i)) {
      case Rel::Eq:
        if (lhs != sys.rhs(i)) return false;
        break;
      case Rel::Le:
        if (lhs > sys.rhs(i)) return false;
        break;
      case Rel::Ge:
        if (lhs < sys.rhs(i)) return false;
        break;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("lp_feasible trivial verdicts") {
  SECTION("x >= 0 and x <= -1") {
    LinearSystem ls(1);
    ls.add_le({BigRat(1)}, BigRat(-1));
    CHECK_FALSE(lp_feasible(ls).feasible);
  }
  SECTION("x + y = 1 over the nonnegative orthant") {
    LinearSystem ls(2);
    ls.add_eq({BigRat(1), BigRat(1)}, BigRat(1));
    LpResult res = lp_feasible(ls);
    REQUIRE(res.feasible);
    CHECK(witness_satisfies(ls, res.witness));
  }
  SECTION("-A_1 outside the cone of (1,2),(2,1)") {
    LinearSystem ls(2);
    ls.add_eq({BigRat(1), BigRat(2)}, BigRat(-1));
    ls.add_eq({BigRat(2), BigRat(1)}, BigRat(-2));
    CHECK_FALSE(lp_feasible(ls).feasible);
  }
}

TEST_CASE("lp_feasible handles free variables") {
  // h with h^T (1,2) >= 1 and h^T (2,1) >= 1 exists (free sign).
  LinearSystem ls(2);
  ls.set_all_free();
  ls.add_ge({BigRat(1), BigRat(2)}, BigRat(1));
  ls.add_ge({BigRat(2), BigRat(1)}, BigRat(1));
  LpResult res = lp_feasible(ls);
  REQUIRE(res.feasible);
  CHECK(witness_satisfies(ls, res.witness));

  // No h separates opposite vectors.
  LinearSystem none(1);
  none.set_all_free();
  none.add_ge({BigRat(1)}, BigRat(1));
  none.add_ge({BigRat(-1)}, BigRat(1));
  CHECK_FALSE(lp_feasible(none).feasible);
}

TEST_CASE("lp witness exactness on constructed feasible systems") {
  std::mt19937 rng(1212);
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> val(0, 4);
  for (int iter = 0; iter < 500; ++iter) {
    std::size_t nvars = 1 + rng() % 4;
    std::size_t nrows = 1 + rng() % 4;
    LinearSystem ls(nvars);
    // Ground-truth feasible point; free variables allowed to be negative.
    RatVec x0(nvars);
    for (std::size_t j = 0; j < nvars; ++j) {
      if (rng() % 3 == 0) {
        ls.set_free(j);
        x0[j] = BigRat(BigInt(coeff(rng)));
      } else {
        x0[j] = BigRat(BigInt(val(rng)));
      }
    }
    for (std::size_t i = 0; i < nrows; ++i) {
      RatVec row(nvars);
      BigRat dot = 0;
      for (std::size_t j = 0; j < nvars; ++j) {
        row[j] = BigRat(BigInt(coeff(rng)));
        dot += row[j] * x0[j];
      }
      switch (rng() % 3) {
        case 0:
          ls.add_eq(row, dot);
          break;
        case 1:
          ls.add_le(row, dot + BigRat(BigInt(val(rng))));
          break;
        default:
          ls.add_ge(row, dot - BigRat(BigInt(val(rng))));
          break;
      }
    }
    LpResult res = lp_feasible(ls);
    REQUIRE(res.feasible);
    REQUIRE(witness_satisfies(ls, res.witness));
  }
}

TEST_CASE("lp detects planted contradictions") {
  std::mt19937 rng(3434);
  std::uniform_int_distribution<int> coeff(-5, 5);
  for (int iter = 0; iter < 200; ++iter) {
    std::size_t nvars = 1 + rng() % 4;
    LinearSystem ls(nvars);
    RatVec row(nvars);
    bool zero = true;
    for (std::size_t j = 0; j < nvars; ++j) {
      row[j] = BigRat(BigInt(coeff(rng)));
      zero = zero && row[j] == 0;
    }
    if (zero) row[0] = 1;
    // v.x >= 3 and v.x <= 2 cannot both hold.
    ls.add_ge(row, BigRat(3));
    ls.add_le(row, BigRat(2));
    for (std::size_t j = 0; j < nvars; ++j)
      if (rng() % 2) ls.set_free(j);
    REQUIRE_FALSE(lp_feasible(ls).feasible);
  }
}
