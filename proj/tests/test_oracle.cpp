#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dagg/oracle.hpp"

using namespace dagg;

namespace {

DiophantineSystem intro_system() {
  DiophantineSystem sys;
  sys.A = IntMatrix{{BigInt(1), BigInt(2)}, {BigInt(2), BigInt(1)}};
  sys.b = {BigInt(3), BigInt(3)};
  return sys;
}

AggregationMatrix forced(const RatMatrix& T) {
  AggregationMatrix agg;
  agg.T = T;
  agg.kind = AggregationKind::Strong;
  agg.size = T.rows();
  return agg;
}

}  // namespace

TEST_CASE("enumerate fixed cases") {
  SECTION("intro system has exactly (1,1)") {
    DiophantineSystem sys = intro_system();
    SolutionSet s = enumerate(sys.A, sys.b, {BigInt(3), BigInt(3)});
    REQUIRE(s.solutions == std::vector<IntVec>{{BigInt(1), BigInt(1)}});
    CHECK(s.complete_within_window);
  }
  SECTION("3x + 3y = 6 inside the 2-box") {
    IntMatrix M{{BigInt(3), BigInt(3)}};
    SolutionSet s = enumerate(M, {BigInt(6)}, {BigInt(2), BigInt(2)});
    std::vector<IntVec> expected{{BigInt(0), BigInt(2)},
                                 {BigInt(1), BigInt(1)},
                                 {BigInt(2), BigInt(0)}};
    REQUIRE(s.solutions == expected);
  }
  SECTION("zero system, zero window") {
    IntMatrix M{{BigInt(1), BigInt(1)}};
    SolutionSet s = enumerate(M, {BigInt(0)}, {BigInt(0), BigInt(0)});
    REQUIRE(s.solutions == std::vector<IntVec>{{BigInt(0), BigInt(0)}});
  }
  SECTION("rational rows are scaled exactly") {
    RatMatrix M{{make_rat(BigInt(1), BigInt(2)), make_rat(BigInt(1), BigInt(3))}};
    // x/2 + y/3 = 5/6 has (1,1) as its only small solution.
    SolutionSet s = enumerate(M, {make_rat(BigInt(5), BigInt(6))},
                              {BigInt(4), BigInt(4)});
    REQUIRE(s.solutions == std::vector<IntVec>{{BigInt(1), BigInt(1)}});
  }
  SECTION("window cap") {
    IntMatrix M{{BigInt(1), BigInt(1)}};
    CHECK_THROWS_AS(
        enumerate(M, {BigInt(0)}, {BigInt(10000), BigInt(10000)}, 1000),
        WindowTooLarge);
  }
}

TEST_CASE("certify_strong on the worked fixtures") {
  DiophantineSystem sys = intro_system();
  SECTION("T = (1 2) aggregates strongly: 5x + 4y = 9") {
    AggregationMatrix agg = forced(RatMatrix{{BigRat(1), BigRat(2)}});
    CertifyResult res = certify_strong(sys, agg, {BigInt(3), BigInt(3)});
    CHECK(res.equal);
  }
  SECTION("T = (1 1) is not strong: 3x + 3y = 6") {
    AggregationMatrix agg = forced(RatMatrix{{BigRat(1), BigRat(1)}});
    CertifyResult res = certify_strong(sys, agg, {BigInt(3), BigInt(3)});
    REQUIRE_FALSE(res.equal);
    REQUIRE(res.counterexample);
    // Any spurious solution must solve the aggregated equation only.
    const IntVec& x = *res.counterexample;
    CHECK(BigInt(3) * x[0] + BigInt(3) * x[1] == 6);
    CHECK(multiply(sys.A, x) != sys.b);
  }
  SECTION("identity T certifies any window") {
    AggregationMatrix agg =
        forced(RatMatrix{{BigRat(1), BigRat(0)}, {BigRat(0), BigRat(1)}});
    CHECK(certify_strong(sys, agg, {BigInt(5), BigInt(5)}).equal);
  }
}

TEST_CASE("enumerate agrees with a naive filter") {
  std::mt19937 rng(140);
  std::uniform_int_distribution<int> cdist(-3, 3);
  std::uniform_int_distribution<int> wdist(0, 3);
  for (int iter = 0; iter < 200; ++iter) {
    std::size_t m = 1 + rng() % 2, n = 1 + rng() % 3;
    IntMatrix M(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) M.at(i, j) = cdist(rng);
    IntVec w(n);
    for (auto& v : w) v = wdist(rng);
    IntVec target(n);
    for (std::size_t j = 0; j < n; ++j)
      target[j] = BigInt(rng() % (w[j].get_ui() + 1));
    IntVec rhs = multiply(M, target);

    SolutionSet fast = enumerate(M, rhs, w);

    // Naive odometer sweep of the whole box.
    std::vector<IntVec> slow;
    IntVec x(n, BigInt(0));
    for (;;) {
      if (multiply(M, x) == rhs) slow.push_back(x);
      std::size_t j = n;
      while (j-- > 0) {
        if (x[j] < w[j]) {
          x[j] += 1;
          for (std::size_t l = j + 1; l < n; ++l) x[l] = 0;
          break;
        }
        if (j == 0) goto done;
      }
    }
  done:
    std::sort(slow.begin(), slow.end());
    REQUIRE(fast.solutions == slow);
  }
}

TEST_CASE("enumerate is monotone in the window") {
  std::mt19937 rng(33);
  std::uniform_int_distribution<int> cdist(-2, 3);
  for (int iter = 0; iter < 100; ++iter) {
    std::size_t n = 2 + rng() % 2;
    IntMatrix M(1, n);
    for (std::size_t j = 0; j < n; ++j) M.at(0, j) = cdist(rng);
    IntVec rhs{BigInt(static_cast<int>(rng() % 7))};
    IntVec small(n, BigInt(2)), large(n, BigInt(4));
    SolutionSet s1 = enumerate(M, rhs, small);
    SolutionSet s2 = enumerate(M, rhs, large);
    for (const auto& x : s1.solutions)
      REQUIRE(std::binary_search(s2.solutions.begin(), s2.solutions.end(), x));
  }
}
