#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dagg/counting.hpp"
#include "dagg/oracle.hpp"

using namespace dagg;

namespace {

KnapsackEquation eq_of(std::initializer_list<int> alpha, int beta) {
  KnapsackEquation eq;
  for (int a : alpha) eq.alpha.emplace_back(a);
  eq.beta = beta;
  return eq;
}

KnapsackEquation eq_of(std::initializer_list<int> alpha, int beta,
                       std::initializer_list<int> u) {
  KnapsackEquation eq = eq_of(alpha, beta);
  IntVec box;
  for (int v : u) box.emplace_back(v);
  eq.u = box;
  return eq;
}

// Independent oracle: count lattice points of alpha.x = beta by enumeration.
BigInt brute_count(const KnapsackEquation& eq) {
  const std::size_t n = eq.alpha.size();
  IntVec window(n);
  for (std::size_t j = 0; j < n; ++j) {
    BigInt cap = eq.alpha[j] > 0 ? eq.beta / eq.alpha[j] : BigInt(60);
    window[j] = eq.u ? std::min((*eq.u)[j], cap) : cap;
    if (window[j] < 0) window[j] = 0;
  }
  IntMatrix M(1, n);
  for (std::size_t j = 0; j < n; ++j) M.at(0, j) = eq.alpha[j];
  // Pruning keeps this fast even when the nominal box is huge.
  return BigInt(
      enumerate(M, {eq.beta}, window, 2000000000UL).solutions.size());
}

}  // namespace

TEST_CASE("count_dp fixed cases") {
  CHECK(count_dp(eq_of({5, 4}, 9)).count == 1);
  CHECK(count_dp(eq_of({3, 3}, 6, {2, 2})).count == 3);
  CHECK(count_dp(eq_of({1, 2}, 4)).count == 3);
  CHECK(count_dp(eq_of({1}, 0)).count == 1);
  CHECK(count_dp(eq_of({2}, 1)).count == 0);
}

TEST_CASE("count_dp error cases") {
  CHECK_THROWS_AS(count_dp(eq_of({-1, 2}, 4)), InvalidCoefficients);
  CHECK_THROWS_AS(count_dp(eq_of({1, 2}, -1)), InvalidCoefficients);
  // Unbounded zero coefficient with a reachable target: infinitely many.
  CHECK_THROWS_AS(count_dp(eq_of({0, 2}, 4)), InfiniteCount);
  // Unreachable target is still a finite zero.
  CHECK(count_dp(eq_of({0, 2}, 3)).count == 0);
  // Boxed zero coefficients are fine: a free factor of u+1.
  CHECK(count_dp(eq_of({0, 2}, 4, {3, 2})).count == 4);
}

TEST_CASE("count_dp agrees with brute force") {
  std::mt19937 rng(60322);
  std::uniform_int_distribution<int> adist(0, 6), bdist(0, 60), udist(0, 5);
  for (int iter = 0; iter < 300; ++iter) {
    std::size_t n = 1 + rng() % 5;
    KnapsackEquation eq;
    bool bounded = rng() % 2 == 0;
    IntVec u(n);
    for (std::size_t j = 0; j < n; ++j) {
      int a = adist(rng);
      if (!bounded && a == 0) a = 1;  // keep the count finite
      eq.alpha.emplace_back(a);
      u[j] = udist(rng);
    }
    if (bounded) eq.u = u;
    eq.beta = bdist(rng);
    CHECK(count_dp(eq).count == brute_count(eq));
  }
}

TEST_CASE("count_spectral_bounded fixed cases") {
  CountResult r = count_spectral_bounded(eq_of({3, 3}, 6, {2, 2}));
  CHECK(r.count == 3);
  CHECK(r.method == CountMethod::Spectral);
  CHECK(r.spectral_error_bound < 1e-6);
  CHECK(count_spectral_bounded(eq_of({1}, 7, {5})).count == 0);
  CHECK_THROWS_AS(
      count_spectral_bounded(eq_of({1}, 1, {5}), /*degree_cap=*/2),
      DegreeOverflow);
}

TEST_CASE("count_spectral_bounded matches the DP across random equations") {
  std::mt19937 rng(70211);
  std::uniform_int_distribution<int> adist(0, 6), bdist(0, 60), udist(0, 5);
  for (int iter = 0; iter < 300; ++iter) {
    std::size_t n = 1 + rng() % 5;
    KnapsackEquation eq;
    IntVec u(n);
    for (std::size_t j = 0; j < n; ++j) {
      eq.alpha.emplace_back(adist(rng));
      u[j] = udist(rng);
    }
    eq.u = u;
    eq.beta = bdist(rng);
    CountResult sp = count_spectral_bounded(eq);
    CountResult dp = count_dp(eq);
    REQUIRE(sp.count == dp.count);
    REQUIRE(sp.spectral_error_bound < 1e-6);
  }
}

TEST_CASE("count_spectral_unbounded fixed cases") {
  CountResult r = count_spectral_unbounded(eq_of({5, 4}, 9));
  CHECK(r.count == 1);
  CHECK(r.spectral_error_bound < 0.5);
  CHECK(count_spectral_unbounded(eq_of({1, 2}, 4)).count == 3);
  CHECK(count_spectral_unbounded(eq_of({2}, 1)).count == 0);
  CHECK_THROWS_AS(count_spectral_unbounded(eq_of({0, 2}, 4)),
                  NonPositiveCoefficient);
}

TEST_CASE("count_spectral_unbounded matches the DP across random equations") {
  std::mt19937 rng(81231);
  std::uniform_int_distribution<int> adist(1, 6), bdist(0, 60);
  for (int iter = 0; iter < 300; ++iter) {
    std::size_t n = 1 + rng() % 5;
    KnapsackEquation eq;
    for (std::size_t j = 0; j < n; ++j) eq.alpha.emplace_back(adist(rng));
    eq.beta = bdist(rng);
    CountResult sp = count_spectral_unbounded(eq);
    CountResult dp = count_dp(eq);
    REQUIRE(sp.count == dp.count);
    REQUIRE(sp.spectral_error_bound < 0.25);
  }
}

TEST_CASE("normalization: coefficients of the boxed polynomial sum to the "
          "box volume") {
  std::mt19937 rng(90909);
  std::uniform_int_distribution<int> adist(0, 6), udist(0, 5);
  for (int iter = 0; iter < 200; ++iter) {
    std::size_t n = 1 + rng() % 4;
    IntVec alpha(n), u(n);
    BigInt degree = 0, volume = 1;
    for (std::size_t j = 0; j < n; ++j) {
      alpha[j] = adist(rng);
      u[j] = udist(rng);
      degree += alpha[j] * u[j];
      volume *= u[j] + 1;
    }
    BigInt total = 0;
    for (BigInt beta = 0; beta <= degree; ++beta) {
      KnapsackEquation eq{alpha, beta, u};
      total += count_dp(eq).count;
    }
    REQUIRE(total == volume);
  }
}

TEST_CASE("shift identity: one more copy of item 1, target shifted by a_1") {
  // Splitting on whether x_1 >= 1 gives the knapsack recurrence
  //   gamma_{u_1+1}(beta + a_1) = gamma_{u_1}(beta) + gamma_rest(beta + a_1).
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> adist(1, 6), bdist(0, 40), udist(0, 4);
  for (int iter = 0; iter < 100; ++iter) {
    std::size_t n = 2 + rng() % 3;
    IntVec alpha(n), u(n);
    for (std::size_t j = 0; j < n; ++j) {
      alpha[j] = adist(rng);
      u[j] = udist(rng);
    }
    BigInt beta(bdist(rng));
    KnapsackEquation base{alpha, beta, u};
    IntVec u_plus = u;
    u_plus[0] += 1;
    KnapsackEquation shifted{alpha, beta + alpha[0], u_plus};
    KnapsackEquation rest{IntVec(alpha.begin() + 1, alpha.end()),
                          beta + alpha[0],
                          IntVec(u.begin() + 1, u.end())};
    REQUIRE(count_dp(shifted).count ==
            count_dp(base).count + count_dp(rest).count);
  }
}

TEST_CASE("count_system on the worked example") {
  DiophantineSystem sys;
  sys.A = IntMatrix{{BigInt(1), BigInt(2)}, {BigInt(2), BigInt(1)}};
  sys.b = {BigInt(3), BigInt(3)};

  SECTION("forced paper fixture T = (1 2)") {
    AggregationMatrix agg;
    agg.T = RatMatrix{{BigRat(1), BigRat(2)}};
    agg.kind = AggregationKind::Strong;
    agg.size = 1;
    CountResult r = count_system(sys, agg);
    CHECK(r.count == 1);
  }
  SECTION("pipeline pointed aggregation") {
    AggregationMatrix agg = aggregate_pointed(sys);
    CHECK(count_system(sys, agg).count == 1);
  }
  SECTION("boxed pipeline aggregation") {
    sys.u = IntVec{BigInt(3), BigInt(3)};
    AggregationMatrix agg = aggregate_bounded(sys);
    CHECK(count_system(sys, agg).count == 1);
  }
}

TEST_CASE("count_system equals the enumeration oracle on random boxed "
          "systems") {
  std::mt19937 rng(1123);
  std::uniform_int_distribution<int> cdist(-3, 3), xdist(0, 3);
  int done = 0;
  while (done < 25) {
    std::size_t m = 2, n = 3 + rng() % 2;
    IntMatrix A(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) A.at(i, j) = cdist(rng);
    if (rank(A) < m) continue;
    DiophantineSystem sys;
    sys.A = A;
    IntVec u(n, BigInt(3)), x0(n);
    for (auto& v : x0) v = xdist(rng);
    sys.u = u;
    sys.b = multiply(A, x0);
    AggregationMatrix agg = aggregate_bounded(sys);
    CountResult counted = count_system(sys, agg);
    SolutionSet sols = enumerate(sys.A, sys.b, u);
    REQUIRE(counted.count == BigInt(sols.solutions.size()));
    ++done;
  }
}

TEST_CASE("build_knapsack clears denominators and flips signs") {
  IntMatrix A{{BigInt(1), BigInt(-2)}};
  IntVec b{BigInt(3)};
  RatMatrix T{{make_rat(BigInt(1), BigInt(2))}};
  SECTION("unbounded keeps signs") {
    KnapsackBuild built = build_knapsack(T, A, b, std::nullopt);
    CHECK(built.eq.alpha == (IntVec{BigInt(1), BigInt(-2)}));
    CHECK(built.eq.beta == 3);
  }
  SECTION("boxed flips the negative coefficient") {
    IntVec u{BigInt(4), BigInt(4)};
    KnapsackBuild built = build_knapsack(T, A, b, u);
    CHECK(built.eq.alpha == (IntVec{BigInt(1), BigInt(2)}));
    CHECK(built.eq.beta == 3 + 2 * 4);
    CHECK_FALSE(built.negative_rhs);
  }
}
