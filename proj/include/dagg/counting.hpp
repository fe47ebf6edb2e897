#pragma once

#include <quadmath.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dagg/aggregation.hpp"

namespace dagg {

/// Single knapsack equation alpha . x = beta over nonnegative integers,
/// optionally boxed. Produced from an aggregation row by clearing
/// denominators; in the boxed case negative coefficients are removed by the
/// substitution x_j <- u_j - x_j beforehand.
struct KnapsackEquation {
  IntVec alpha;
  BigInt beta;
  std::optional<IntVec> u;
};

enum class CountMethod { DP, Spectral };

struct CountResult {
  BigInt count;
  CountMethod method = CountMethod::DP;
  double spectral_error_bound = 0.0;  // Spectral only
  long samples_used = 0;              // Spectral only
};

namespace detail {

constexpr std::size_t kMaxDpDegree = std::size_t(1) << 25;

inline std::size_t beta_index(const BigInt& beta) {
  if (!beta.fits_ulong_p() || beta.get_ui() > kMaxDpDegree)
    throw DegreeOverflow("count_dp: right-hand side too large");
  return static_cast<std::size_t>(beta.get_ui());
}

template <class Counter>
Counter counter_from(const BigInt& v);

template <>
inline std::uint64_t counter_from<std::uint64_t>(const BigInt& v) {
  return v.get_ui();
}

template <>
inline BigInt counter_from<BigInt>(const BigInt& v) {
  return v;
}

/// Boxed coefficient extraction: dp becomes the coefficient list of
/// prod_l (1 + X^{a_l} + ... + X^{u_l a_l}) up to degree B. Each factor is
/// applied in place with a sliding window per residue class mod a_l, so the
/// pass is O(B) regardless of u_l.
template <class Counter>
std::vector<Counter> bounded_dp(const IntVec& alpha, const IntVec& u,
                                std::size_t B) {
  std::vector<Counter> dp(B + 1, Counter(0));
  dp[0] = Counter(1);
  Counter scalar(1);
  for (std::size_t l = 0; l < alpha.size(); ++l) {
    if (alpha[l] == 0) {
      scalar *= counter_from<Counter>(u[l] + 1);
      continue;
    }
    if (!alpha[l].fits_ulong_p() || alpha[l].get_ui() > B) continue;
    const std::size_t a = static_cast<std::size_t>(alpha[l].get_ui());
    // Number of summands per window: u_l + 1, clipped to what fits in B.
    BigInt reps_big = u[l] + 1;
    const std::size_t max_reps = B / a + 1;
    const std::size_t reps =
        reps_big > BigInt(static_cast<unsigned long>(max_reps))
            ? max_reps
            : static_cast<std::size_t>(reps_big.get_ui());
    std::vector<Counter> ring(reps, Counter(0));
    for (std::size_t s = 0; s < a && s <= B; ++s) {
      Counter window(0);
      std::size_t filled = 0;
      for (std::size_t d = s; d <= B; d += a) {
        Counter old = dp[d];
        window += old;
        if (filled >= reps) window -= ring[d / a % reps];
        ring[d / a % reps] = old;
        dp[d] = window;
        ++filled;
      }
    }
  }
  if (scalar != Counter(1))
    for (auto& x : dp) x *= scalar;
  return dp;
}

template <class Counter>
std::vector<Counter> unbounded_dp(const IntVec& alpha, std::size_t B) {
  std::vector<Counter> dp(B + 1, Counter(0));
  dp[0] = Counter(1);
  for (const auto& al : alpha) {
    if (!al.fits_ulong_p() || al.get_ui() > B) continue;
    const std::size_t a = static_cast<std::size_t>(al.get_ui());
    for (std::size_t d = a; d <= B; ++d) dp[d] += dp[d - a];
  }
  return dp;
}

inline BigInt box_volume(const IntVec& u) {
  BigInt v = 1;
  for (const auto& x : u) v *= x + 1;
  return v;
}

}  // namespace detail

/// Exact solution count by knapsack dynamic programming; this is the
/// authoritative counter the spectral evaluators are checked against.
/// Counters run in uint64 when the a-priori count bound allows, in big
/// integers otherwise.
inline CountResult count_dp(const KnapsackEquation& eq) {
  for (const auto& a : eq.alpha)
    if (a < 0) throw InvalidCoefficients("count_dp: negative coefficient");
  if (eq.beta < 0)
    throw InvalidCoefficients("count_dp: negative right-hand side");
  const std::size_t B = detail::beta_index(eq.beta);

  if (eq.u) {
    if (eq.u->size() != eq.alpha.size())
      throw DimensionMismatch("count_dp: bounds length");
    BigInt count;
    if (detail::box_volume(*eq.u).fits_ulong_p()) {
      auto dp = detail::bounded_dp<std::uint64_t>(eq.alpha, *eq.u, B);
      count = BigInt(static_cast<unsigned long>(dp[B]));
    } else {
      auto dp = detail::bounded_dp<BigInt>(eq.alpha, *eq.u, B);
      count = dp[B];
    }
    return {count, CountMethod::DP, 0.0, 0};
  }

  IntVec positive;
  bool has_zero = false;
  for (const auto& a : eq.alpha) {
    if (a == 0)
      has_zero = true;
    else
      positive.push_back(a);
  }
  // Compositions bound (beta+1)^(n-1) decides the counter width.
  BigInt bound = 1;
  for (std::size_t i = 1; i < positive.size(); ++i) bound *= eq.beta + 1;
  BigInt count;
  if (bound.fits_ulong_p()) {
    auto dp = detail::unbounded_dp<std::uint64_t>(positive, B);
    count = BigInt(static_cast<unsigned long>(dp[B]));
  } else {
    auto dp = detail::unbounded_dp<BigInt>(positive, B);
    count = dp[B];
  }
  if (has_zero && count > 0)
    throw InfiniteCount(
        "count_dp: a zero coefficient makes the count infinite");
  return {count, CountMethod::DP, 0.0, 0};
}

namespace detail {

/// exp(2*pi*i*(num mod den)/den), with the reduction done exactly on big
/// integers first so huge frequencies lose no precision.
inline std::complex<double> unit_root(const BigInt& num, long den) {
  BigInt r;
  BigInt d(den);
  mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), d.get_mpz_t());
  double angle = 2.0 * M_PI * r.get_d() / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace detail

constexpr std::size_t kDefaultSpectralDegreeCap = std::size_t(1) << 22;

/// Boxed count via coefficient extraction from the generating trigonometric
/// polynomial: the polynomial has degree D = sum alpha_l u_l, so a uniform
/// (D+1)-point sample inverts it exactly and only floating-point noise
/// remains. Each factor is evaluated as the partial geometric sum
/// 1 + e^{iat} + ... + e^{iaut}, which has no singular points to dodge.
inline CountResult count_spectral_bounded(
    const KnapsackEquation& eq,
    std::size_t degree_cap = kDefaultSpectralDegreeCap) {
  if (!eq.u) throw InvalidCoefficients("count_spectral_bounded: no bounds");
  if (eq.u->size() != eq.alpha.size())
    throw DimensionMismatch("count_spectral_bounded: bounds length");
  for (const auto& a : eq.alpha)
    if (a < 0)
      throw InvalidCoefficients(
          "count_spectral_bounded: negative coefficient");

  BigInt degree = 0;
  for (std::size_t l = 0; l < eq.alpha.size(); ++l)
    degree += eq.alpha[l] * (*eq.u)[l];
  if (degree > BigInt(static_cast<unsigned long>(degree_cap)))
    throw DegreeOverflow(
        "count_spectral_bounded: polynomial degree too large");
  if (eq.beta < 0 || eq.beta > degree)
    return {BigInt(0), CountMethod::Spectral, 0.0, 0};

  const long N = static_cast<long>(degree.get_ui()) + 1;
  std::complex<double> acc(0.0, 0.0);
  for (long k = 0; k < N; ++k) {
    std::complex<double> f(1.0, 0.0);
    for (std::size_t l = 0; l < eq.alpha.size(); ++l) {
      if (eq.alpha[l] == 0) {
        f *= ((*eq.u)[l].get_d() + 1.0);
        continue;
      }
      std::complex<double> step = detail::unit_root(eq.alpha[l] * k, N);
      std::complex<double> term(1.0, 0.0), sum(0.0, 0.0);
      unsigned long reps = (*eq.u)[l].get_ui();
      for (unsigned long j = 0; j <= reps; ++j) {
        sum += term;
        term *= step;
      }
      f *= sum;
    }
    acc += f * detail::unit_root(-eq.beta * k, N);
  }
  acc /= static_cast<double>(N);
  double rounded = std::round(acc.real());
  double err = std::abs(acc - std::complex<double>(rounded, 0.0));
  if (!(err < 0.5))
    throw DegreeOverflow("count_spectral_bounded: sample noise too large");
  BigInt count(static_cast<long>(rounded));
  return {count, CountMethod::Spectral, err, N};
}

namespace detail {

struct QComplex {
  __float128 re = 0, im = 0;
};

inline QComplex qmul(const QComplex& a, const QComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline QComplex qdiv_real_by(const __float128& num, const QComplex& den) {
  __float128 n2 = den.re * den.re + den.im * den.im;
  return {num * den.re / n2, -num * den.im / n2};
}

inline __float128 qpi() { return acosq((__float128)-1); }

inline QComplex qroot(const BigInt& num, long den) {
  BigInt r;
  BigInt d(den);
  mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), d.get_mpz_t());
  __float128 angle =
      (__float128)2 * qpi() * (__float128)r.get_d() / (__float128)den;
  return {cosq(angle), sinq(angle)};
}

}  // namespace detail

/// Unbounded count from the radius-1/2 evaluation of the generating series:
/// an N-point sample of g(t) = prod_l 2^{a_l} / (2^{a_l} - e^{i a_l t})
/// recovers sigma_beta / 2^beta up to the aliasing tail
/// sum_{t>=1} sigma_{beta+tN} / 2^{beta+tN}. N is doubled until the tail
/// bound (via sigma_j <= (j+1)^{n-1}) rescaled by 2^beta drops below 0.25
/// and two successive estimates round identically. The 2^beta rescaling
/// amplifies rounding error, so the accumulation runs in quad precision.
inline CountResult count_spectral_unbounded(const KnapsackEquation& eq) {
  if (eq.u) throw InvalidCoefficients("count_spectral_unbounded: has bounds");
  const std::size_t n = eq.alpha.size();
  for (const auto& a : eq.alpha)
    if (a <= 0)
      throw NonPositiveCoefficient(
          "count_spectral_unbounded: coefficients must be positive");
  if (eq.beta < 0) return {BigInt(0), CountMethod::Spectral, 0.0, 0};

  if (!eq.beta.fits_slong_p() || eq.beta.get_si() > 8192)
    throw DegreeOverflow("count_spectral_unbounded: beta too large");
  const long beta = eq.beta.get_si();
  for (const auto& a : eq.alpha)
    if (!a.fits_slong_p() || a.get_si() > 8192)
      throw DegreeOverflow("count_spectral_unbounded: coefficient too large");

  const __float128 two_beta = powq((__float128)2, (__float128)beta);
  // Rounding-noise allowance after the 2^beta rescaling; quad precision has
  // a 113-bit mantissa, so machine epsilon is 2^-112.
  const __float128 eps_q = ldexpq((__float128)1, -112);
  const double fp_margin =
      (double)(two_beta * powq((__float128)2, (__float128)n) *
               (__float128)(8.0 * (double)(n + 2)) * eps_q);
  if (fp_margin >= 0.25)
    throw DegreeOverflow("count_spectral_unbounded: precision insufficient");

  long N = 16;
  while (N <= beta) N *= 2;
  bool have_prev = false;
  long long prev_round = 0;
  for (; N <= (1L << 20); N *= 2) {
    detail::QComplex acc;
    for (long k = 0; k < N; ++k) {
      detail::QComplex g{1, 0};
      for (std::size_t l = 0; l < n; ++l) {
        __float128 pw =
            powq((__float128)2, (__float128)eq.alpha[l].get_si());
        detail::QComplex e = detail::qroot(eq.alpha[l] * k, N);
        detail::QComplex den{pw - e.re, -e.im};
        g = detail::qmul(g, detail::qdiv_real_by(pw, den));
      }
      detail::QComplex term = detail::qmul(g, detail::qroot(-eq.beta * k, N));
      acc.re += term.re;
      acc.im += term.im;
    }
    acc.re /= (__float128)N;
    acc.im /= (__float128)N;

    // Aliasing tail rescaled by 2^beta: sum_{t>=1} (beta+tN+1)^{n-1} / 2^{tN}.
    double alias = 0.0;
    for (long t = 1; t <= 64; ++t) {
      double logterm = (n >= 1 ? (double)(n - 1) : 0.0) *
                           std::log2((double)(beta + t * N + 1)) -
                       (double)(t * N);
      if (logterm < -900) break;
      alias += std::exp2(logterm);
    }

    __float128 estimate = two_beta * acc.re;
    long long rounded = llroundq(estimate);
    double err = (double)fabsq(estimate - (__float128)rounded) + alias +
                 fp_margin + (double)(two_beta * fabsq(acc.im));
    if (alias + fp_margin < 0.25 && have_prev && rounded == prev_round) {
      if (!(err < 0.5))
        throw DegreeOverflow("count_spectral_unbounded: error bound >= 0.5");
      return {BigInt(static_cast<long>(rounded)), CountMethod::Spectral, err,
              N};
    }
    have_prev = true;
    prev_round = rounded;
  }
  throw DegreeOverflow("count_spectral_unbounded: did not stabilize");
}

/// Knapsack equation assembled from a single aggregation row, together with
/// a flag for the degenerate outcome that the boxed right-hand side went
/// negative (the equation, hence the system, has no solutions).
struct KnapsackBuild {
  KnapsackEquation eq;
  bool negative_rhs = false;
};

inline KnapsackBuild build_knapsack(const RatMatrix& T, const IntMatrix& A,
                                    const IntVec& b,
                                    const std::optional<IntVec>& u) {
  if (T.rows() != 1 || T.cols() != A.rows())
    throw DimensionMismatch("build_knapsack: T must be a single row");
  const std::size_t n = A.cols();
  RatVec ta(n, BigRat(0));
  BigRat tb = 0;
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j)
      ta[j] += T.at(0, i) * BigRat(A.at(i, j));
    tb += T.at(0, i) * BigRat(b[i]);
  }
  BigInt d = lcm_of_denominators(ta);
  d = int_lcm(d, tb.get_den());

  KnapsackBuild out;
  out.eq.alpha.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    out.eq.alpha[j] = to_int(ta[j] * BigRat(d));
  out.eq.beta = to_int(tb * BigRat(d));
  out.eq.u = u;
  if (u) {
    for (std::size_t j = 0; j < n; ++j) {
      if (out.eq.alpha[j] >= 0) continue;
      out.eq.beta -= out.eq.alpha[j] * (*u)[j];
      out.eq.alpha[j] = -out.eq.alpha[j];
    }
  }
  out.negative_rhs = out.eq.beta < 0;
  return out;
}

/// Count the solutions of a system through a size-one strong aggregation.
/// The DP count is authoritative; the spectral evaluators run as a
/// cross-check whenever they are inside their numeric envelope.
inline CountResult count_system(const DiophantineSystem& sys,
                                const AggregationMatrix& agg) {
  if (agg.kind != AggregationKind::Strong || agg.size != 1)
    throw Error("count_system: requires a strong aggregation of size one");
  KnapsackBuild built = build_knapsack(agg.T, sys.A, sys.b, sys.u);
  if (built.negative_rhs) return {BigInt(0), CountMethod::DP, 0.0, 0};
  CountResult dp = count_dp(built.eq);

  if (built.eq.u) {
    BigInt degree = 0;
    for (std::size_t l = 0; l < built.eq.alpha.size(); ++l)
      degree += built.eq.alpha[l] * (*built.eq.u)[l];
    if (degree <= (BigInt(1) << 18)) {
      CountResult sp = count_spectral_bounded(built.eq);
      if (sp.count != dp.count)
        throw Error("count_system: spectral check disagrees with DP");
    }
  } else if (built.eq.beta <= 96) {
    CountResult sp = count_spectral_unbounded(built.eq);
    if (sp.count != dp.count)
      throw Error("count_system: spectral check disagrees with DP");
  }
  return dp;
}

}  // namespace dagg
