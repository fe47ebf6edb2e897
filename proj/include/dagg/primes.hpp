#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "dagg/rational.hpp"

namespace dagg {

/// Moduli q_i = p_i^{a_i}, pairwise coprime and all strictly above the
/// threshold, built from the first primes with minimal exponents.
struct CoprimeSet {
  BigInt threshold;
  std::vector<BigInt> moduli;
  std::vector<BigInt> primes;
  std::vector<unsigned> exponents;
};

/// Sieve bound for the first `count` primes: n(log n + log log n) for n >= 6,
/// clamped below by 13 (which covers p_6) where the estimate is invalid.
inline std::uint64_t sieve_bound(std::size_t count) {
  if (count < 6) return 13;
  double x = static_cast<double>(count);
  double est = x * (std::log(x) + std::log(std::log(x)));
  std::uint64_t k = static_cast<std::uint64_t>(std::ceil(est));
  return k < 13 ? 13 : k;
}

/// First `count` primes by the sieve of Eratosthenes, extending the bound
/// if the estimate ever falls short.
inline std::vector<BigInt> sieve_primes(std::size_t count) {
  if (count < 1) throw Error("sieve_primes: count must be >= 1");
  std::uint64_t limit = sieve_bound(count);
  for (;;) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<BigInt> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      primes.emplace_back(static_cast<unsigned long>(i));
      if (primes.size() == count) return primes;
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    limit *= 2;
  }
}

/// `count` pairwise-coprime moduli strictly greater than C: the i-th modulus
/// is the smallest power of the i-th prime exceeding C. Deterministic.
inline CoprimeSet coprime_above(std::size_t count, const BigInt& C) {
  if (count < 1) throw Error("coprime_above: count must be >= 1");
  if (C < 1) throw Error("coprime_above: threshold must be >= 1");
  CoprimeSet set;
  set.threshold = C;
  set.primes = sieve_primes(count);
  set.moduli.reserve(count);
  set.exponents.reserve(count);
  for (const auto& p : set.primes) {
    BigInt q = p;
    unsigned a = 1;
    while (q <= C) {
      q *= p;
      ++a;
    }
    set.moduli.push_back(q);
    set.exponents.push_back(a);
  }
  return set;
}

}  // namespace dagg
