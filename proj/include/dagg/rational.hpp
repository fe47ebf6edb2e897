#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "dagg/errors.hpp"

namespace dagg {

// Exact scalars. All arithmetic in the library is exact rational except the
// spectral evaluators in counting.hpp, which are explicitly floating point.
using BigInt = mpz_class;
using BigRat = mpq_class;

using IntVec = std::vector<BigInt>;
using RatVec = std::vector<BigRat>;

/// Rational from a numerator/denominator pair, reduced to lowest terms with
/// positive denominator. mpq_class does not canonicalize on its own, so every
/// two-argument construction must go through here.
inline BigRat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error("make_rat: zero denominator");
  BigRat r(num, den);
  r.canonicalize();
  return r;
}

inline BigRat make_rat(const BigInt& num) { return BigRat(num); }

inline bool is_integral(const BigRat& r) { return r.get_den() == 1; }

/// Numerator of an integral rational; throws if a denominator survives.
inline BigInt to_int(const BigRat& r) {
  if (!is_integral(r)) throw Error("to_int: value is not integral");
  return r.get_num();
}

inline BigInt rat_floor(const BigRat& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline BigInt rat_ceil(const BigRat& r) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline BigInt int_gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline BigInt int_lcm(const BigInt& a, const BigInt& b) {
  BigInt l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// gcd of all entries (nonnegative; 0 for an all-zero vector).
inline BigInt content(const IntVec& v) {
  BigInt g = 0;
  for (const auto& x : v) g = int_gcd(g, x);
  return g;
}

inline BigInt lcm_of_denominators(const RatVec& v) {
  BigInt l = 1;
  for (const auto& x : v) l = int_lcm(l, x.get_den());
  return l;
}

inline BigInt linf_norm(const IntVec& v) {
  BigInt m = 0;
  for (const auto& x : v)
    if (abs(x) > m) m = abs(x);
  return m;
}

inline BigInt l1_norm(const IntVec& v) {
  BigInt s = 0;
  for (const auto& x : v) s += abs(x);
  return s;
}

inline BigRat linf_norm(const RatVec& v) {
  BigRat m = 0;
  for (const auto& x : v)
    if (abs(x) > m) m = abs(x);
  return m;
}

inline RatVec to_rational(const IntVec& v) {
  RatVec r;
  r.reserve(v.size());
  for (const auto& x : v) r.emplace_back(x);
  return r;
}

/// Serialize as "p" or "p/q"; the inverse of parse_rat.
inline std::string rat_to_string(const BigRat& r) {
  if (is_integral(r)) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline BigRat parse_rat(const std::string& s) {
  if (s.empty()) throw ParseError("parse_rat: empty string");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return BigRat(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    return make_rat(num, den);
  } catch (const std::invalid_argument&) {
    throw ParseError("parse_rat: bad rational '" + s + "'");
  }
}

}  // namespace dagg
