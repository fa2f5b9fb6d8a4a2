#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

#include "uniprior/errors.hpp"
#include "uniprior/log_prob.hpp"

namespace uniprior {

/*
 * Exact arithmetic backend. cpp_rational keeps a canonical form with
 * positive denominator, which is exactly the invariant we need.
 */
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long long num, long long den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

/* Accepts "p/q" or a bare integer; used by config parsing and tests. */
Rational parse_rational(std::string_view text);

std::string format_rational(const Rational& r);

inline double to_double(const Rational& r) { return static_cast<double>(r); }

inline bool is_probability(const Rational& r) { return r >= 0 && r <= 1; }

inline LogProb to_log_prob(const Rational& r) {
  if (r < 0) throw ValidationError("negative value where probability expected");
  if (r == 0) return LogProb::zero();
  /* log via numerator/denominator separately; fine for desk-scale magnitudes */
  double ln = std::log(static_cast<double>(boost::multiprecision::numerator(r))) -
              std::log(static_cast<double>(boost::multiprecision::denominator(r)));
  return LogProb::from_log(ln);
}

/* 2^-bits as an exact dyadic rational. */
inline Rational dyadic(unsigned bits) {
  BigInt den = BigInt(1) << bits;
  return Rational(BigInt(1), den);
}

Rational rational_pow(const Rational& base, unsigned exp);

}  // namespace uniprior
