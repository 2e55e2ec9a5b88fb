#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace tgerm {

/// Exact rational number. Every invariant in this library is a fraction with
/// small denominator; no value is ever rounded through a float.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

inline BigInt numerator_of(const Rational& r) {
  return boost::multiprecision::numerator(r);
}

inline BigInt denominator_of(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

inline bool is_integer(const Rational& r) { return denominator_of(r) == 1; }

/// "p/q", or "p" when q == 1.
inline std::string to_string(const Rational& r) {
  if (is_integer(r)) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

/// Ceiling of a rational.
inline BigInt ceil_of(const Rational& r) {
  BigInt n = numerator_of(r);
  BigInt d = denominator_of(r);
  BigInt q = n / d;  // truncates towards zero
  if (q * d != n && n > 0) q += 1;
  return q;
}

}  // namespace tgerm
