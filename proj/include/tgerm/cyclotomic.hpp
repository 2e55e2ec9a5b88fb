#pragma once

// Exact arithmetic in Q(e), e a primitive n-th root of unity, with elements
// stored as rational polynomials in e reduced modulo the n-th cyclotomic
// polynomial.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tgerm/rational.hpp"

namespace tgerm {

/// Coefficients (constant term first) of the n-th cyclotomic polynomial.
const std::vector<Rational>& cyclotomic_polynomial(int n);

class Cyclotomic {
 public:
  /// Zero of Q (n = 1). Order-1 values combine with any field.
  Cyclotomic() : Cyclotomic(1) {}
  explicit Cyclotomic(int n, const Rational& r = Rational(0));

  /// e^k, k may be negative.
  static Cyclotomic root(int n, std::int64_t k);
  /// Reduces an arbitrary polynomial in e (constant term first).
  static Cyclotomic from_poly(int n, std::vector<Rational> coeffs);

  int order() const { return n_; }
  const std::vector<Rational>& coefficients() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Requires is_rational().
  Rational rational_value() const;

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic operator/(const Cyclotomic& o) const;
  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  /// Throws std::domain_error for zero.
  Cyclotomic inverse() const;
  Cyclotomic pow(std::int64_t k) const;

  bool operator==(const Cyclotomic& o) const;

  /// (r, k) with *this == r * e^k, r > 0 when the field contains -1 as a
  /// power of e, k in (-n/2, n/2]; nullopt for anything else.
  std::optional<std::pair<Rational, std::int64_t>> as_root_multiple() const;

  /// A square root inside the field when *this is a rational square times
  /// a root of unity with a square root among the powers of e.
  std::optional<Cyclotomic> sqrt() const;

  std::complex<double> evaluate() const;

  /// "e^-2", "-3/2*e", "1 + e - e^3".
  std::string to_string() const;

  /// Re-embed into Q(e_n); only from order 1 or the same order.
  Cyclotomic in_field(int n) const;

 private:
  void reduce();

  int n_;
  std::vector<Rational> c_;
};

}  // namespace tgerm
