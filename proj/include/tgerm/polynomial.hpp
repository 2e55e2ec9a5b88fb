#pragma once

// Sparse polynomials in x, y, z, t, u, v with cyclotomic coefficients, and a
// small recursive-descent parser for them.

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "tgerm/cyclotomic.hpp"

namespace tgerm {

inline constexpr int kPolyVars = 6;
using Exponents = std::array<int, kPolyVars>;

/// "x", "y", "z", "t", "u", "v".
const std::array<std::string, kPolyVars>& poly_var_names();
/// Index of a variable name, -1 if unknown.
int poly_var_index(char name);

class Poly {
 public:
  Poly() = default;
  static Poly constant(const Cyclotomic& c);
  static Poly variable(int index);
  static Poly monomial(const Exponents& e, const Cyclotomic& c);

  const std::map<Exponents, Cyclotomic>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero if absent).
  Cyclotomic constant_term() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly scaled(const Cyclotomic& c) const;
  Poly pow(int k) const;

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

  /// Replaces every variable by the given polynomial.
  Poly substitute(const std::array<Poly, kPolyVars>& images) const;
  /// Sets the listed variables to zero.
  Poly with_zero(std::initializer_list<int> vars) const;
  Poly derivative(int var) const;
  Cyclotomic evaluate(const std::array<Cyclotomic, kPolyVars>& point) const;

  /// Total degree in x, y, z, t; -1 for zero; throws if not homogeneous there.
  int projective_degree() const;
  bool is_projectively_homogeneous() const;

  /// Parser-compatible text, e.g. "x*y - u*t^2".
  std::string to_string() const;

 private:
  void add_term(const Exponents& e, const Cyclotomic& c);
  std::map<Exponents, Cyclotomic> terms_;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grammar: sums and products (explicit "*" or juxtaposition "xy"),
/// division by constants, unary minus, "^" with an integer exponent
/// (negative only on constants), parenthesised integer expressions in
/// exponents over the named parameters, rational numbers, the variables,
/// and "e" for the primitive n-th root of unity.
Poly parse_poly(const std::string& text, int n, const std::map<char, std::int64_t>& params = {});

}  // namespace tgerm
