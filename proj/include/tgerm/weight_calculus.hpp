#pragma once

// Residue/weight and vanishing-order arithmetic for monomials in the four
// semi-invariant chart coordinates x1..x4 of a canonical cover, plus bounded
// enumeration of monomials by weight class.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tgerm {

/// Element of Z/modulus, always stored in [0, modulus).
class Residue {
 public:
  Residue(std::int64_t value, std::int64_t modulus);

  std::int64_t value() const { return value_; }
  std::int64_t modulus() const { return modulus_; }

  Residue operator+(const Residue& o) const;
  Residue operator-(const Residue& o) const;
  Residue operator-() const;
  Residue operator*(std::int64_t k) const;

  bool operator==(const Residue&) const = default;

 private:
  void require_same_modulus(const Residue& o) const;

  std::int64_t value_;
  std::int64_t modulus_;
};

/// Reduce v into [0, m).
std::int64_t mod_floor(std::int64_t v, std::int64_t m);

/// Exponent vector in x1..x4. The all-zero vector is the unit monomial.
class Monomial {
 public:
  using Exponents = std::array<int, 4>;

  Monomial() : exps_{0, 0, 0, 0} {}
  explicit Monomial(Exponents e);
  Monomial(int e1, int e2, int e3, int e4) : Monomial(Exponents{e1, e2, e3, e4}) {}

  static Monomial unit() { return Monomial(); }
  static Monomial variable(int index);  // 0-based: x1 is variable(0)

  const Exponents& exponents() const { return exps_; }
  int operator[](int i) const { return exps_[static_cast<std::size_t>(i)]; }
  bool is_unit() const { return exps_ == Exponents{0, 0, 0, 0}; }
  int total_degree() const;

  Monomial operator*(const Monomial& o) const;
  Monomial pow(int n) const;
  bool divides(const Monomial& o) const;
  /// o / *this; requires divides(o).
  Monomial quotient_of(const Monomial& o) const;

  bool operator==(const Monomial&) const = default;
  /// Plain lexicographic comparison of exponent vectors (for containers).
  auto operator<=>(const Monomial&) const = default;

  /// "x1^2*x3", "1" for the unit.
  std::string to_string() const;

 private:
  Exponents exps_;
};

/// Lex term order with x1 > x2 > x3 > x4: true if a comes before b when the
/// leading (x1-heaviest) term is listed first. Used as the witness tie-break.
bool lex_leading_first(const Monomial& a, const Monomial& b);

/// Bit set of allowed chart variables (bit i = x_{i+1}).
using VarSet = std::uint8_t;
inline constexpr VarSet kAllVars = 0b1111;
inline constexpr VarSet kFirstThreeVars = 0b0111;

/// Weights and t-orders of the chart coordinates. Orders are measured in
/// t-units on one component of the covering curve and are always integral.
struct WeightedChart {
  std::int64_t modulus = 1;            // index m
  std::array<std::int64_t, 4> weights{};  // wt(x_i) mod m
  std::array<std::int64_t, 4> orders{};   // ord(x_i) >= 1
};

Residue weight_of(const Monomial& mono, const WeightedChart& chart);
std::int64_t ord_of(const Monomial& mono, const WeightedChart& chart);

/// Orders monomials by (order, lex term order).
struct OrderThenLex {
  const WeightedChart* chart;
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// All non-unit monomials in the allowed variables with weight == target and
/// order <= ord_cap, sorted by (order, lex term order). Brute force over the
/// exponent box.
std::vector<Monomial> enumerate_by_weight(const WeightedChart& chart,
                                          const Residue& target,
                                          std::int64_t ord_cap,
                                          VarSet vars = kAllVars);

struct WeightMinimum {
  std::int64_t order;
  Monomial witness;
};

struct MinOrdOptions {
  VarSet vars = kAllVars;
  bool include_unit = false;
};

/// Minimum order in a weight class with its lex-leading witness, or nullopt
/// when the class is exhausted below ord_cap. Dynamic programme over
/// (order, weight) reachability; independent of enumerate_by_weight.
std::optional<WeightMinimum> min_ord_of_weight(const WeightedChart& chart,
                                               const Residue& target,
                                               std::int64_t ord_cap,
                                               MinOrdOptions opts = {});

/// True iff no proper non-unit invariant monomial divides `mono`.
/// Throws std::invalid_argument when `mono` is not invariant.
bool is_simple_invariant(const Monomial& mono, const WeightedChart& chart);

/// Does psi - x4^n vanish on every component of the covering curve
/// x_i = chi(g)^{wt x_i} t^{ord x_i}? Requires psi free of x4.
bool vanishes_on_curve(const Monomial& psi, int power, const WeightedChart& chart);

/// Default search cap for weight-class minima: 6 * mbar.
inline std::int64_t default_ord_cap(std::int64_t mbar) { return 6 * mbar; }

}  // namespace tgerm
