#pragma once

// The normalized local datum of a terminal point along a curve, validation of
// the normalized-coordinate axioms, and the structural predicates a conic
// bundle germ with one non-Gorenstein point must satisfy.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tgerm/rational.hpp"
#include "tgerm/weight_calculus.hpp"

namespace tgerm {

enum class Series { Main, Exceptional };

std::string to_string(Series s);

/// The chart equation is psi0 - x4^power with psi0 a monomial in x1, x2, x3.
struct CyclicBinomial {
  Monomial psi0;
  int power = 1;
  bool operator==(const CyclicBinomial&) const = default;
};
struct GeneralHypersurface {
  bool operator==(const GeneralHypersurface&) const = default;
};
/// The threefold itself is smooth at the point.
struct SmoothMarker {
  bool operator==(const SmoothMarker&) const = default;
};
using Equation = std::variant<CyclicBinomial, GeneralHypersurface, SmoothMarker>;

class GermError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NormalizedGerm {
 public:
  using Quad = std::array<std::int64_t, 4>;

  /// Structural checks only (positivity, m = mbar*d). Weights are reduced
  /// mod m. Axioms are checked by validate().
  NormalizedGerm(std::int64_t mbar, std::int64_t d, Series series, Quad weights, Quad orders,
                 Equation equation = GeneralHypersurface{});

  std::int64_t mbar() const { return mbar_; }
  std::int64_t d() const { return d_; }
  std::int64_t m() const { return chart_.modulus; }
  Series series() const { return series_; }
  const Quad& weights() const { return chart_.weights; }
  const Quad& orders() const { return chart_.orders; }
  Residue weight(int i) const { return Residue(chart_.weights[static_cast<std::size_t>(i)], m()); }
  std::int64_t order(int i) const { return chart_.orders[static_cast<std::size_t>(i)]; }
  const Equation& equation() const { return equation_; }
  const WeightedChart& chart() const { return chart_; }

  bool is_cyclic_binomial() const { return std::holds_alternative<CyclicBinomial>(equation_); }
  bool is_smooth_marker() const { return std::holds_alternative<SmoothMarker>(equation_); }

  NormalizedGerm with_equation(Equation eq) const;
  NormalizedGerm with_data(Quad weights, Quad orders) const;

  /// Same mbar, d, series, weights and orders (equation ignored).
  bool same_data(const NormalizedGerm& o) const;
  bool operator==(const NormalizedGerm& o) const;

  /// "m=8 mbar=4 d=2 main wt(1,7,5,0) ord(1,3,5,4)"
  std::string describe() const;

 private:
  std::int64_t mbar_;
  std::int64_t d_;
  Series series_;
  WeightedChart chart_;
  Equation equation_;
};

struct AxiomCheck {
  std::string axiom;  // "i".."v"
  bool pass = true;
  std::string detail;
  std::optional<Monomial> witness;
};

struct ValidationReport {
  std::vector<AxiomCheck> axioms;
  bool normalized() const;
  /// First failing axiom, if any.
  const AxiomCheck* first_failure() const;
};

/// Checks the normalized-coordinate axioms: (i) series weight pattern,
/// (ii) ord == wt mod mbar, (iii) curve parametrization (implicit in the
/// datum), (iv) no cheaper semi-invariant in any coordinate's weight class,
/// (v) an invariant of order exactly mbar. Decided exactly: (iv) only needs
/// monomials of order below the coordinate's own order.
ValidationReport validate(const NormalizedGerm& germ);

struct PredicateReport {
  bool d_even = false;
  bool two_mbar_divisible_by_d = false;
  bool mbar_at_least_half_d = false;
  bool a3_congruent_one = false;
  Rational anticanonical_degree;  // (-K_X . C) = 1/mbar
  bool all_pass() const {
    return d_even && two_mbar_divisible_by_d && mbar_at_least_half_d && a3_congruent_one;
  }
  /// Name of the first failing predicate, empty if none.
  std::string first_failure() const;
};

PredicateReport structural_predicates(const NormalizedGerm& germ);

enum class ElephantVerdict { GoodElephant, ContainsCurve };
std::string to_string(ElephantVerdict v);

/// Good iff ord(x3) < mbar.
ElephantVerdict general_elephant_test(const NormalizedGerm& germ);

/// A three-coordinate cyclic quotient chart 1/m(w1,w2,w3) with t-orders.
struct QuotientChart {
  std::int64_t m;
  std::array<std::int64_t, 3> weights;
  std::array<std::int64_t, 3> orders;
};

/// Appends x4 := the lex-leading weight-0 monomial of order mbar in x1..x3 and
/// the equation psi0 - x4. When mbar is not given it is the largest divisor
/// of m compatible with ord == wt mod mbar. Throws GermError when no weight-0
/// monomial has minimal order exactly mbar.
NormalizedGerm extend_to_chart(const QuotientChart& q, std::optional<std::int64_t> mbar = {});

// Catalogue of germs realising the local cases of the classification.

/// ord (1, mbar-1, mbar+1, mbar), wt (1, -1, mbar+1, 0) mod 2mbar; cyclic quotient.
NormalizedGerm pattern_one_germ(std::int64_t mbar);
/// ord (1, 2mbar-1, mbar+1, mbar), wt (1, -1, mbar+1, 0) mod 2mbar.
NormalizedGerm pattern_two_germ(std::int64_t mbar);
/// 1/4(1,3,1), ord (1,1,1,2).
NormalizedGerm quotient_4_131_germ();
/// 1/8(a,-a,1), ord (1,1,1,2), a in {1,3}.
NormalizedGerm quotient_8_germ(std::int64_t a);
/// cAx/4: wt (1,3,3,2) mod 4, ord (1,1,1,2).
NormalizedGerm cax4_germ();
/// Smooth point marker (index 1).
NormalizedGerm smooth_point_germ();

/// Named germs: cAx4, main-1-iii, main-1-iv-m<k> (= pattern-i-m<k>),
/// main-1-v-m<k> (= pattern-ii-m<k>), main-2-i, main-2-ii, smooth.
std::optional<NormalizedGerm> builtin_germ(const std::string& name);
std::vector<std::string> builtin_germ_names();

}  // namespace tgerm
