#pragma once

// Local invariants w_P, (F.C)_P and i_P of a normalized germ, and the global
// degree/budget constraints along the central fiber.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tgerm/germ.hpp"
#include "tgerm/rational.hpp"
#include "tgerm/weight_calculus.hpp"

namespace tgerm {

/// A weight-class or generator search ran out of room below its cap.
class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested computation is not defined for this kind of germ.
class UnsupportedGerm : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WPResult {
  Rational value;          // t-order of the witness divided by mbar
  std::int64_t t_order;    // mbar * w_P
  Monomial witness;
};

/// w_P from the cheapest monomial of weight -wt(x3). Index-one germs give 0.
/// Default cap: max(6*mbar, m*min(a1,a2)), below which x1 or x2 powers
/// always reach the class. Throws SearchExhausted when the class is empty
/// below cap.
WPResult compute_wP(const NormalizedGerm& germ, std::optional<std::int64_t> cap = {});

/// (F.C)_P = ord(x3)/mbar.
Rational compute_fc(const NormalizedGerm& germ);

/// Generator psi - x4^power of the invariant part of the curve ideal.
struct BinomialGenerator {
  Monomial psi;
  int power = 1;
  bool operator==(const BinomialGenerator&) const = default;
  std::string to_string() const;
};

/// Order of the Jacobian determinant d(g1,g2,g3)/d(x1,x2,x3): the sum of
/// generator orders minus a1+a2+a3 when the x1..x3 exponent rows are
/// independent, nullopt (infinite) otherwise. Throws std::invalid_argument if
/// a generator does not vanish on the curve.
std::optional<std::int64_t> jacobian_ord(const std::array<BinomialGenerator, 3>& gens,
                                         const NormalizedGerm& germ);

/// Determinant of the three x1..x3 exponent rows.
std::int64_t exponent_determinant(const Monomial& a, const Monomial& b, const Monomial& c);

struct SearchOptions {
  /// Largest generator order considered; default
  /// 4*mbar + mbar*w_P + (a1+a2+a3), which covers every value compatible
  /// with the global budget.
  std::optional<std::int64_t> cap;
  bool keep_trace = false;
};

std::int64_t default_generator_cap(const NormalizedGerm& germ, std::int64_t wP_t_order);

struct ExactIPResult {
  Rational value;                          // i_P
  std::int64_t min_jacobian = 0;           // min over pairs of [phi, phi1, phi2]
  BinomialGenerator equation;              // phi
  std::array<BinomialGenerator, 2> pair;   // minimizing (phi1, phi2)
  std::int64_t wP_t_order = 0;
  std::int64_t cap = 0;
  bool boundary_hit = false;
  std::vector<std::string> trace;
};

/// i_P * mbar = mbar - ord(x4) - mbar*w_P + min [phi, phi1, phi2] over pairs of
/// binomial generators. Defined for main-series germs whose equation is a
/// cyclic binomial; throws UnsupportedGerm otherwise.
ExactIPResult compute_iP_exact(const NormalizedGerm& germ, SearchOptions opts = {});

struct LowerIPResult {
  Rational value;           // certified lower bound for i_P
  std::int64_t min_value = 0;  // sum over the triple of ord(psi_i) - a_i
  std::optional<std::array<Monomial, 3>> triple;  // psi_i = x_i * nu_i
  std::int64_t wP_t_order = 0;
  std::int64_t cap = 0;
  bool boundary_hit = false;
  bool smooth = false;
};

/// Lower bound for i_P: minimum over triples of distinct simple invariant
/// monomials psi_i = x_i * nu_i in x1..x3 of sum(ord psi_i - a_i) - mbar*w_P,
/// divided by mbar. When the cap binds, the bound is the smaller of the best
/// value found and the least value any triple beyond the cap could have.
LowerIPResult compute_iP_lower(const NormalizedGerm& germ, SearchOptions opts = {});

enum class IPKind { Exact, LowerBound, Unsupported };
std::string to_string(IPKind k);

struct InvariantReport {
  WPResult wP;
  Rational fc;
  IPKind ip_kind = IPKind::Unsupported;
  Rational ip_value;  // exact value or lower bound; 0 when unsupported
  std::optional<ExactIPResult> exact;
  std::optional<LowerIPResult> lower;
  std::string unsupported_reason;
  bool singular = true;
};

/// w_P, (F.C)_P and the best available i_P (exact when defined, else the
/// binomial lower bound).
InvariantReport compute_invariants(const NormalizedGerm& germ, SearchOptions opts = {});

struct GlobalReport {
  Rational anticanonical_degree;
  Rational sum_w;
  Rational sum_i;            // including extra Gorenstein points
  Rational budget_total;     // (-K.C) + sum w + sum i
  Rational deg_gr0_omega;    // (K.C) - sum w
  Rational deg_gr1_O;        // 2 + deg gr0 omega - sum i
  int singular_points = 0;
  bool budget_ok = false;
  bool deg_gr0_integral = false;
  bool deg_gr0_in_range = false;  // -1 >= deg >= -3
  bool deg_gr1_ok = false;        // >= -2
  bool point_count_ok = false;    // <= 3
  bool all_pass() const {
    return budget_ok && deg_gr0_integral && deg_gr0_in_range && deg_gr1_ok && point_count_ok;
  }
  std::vector<std::string> failures() const;
};

/// i_P contribution used in global arithmetic: exact value, or the ceiling
/// of the lower bound, never below 1 at a singular point.
Rational ip_contribution(const InvariantReport& r);

GlobalReport global_check(const std::vector<InvariantReport>& reports, int extra_gorenstein_points,
                          const Rational& anticanonical_degree);

/// One point's contribution to the global arithmetic.
struct PointContribution {
  Rational w;
  Rational i;
  bool singular = true;
};

GlobalReport global_check(const std::vector<PointContribution>& points, int extra_gorenstein_points,
                          const Rational& anticanonical_degree);

}  // namespace tgerm
