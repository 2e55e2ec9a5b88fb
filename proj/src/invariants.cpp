#include "tgerm/invariants.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace tgerm {

namespace {

constexpr std::int64_t kInfinite = std::numeric_limits<std::int64_t>::max();

std::int64_t sum_first_three(const NormalizedGerm& g) { return g.order(0) + g.order(1) + g.order(2); }

/// Every monomial in x1..x3 of order <= cap satisfying keep(), sorted by (order, lex).
template <class Pred>
std::vector<Monomial> monomials_in_first_three(const WeightedChart& chart, std::int64_t cap, Pred keep) {
  std::vector<Monomial> out;
  const auto a = chart.orders;
  for (std::int64_t e1 = 0; e1 * a[0] <= cap; ++e1)
    for (std::int64_t e2 = 0; e1 * a[0] + e2 * a[1] <= cap; ++e2)
      for (std::int64_t e3 = 0; e1 * a[0] + e2 * a[1] + e3 * a[2] <= cap; ++e3) {
        if (e1 + e2 + e3 == 0) continue;
        Monomial mono(static_cast<int>(e1), static_cast<int>(e2), static_cast<int>(e3), 0);
        if (keep(mono)) out.push_back(mono);
      }
  std::sort(out.begin(), out.end(), OrderThenLex{&chart});
  return out;
}

std::int64_t round_up_to_multiple(std::int64_t v, std::int64_t k) { return ((v + k - 1) / k) * k; }

}  // namespace

WPResult compute_wP(const NormalizedGerm& germ, std::optional<std::int64_t> cap) {
  if (germ.m() == 1) return WPResult{make_rational(0), 0, Monomial::unit()};
  const auto c = cap.value_or(
      std::max(default_ord_cap(germ.mbar()), germ.m() * std::min(germ.order(0), germ.order(1))));
  auto best = min_ord_of_weight(germ.chart(), -germ.weight(2), c);
  if (!best)
    throw SearchExhausted("w_P: weight class " + std::to_string((-germ.weight(2)).value()) +
                          " empty below order cap " + std::to_string(c));
  return WPResult{make_rational(best->order, germ.mbar()), best->order, best->witness};
}

Rational compute_fc(const NormalizedGerm& germ) { return make_rational(germ.order(2), germ.mbar()); }

std::string BinomialGenerator::to_string() const {
  return psi.to_string() + " - x4" + (power == 1 ? std::string() : "^" + std::to_string(power));
}

std::int64_t exponent_determinant(const Monomial& a, const Monomial& b, const Monomial& c) {
  const std::int64_t a0 = a[0], a1 = a[1], a2 = a[2];
  const std::int64_t b0 = b[0], b1 = b[1], b2 = b[2];
  const std::int64_t c0 = c[0], c1 = c[1], c2 = c[2];
  return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0);
}

std::optional<std::int64_t> jacobian_ord(const std::array<BinomialGenerator, 3>& gens,
                                         const NormalizedGerm& germ) {
  std::int64_t total = 0;
  for (const auto& g : gens) {
    if (!vanishes_on_curve(g.psi, g.power, germ.chart()))
      throw std::invalid_argument("jacobian_ord: " + g.to_string() + " does not vanish on the curve");
    total += ord_of(g.psi, germ.chart());
  }
  if (exponent_determinant(gens[0].psi, gens[1].psi, gens[2].psi) == 0) return std::nullopt;
  return total - sum_first_three(germ);
}

std::int64_t default_generator_cap(const NormalizedGerm& germ, std::int64_t wP_t_order) {
  return 4 * germ.mbar() + wP_t_order + sum_first_three(germ);
}

ExactIPResult compute_iP_exact(const NormalizedGerm& germ, SearchOptions opts) {
  ExactIPResult r;
  if (germ.is_smooth_marker()) {
    r.value = make_rational(0);
    return r;
  }
  if (germ.series() != Series::Main)
    throw UnsupportedGerm("exact i_P: exceptional series (odd powers of x4 are not invariant)");
  const auto* eq = std::get_if<CyclicBinomial>(&germ.equation());
  if (!eq) throw UnsupportedGerm("exact i_P: equation is not a cyclic binomial");

  const auto& chart = germ.chart();
  r.equation = BinomialGenerator{eq->psi0, eq->power};
  if (!vanishes_on_curve(eq->psi0, eq->power, chart))
    throw std::invalid_argument("exact i_P: equation " + r.equation.to_string() +
                                " does not vanish on the curve");

  const auto wp = compute_wP(germ);
  r.wP_t_order = wp.t_order;
  r.cap = opts.cap.value_or(default_generator_cap(germ, wp.t_order));
  const auto mbar = germ.mbar();

  // Generators psi - x4^n: psi invariant of order n*mbar in x1..x3.
  const auto gens = monomials_in_first_three(chart, r.cap, [&](const Monomial& p) {
    const auto o = ord_of(p, chart);
    return o % mbar == 0 && weight_of(p, chart).value() == 0;
  });
  auto trace = [&](const std::string& line) {
    if (opts.keep_trace) r.trace.push_back(line);
  };
  trace("phi = " + r.equation.to_string() + ", ord " + std::to_string(ord_of(eq->psi0, chart)));
  trace("generators psi - x4^n with ord(psi) <= " + std::to_string(r.cap) + ": " +
        std::to_string(gens.size()));

  std::int64_t best = kInfinite;
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto oi = ord_of(gens[i], chart);
    if (best != kInfinite && 2 * oi >= best) break;
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const auto s = oi + ord_of(gens[j], chart);
      if (s >= best) break;
      if (exponent_determinant(eq->psi0, gens[i], gens[j]) == 0) continue;
      best = s;
      bi = i;
      bj = j;
      trace("pair " + gens[i].to_string() + ", " + gens[j].to_string() + ": ord sum " +
            std::to_string(s));
    }
  }
  if (best == kInfinite)
    throw SearchExhausted("exact i_P: no independent generator pair below order cap " +
                          std::to_string(r.cap));

  const auto threshold = round_up_to_multiple(r.cap + 1, mbar) + mbar;
  r.boundary_hit = best > threshold;
  const auto o = [&](const Monomial& p) { return ord_of(p, chart); };
  r.pair = {BinomialGenerator{gens[bi], static_cast<int>(o(gens[bi]) / mbar)},
            BinomialGenerator{gens[bj], static_cast<int>(o(gens[bj]) / mbar)}};
  r.min_jacobian = o(eq->psi0) + best - sum_first_three(germ);
  const auto numer = mbar - germ.order(3) - wp.t_order + r.min_jacobian;
  r.value = make_rational(numer, mbar);
  std::ostringstream last;
  last << "min [phi, phi1, phi2] = " << o(eq->psi0) << " + " << best << " - "
       << sum_first_three(germ) << " = " << r.min_jacobian;
  trace(last.str());
  trace("i_P * " + std::to_string(mbar) + " = " + std::to_string(mbar) + " - " +
        std::to_string(germ.order(3)) + " - " + std::to_string(wp.t_order) + " + " +
        std::to_string(r.min_jacobian) + " = " + std::to_string(numer) + ", i_P = " +
        tgerm::to_string(r.value));
  if (r.boundary_hit) trace("boundary hit: a pair beyond the cap could be smaller");
  return r;
}

LowerIPResult compute_iP_lower(const NormalizedGerm& germ, SearchOptions opts) {
  LowerIPResult r;
  if (germ.is_smooth_marker()) {
    r.smooth = true;
    r.value = make_rational(0);
    return r;
  }
  if (germ.series() != Series::Main)
    throw UnsupportedGerm("i_P lower bound: defined for the main series only");

  const auto& chart = germ.chart();
  const auto wp = compute_wP(germ);
  r.wP_t_order = wp.t_order;
  r.cap = opts.cap.value_or(default_generator_cap(germ, wp.t_order));

  const auto simple = monomials_in_first_three(chart, r.cap, [&](const Monomial& p) {
    return weight_of(p, chart).value() == 0 && is_simple_invariant(p, chart);
  });

  // Per slot, the three cheapest candidates suffice: an optimal triple can
  // always swap its slot-i member for one of them.
  std::array<std::vector<Monomial>, 3> slots;
  for (int i = 0; i < 3; ++i) {
    auto& s = slots[static_cast<std::size_t>(i)];
    for (const auto& p : simple)
      if (p[i] > 0) s.push_back(p);
    std::stable_sort(s.begin(), s.end(), [&](const Monomial& x, const Monomial& y) {
      const auto cx = ord_of(x, chart) - germ.order(i);
      const auto cy = ord_of(y, chart) - germ.order(i);
      if (cx != cy) return cx < cy;
      return lex_leading_first(x, y);
    });
    if (s.size() > 3) s.resize(3);
  }

  std::int64_t best = kInfinite;
  for (const auto& p1 : slots[0])
    for (const auto& p2 : slots[1])
      for (const auto& p3 : slots[2]) {
        if (p1 == p2 || p1 == p3 || p2 == p3) continue;
        const auto v = ord_of(p1, chart) - germ.order(0) + ord_of(p2, chart) - germ.order(1) +
                       ord_of(p3, chart) - germ.order(2);
        if (v < best) {
          best = v;
          r.triple = std::array<Monomial, 3>{p1, p2, p3};
        }
      }

  const auto max_a = std::max({germ.order(0), germ.order(1), germ.order(2)});
  const auto threshold = r.cap + 1 - max_a;
  if (best <= threshold) {
    r.min_value = best;
  } else {
    r.min_value = threshold;
    r.boundary_hit = true;
  }
  r.value = make_rational(r.min_value - wp.t_order, germ.mbar());
  return r;
}

std::string to_string(IPKind k) {
  switch (k) {
    case IPKind::Exact:
      return "exact";
    case IPKind::LowerBound:
      return "lower-bound (binomial search)";
    case IPKind::Unsupported:
      return "unsupported";
  }
  return "";
}

InvariantReport compute_invariants(const NormalizedGerm& germ, SearchOptions opts) {
  InvariantReport r;
  r.wP = compute_wP(germ);
  r.fc = compute_fc(germ);
  if (germ.is_smooth_marker()) {
    r.singular = false;
    r.ip_kind = IPKind::Exact;
    r.exact = compute_iP_exact(germ, opts);
    r.ip_value = r.exact->value;
    return r;
  }
  if (germ.series() != Series::Main) {
    r.ip_kind = IPKind::Unsupported;
    r.ip_value = make_rational(0);
    r.unsupported_reason = "exceptional series: binomial generator model incomplete";
    return r;
  }
  r.lower = compute_iP_lower(germ, opts);
  if (germ.is_cyclic_binomial()) {
    r.exact = compute_iP_exact(germ, opts);
    r.ip_kind = IPKind::Exact;
    r.ip_value = r.exact->value;
  } else {
    r.ip_kind = IPKind::LowerBound;
    r.ip_value = r.lower->value;
  }
  return r;
}

Rational ip_contribution(const InvariantReport& r) {
  const Rational floor_value = make_rational(r.singular ? 1 : 0);
  switch (r.ip_kind) {
    case IPKind::Exact:
      return r.ip_value;
    case IPKind::LowerBound: {
      Rational c(ceil_of(r.ip_value));
      return c > floor_value ? c : floor_value;
    }
    case IPKind::Unsupported:
      break;
  }
  return floor_value;
}

std::vector<std::string> GlobalReport::failures() const {
  std::vector<std::string> out;
  if (!budget_ok) out.push_back("budget " + to_string(budget_total) + " > 4");
  if (!deg_gr0_integral) out.push_back("deg gr0 omega " + to_string(deg_gr0_omega) + " not integral");
  if (deg_gr0_integral && !deg_gr0_in_range)
    out.push_back("deg gr0 omega " + to_string(deg_gr0_omega) + " outside [-3, -1]");
  if (!deg_gr1_ok) out.push_back("deg gr1 O " + to_string(deg_gr1_O) + " < -2");
  if (!point_count_ok) out.push_back(std::to_string(singular_points) + " singular points > 3");
  return out;
}

GlobalReport global_check(const std::vector<PointContribution>& points, int extra_gorenstein_points,
                          const Rational& anticanonical_degree) {
  if (extra_gorenstein_points < 0) throw std::invalid_argument("global_check: negative point count");
  GlobalReport g;
  g.anticanonical_degree = anticanonical_degree;
  for (const auto& p : points) {
    g.sum_w += p.w;
    g.sum_i += p.i;
    if (p.singular) ++g.singular_points;
  }
  g.sum_i += extra_gorenstein_points;
  g.singular_points += extra_gorenstein_points;
  g.budget_total = anticanonical_degree + g.sum_w + g.sum_i;
  g.deg_gr0_omega = -anticanonical_degree - g.sum_w;
  g.deg_gr1_O = 2 + g.deg_gr0_omega - g.sum_i;
  g.budget_ok = g.budget_total <= 4;
  g.deg_gr0_integral = is_integer(g.deg_gr0_omega);
  g.deg_gr0_in_range = g.deg_gr0_omega <= -1 && g.deg_gr0_omega >= -3;
  g.deg_gr1_ok = g.deg_gr1_O >= -2;
  g.point_count_ok = g.singular_points <= 3;
  return g;
}

GlobalReport global_check(const std::vector<InvariantReport>& reports, int extra_gorenstein_points,
                          const Rational& anticanonical_degree) {
  std::vector<PointContribution> points;
  points.reserve(reports.size());
  for (const auto& r : reports) points.push_back({r.wP.value, ip_contribution(r), r.singular});
  return global_check(points, extra_gorenstein_points, anticanonical_degree);
}

}  // namespace tgerm
