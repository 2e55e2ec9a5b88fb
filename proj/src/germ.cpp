#include "tgerm/germ.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tgerm {

std::string to_string(Series s) { return s == Series::Main ? "main" : "exceptional"; }

std::string to_string(ElephantVerdict v) {
  return v == ElephantVerdict::GoodElephant ? "good-elephant" : "contains-curve";
}

NormalizedGerm::NormalizedGerm(std::int64_t mbar, std::int64_t d, Series series, Quad weights,
                               Quad orders, Equation equation)
    : mbar_(mbar), d_(d), series_(series), equation_(std::move(equation)) {
  if (mbar < 1) throw GermError("mbar must be >= 1");
  if (d < 1) throw GermError("d must be >= 1");
  chart_.modulus = mbar * d;
  for (std::size_t i = 0; i < 4; ++i) {
    if (orders[i] < 1) throw GermError("ord(x" + std::to_string(i + 1) + ") must be >= 1");
    chart_.weights[i] = mod_floor(weights[i], chart_.modulus);
    chart_.orders[i] = orders[i];
  }
  if (const auto* b = std::get_if<CyclicBinomial>(&equation_)) {
    if (b->psi0[3] != 0) throw GermError("binomial psi0 must not involve x4");
    if (b->power < 1) throw GermError("binomial power must be >= 1");
    if (b->psi0.is_unit()) throw GermError("binomial psi0 must be non-constant");
  }
}

NormalizedGerm NormalizedGerm::with_equation(Equation eq) const {
  return NormalizedGerm(mbar_, d_, series_, chart_.weights, chart_.orders, std::move(eq));
}

NormalizedGerm NormalizedGerm::with_data(Quad weights, Quad orders) const {
  return NormalizedGerm(mbar_, d_, series_, weights, orders, equation_);
}

bool NormalizedGerm::same_data(const NormalizedGerm& o) const {
  return mbar_ == o.mbar_ && d_ == o.d_ && series_ == o.series_ &&
         chart_.weights == o.chart_.weights && chart_.orders == o.chart_.orders;
}

bool NormalizedGerm::operator==(const NormalizedGerm& o) const {
  return same_data(o) && equation_ == o.equation_;
}

std::string NormalizedGerm::describe() const {
  std::ostringstream out;
  out << "m=" << m() << " mbar=" << mbar_ << " d=" << d_ << ' ' << to_string(series_) << " wt(";
  for (std::size_t i = 0; i < 4; ++i) out << (i ? "," : "") << chart_.weights[i];
  out << ") ord(";
  for (std::size_t i = 0; i < 4; ++i) out << (i ? "," : "") << chart_.orders[i];
  out << ')';
  return out.str();
}

bool ValidationReport::normalized() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomCheck& a) { return a.pass; });
}

const AxiomCheck* ValidationReport::first_failure() const {
  for (const auto& a : axioms)
    if (!a.pass) return &a;
  return nullptr;
}

namespace {

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

AxiomCheck check_series_pattern(const NormalizedGerm& g) {
  AxiomCheck c{"i", true, "", std::nullopt};
  const auto m = g.m();
  const auto& w = g.weights();
  std::vector<std::string> problems;
  if (mod_floor(w[0] + w[1], m) != 0) problems.push_back("wt(x2) != -wt(x1)");
  if (gcd64(w[0], m) != 1) problems.push_back("gcd(wt(x1), m) != 1");
  if (gcd64(w[2], m) != 1) problems.push_back("gcd(wt(x3), m) != 1");
  if (g.series() == Series::Main) {
    if (w[3] != 0) problems.push_back("wt(x4) != 0");
    if (g.order(3) != g.mbar()) problems.push_back("ord(x4) != mbar");
  } else {
    if (m != 4) problems.push_back("exceptional series needs m = 4");
    if (w[3] != mod_floor(2, m)) problems.push_back("wt(x4) != 2");
  }
  if (!problems.empty()) {
    c.pass = false;
    for (std::size_t i = 0; i < problems.size(); ++i) c.detail += (i ? "; " : "") + problems[i];
  }
  return c;
}

AxiomCheck check_congruences(const NormalizedGerm& g) {
  AxiomCheck c{"ii", true, "", std::nullopt};
  for (int i = 0; i < 4; ++i) {
    if (mod_floor(g.order(i) - g.weights()[static_cast<std::size_t>(i)], g.mbar()) != 0) {
      c.pass = false;
      c.detail = "ord(x" + std::to_string(i + 1) + ") != wt(x" + std::to_string(i + 1) + ") mod mbar";
      c.witness = Monomial::variable(i);
      return c;
    }
    if (i < 3 && gcd64(g.order(i), g.mbar()) != 1) {
      c.pass = false;
      c.detail = "gcd(ord(x" + std::to_string(i + 1) + "), mbar) != 1";
      c.witness = Monomial::variable(i);
      return c;
    }
  }
  return c;
}

AxiomCheck check_no_cheaper(const NormalizedGerm& g) {
  AxiomCheck c{"iv", true, "", std::nullopt};
  for (int i = 0; i < 4; ++i) {
    auto cheaper = min_ord_of_weight(g.chart(), g.weight(i), g.order(i) - 1);
    if (cheaper) {
      c.pass = false;
      c.detail = "weight class of x" + std::to_string(i + 1) + " has minimum order " +
                 std::to_string(cheaper->order) + " < " + std::to_string(g.order(i));
      c.witness = cheaper->witness;
      return c;
    }
  }
  return c;
}

AxiomCheck check_invariant_of_order_mbar(const NormalizedGerm& g) {
  AxiomCheck c{"v", true, "", std::nullopt};
  auto inv = min_ord_of_weight(g.chart(), Residue(0, g.m()), g.mbar());
  if (!inv || inv->order != g.mbar()) {
    c.pass = false;
    c.detail = inv ? "an invariant of order " + std::to_string(inv->order) + " < mbar exists"
                   : "no invariant monomial of order mbar";
    if (inv) c.witness = inv->witness;
    return c;
  }
  c.witness = inv->witness;
  return c;
}

}  // namespace

ValidationReport validate(const NormalizedGerm& germ) {
  ValidationReport r;
  r.axioms.push_back(check_series_pattern(germ));
  r.axioms.push_back(check_congruences(germ));
  r.axioms.push_back(AxiomCheck{"iii", true, "parametrization implicit in (wt, ord)", std::nullopt});
  r.axioms.push_back(check_no_cheaper(germ));
  r.axioms.push_back(check_invariant_of_order_mbar(germ));
  return r;
}

std::string PredicateReport::first_failure() const {
  if (!d_even) return "d-even";
  if (!two_mbar_divisible_by_d) return "2mbar-divisible-by-d";
  if (!mbar_at_least_half_d) return "mbar-at-least-half-d";
  if (!a3_congruent_one) return "ord-x3-congruent-1";
  return "";
}

PredicateReport structural_predicates(const NormalizedGerm& germ) {
  PredicateReport p;
  p.d_even = germ.d() % 2 == 0;
  p.two_mbar_divisible_by_d = (2 * germ.mbar()) % germ.d() == 0;
  p.mbar_at_least_half_d = 2 * germ.mbar() >= germ.d();
  p.a3_congruent_one = mod_floor(germ.order(2) - 1, germ.mbar()) == 0;
  p.anticanonical_degree = make_rational(1, germ.mbar());
  return p;
}

ElephantVerdict general_elephant_test(const NormalizedGerm& germ) {
  return germ.order(2) < germ.mbar() ? ElephantVerdict::GoodElephant
                                     : ElephantVerdict::ContainsCurve;
}

NormalizedGerm extend_to_chart(const QuotientChart& q, std::optional<std::int64_t> mbar) {
  if (q.m < 2) throw GermError("extend_to_chart: index must be >= 2");
  for (std::size_t i = 0; i < 3; ++i) {
    if (gcd64(mod_floor(q.weights[i], q.m), q.m) != 1)
      throw GermError("extend_to_chart: weights must be prime to m");
    if (q.orders[i] < 1) throw GermError("extend_to_chart: orders must be >= 1");
  }
  std::int64_t mb = 0;
  if (mbar) {
    mb = *mbar;
    if (mb < 1 || q.m % mb != 0) throw GermError("extend_to_chart: mbar must divide m");
  } else {
    mb = q.m;
    for (std::size_t i = 0; i < 3; ++i) mb = gcd64(mb, q.weights[i] - q.orders[i]);
    mb = std::abs(mb);
  }
  WeightedChart chart;
  chart.modulus = q.m;
  for (std::size_t i = 0; i < 3; ++i) {
    chart.weights[i] = mod_floor(q.weights[i], q.m);
    chart.orders[i] = q.orders[i];
  }
  chart.weights[3] = 0;
  chart.orders[3] = mb;
  auto inv = min_ord_of_weight(chart, Residue(0, q.m), mb, {kFirstThreeVars, false});
  if (!inv || inv->order != mb)
    throw GermError("extend_to_chart: no invariant of order mbar=" + std::to_string(mb) +
                    (inv ? " (cheaper invariant " + inv->witness.to_string() + ")" : ""));
  return NormalizedGerm(mb, q.m / mb, Series::Main, chart.weights, chart.orders,
                        CyclicBinomial{inv->witness, 1});
}

NormalizedGerm pattern_one_germ(std::int64_t mbar) {
  if (mbar < 2) throw GermError("pattern (i) needs mbar >= 2");
  const auto m = 2 * mbar;
  return NormalizedGerm(mbar, 2, Series::Main, {1, m - 1, mbar + 1, 0},
                        {1, mbar - 1, mbar + 1, mbar}, CyclicBinomial{Monomial(1, 1, 0, 0), 1});
}

NormalizedGerm pattern_two_germ(std::int64_t mbar) {
  if (mbar < 2) throw GermError("pattern (ii) needs mbar >= 2");
  const auto m = 2 * mbar;
  return NormalizedGerm(mbar, 2, Series::Main, {1, m - 1, mbar + 1, 0},
                        {1, 2 * mbar - 1, mbar + 1, mbar}, GeneralHypersurface{});
}

NormalizedGerm quotient_4_131_germ() {
  return NormalizedGerm(2, 2, Series::Main, {1, 3, 1, 0}, {1, 1, 1, 2},
                        CyclicBinomial{Monomial(1, 1, 0, 0), 1});
}

NormalizedGerm quotient_8_germ(std::int64_t a) {
  if (a != 1 && a != 3) throw GermError("1/8(a,-a,1) germ needs a in {1,3}");
  return NormalizedGerm(2, 4, Series::Main, {a, 8 - a, 1, 0}, {1, 1, 1, 2},
                        CyclicBinomial{Monomial(1, 1, 0, 0), 1});
}

NormalizedGerm cax4_germ() {
  return NormalizedGerm(2, 2, Series::Exceptional, {1, 3, 3, 2}, {1, 1, 1, 2},
                        GeneralHypersurface{});
}

NormalizedGerm smooth_point_germ() {
  return NormalizedGerm(1, 1, Series::Main, {0, 0, 0, 0}, {1, 1, 1, 1}, SmoothMarker{});
}

namespace {

std::optional<std::int64_t> parse_suffix(const std::string& name, const std::string& prefix) {
  if (name.rfind(prefix, 0) != 0) return std::nullopt;
  auto rest = name.substr(prefix.size());
  if (rest.empty() || !std::all_of(rest.begin(), rest.end(), ::isdigit)) return std::nullopt;
  if (rest.size() > 6) return std::nullopt;
  return std::stoll(rest);
}

}  // namespace

std::optional<NormalizedGerm> builtin_germ(const std::string& name) {
  if (name == "cAx4" || name == "main-1-ii") return cax4_germ();
  if (name == "main-1-iii") return quotient_4_131_germ();
  if (name == "main-2-i") return quotient_8_germ(1);
  if (name == "main-2-ii") return quotient_8_germ(3);
  if (name == "smooth") return smooth_point_germ();
  for (const char* p : {"pattern-i-m", "main-1-iv-m"})
    if (auto k = parse_suffix(name, p); k && *k >= 2) return pattern_one_germ(*k);
  for (const char* p : {"pattern-ii-m", "main-1-v-m"})
    if (auto k = parse_suffix(name, p); k && *k >= 2) return pattern_two_germ(*k);
  return std::nullopt;
}

std::vector<std::string> builtin_germ_names() {
  return {"cAx4",           "main-1-iii",      "main-1-iv-m<k>", "main-1-v-m<k>", "main-2-i",
          "main-2-ii",      "pattern-i-m<k>", "pattern-ii-m<k>", "smooth"};
}

}  // namespace tgerm
