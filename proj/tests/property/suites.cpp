#include "suites.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "../oracles/brute_force.hpp"
#include "tgerm/classification.hpp"
#include "tgerm/duval.hpp"
#include "tgerm/example_verifier.hpp"
#include "tgerm/invariants.hpp"
#include "tgerm/weight_calculus.hpp"

namespace suites {

namespace {

using namespace tgerm;
using Rng = std::mt19937_64;

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

void fail(SuiteResult& r, const std::string& msg) {
  ++r.failures;
  if (r.messages.size() < 5) r.messages.push_back(msg);
}

WeightedChart random_chart(Rng& rng, std::int64_t max_m, std::int64_t max_ord) {
  WeightedChart c;
  c.modulus = uniform(rng, 1, max_m);
  for (int i = 0; i < 4; ++i) {
    c.weights[i] = uniform(rng, 0, c.modulus - 1);
    c.orders[i] = uniform(rng, 1, max_ord);
  }
  return c;
}

Monomial random_monomial(Rng& rng, int max_exp) {
  return Monomial(static_cast<int>(uniform(rng, 0, max_exp)), static_cast<int>(uniform(rng, 0, max_exp)),
                  static_cast<int>(uniform(rng, 0, max_exp)), static_cast<int>(uniform(rng, 0, max_exp)));
}

std::string chart_text(const WeightedChart& c) {
  std::ostringstream os;
  os << "m=" << c.modulus << " wt(" << c.weights[0] << "," << c.weights[1] << "," << c.weights[2] << ","
     << c.weights[3] << ") ord(" << c.orders[0] << "," << c.orders[1] << "," << c.orders[2] << "," << c.orders[3]
     << ")";
  return os.str();
}

/// A validated main-series germ with a cyclic binomial equation of order mbar.
std::optional<NormalizedGerm> random_binomial_germ(Rng& rng, std::int64_t max_mbar) {
  for (int attempt = 0; attempt < 2000; ++attempt) {
    const auto mbar = uniform(rng, 2, max_mbar);
    const std::int64_t ds[] = {1, 2, 4};
    const auto d = ds[uniform(rng, 0, 2)];
    const auto m = mbar * d;
    std::int64_t a = uniform(rng, 1, m - 1);
    if (std::gcd(a, m) != 1) continue;
    const auto b = uniform(rng, 1, m - 1);
    NormalizedGerm::Quad w{a, m - a, b, 0};
    NormalizedGerm::Quad o{};
    for (int i = 0; i < 3; ++i) {
      const auto base = mod_floor(w[i], mbar);
      o[i] = base + mbar * uniform(rng, 0, 2);
      if (o[i] == 0) o[i] = mbar;
    }
    o[3] = mbar;
    try {
      NormalizedGerm g(mbar, d, Series::Main, w, o);
      if (!validate(g).normalized()) continue;
      const auto inv = min_ord_of_weight(g.chart(), Residue(0, m), mbar, MinOrdOptions{kFirstThreeVars, false});
      if (!inv || inv->order != mbar) continue;
      if (!vanishes_on_curve(inv->witness, 1, g.chart())) continue;
      return g.with_equation(CyclicBinomial{inv->witness, 1});
    } catch (const GermError&) {
    }
  }
  return std::nullopt;
}

Poly random_poly(Rng& rng, int n) {
  Poly p;
  const auto deg = static_cast<int>(uniform(rng, 1, 3));
  const auto terms = uniform(rng, 1, 4);
  for (int t = 0; t < terms; ++t) {
    Exponents e{};
    for (int k = 0; k < deg; ++k) e[static_cast<std::size_t>(uniform(rng, 0, 3))] += 1;
    e[4] = static_cast<int>(uniform(rng, 0, 2));
    e[5] = static_cast<int>(uniform(rng, 0, 1));
    const auto c = Cyclotomic(n, Rational(uniform(rng, -4, 4))) * Cyclotomic::root(n, uniform(rng, 0, n - 1));
    p += Poly::monomial(e, c);
  }
  return p;
}

EquivariantFamily random_family(Rng& rng) {
  const auto& names = builtin_example_names();
  const auto& name = names[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(names.size()) - 1))];
  if (name == "cAx4-family") return builtin_example(name, uniform(rng, 1, 3));
  return builtin_example(name);
}

std::vector<std::string> component_texts(const FiberDecomposition& f) {
  std::vector<std::string> out;
  for (const auto& c : f.components) out.push_back(c.to_string());
  return out;
}

}  // namespace

SuiteResult ord_weight_additivity(std::uint64_t seed, int cases) {
  SuiteResult r{"ord/weight additivity"};
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    const auto c = random_chart(rng, 24, 9);
    const auto a = random_monomial(rng, 6);
    const auto b = random_monomial(rng, 6);
    const auto k = static_cast<int>(uniform(rng, 0, 5));
    ++r.cases;
    const bool ok = ord_of(a * b, c) == ord_of(a, c) + ord_of(b, c) &&
                    weight_of(a * b, c) == weight_of(a, c) + weight_of(b, c) &&
                    ord_of(a.pow(k), c) == k * ord_of(a, c) && weight_of(a.pow(k), c) == weight_of(a, c) * k &&
                    ord_of(a, c) == oracle::ord(a.exponents(), c) && weight_of(a, c).value() == oracle::wt(a.exponents(), c);
    if (!ok) fail(r, chart_text(c) + " a=" + a.to_string() + " b=" + b.to_string());
  }
  return r;
}

SuiteResult min_ord_vs_enumeration(std::uint64_t seed, int cases) {
  SuiteResult r{"min_ord_of_weight vs enumeration"};
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    const auto c = random_chart(rng, 16, 7);
    const auto target = uniform(rng, 0, c.modulus - 1);
    const auto cap = uniform(rng, 1, 30);
    const auto vars = static_cast<VarSet>(uniform(rng, 1, 15));
    const bool unit = uniform(rng, 0, 3) == 0;
    ++r.cases;
    const auto got = min_ord_of_weight(c, Residue(target, c.modulus), cap, MinOrdOptions{vars, unit});
    const auto want = oracle::min_ord(c, target, cap, vars, unit);
    bool ok = got.has_value() == want.has_value();
    if (ok && got) ok = got->order == want->first && got->witness.exponents() == want->second;
    if (ok && !unit) {
      const auto listed = enumerate_by_weight(c, Residue(target, c.modulus), cap, vars);
      ok = listed.empty() == !want.has_value() &&
           (listed.empty() || (ord_of(listed.front(), c) == want->first && listed.front().exponents() == want->second));
    }
    if (!ok)
      fail(r, chart_text(c) + " target " + std::to_string(target) + " cap " + std::to_string(cap) + " vars " +
                  std::to_string(vars) + " got " + (got ? std::to_string(got->order) : "none") + " want " +
                  (want ? std::to_string(want->first) : "none"));
  }
  return r;
}

SuiteResult ip_lower_le_exact(std::uint64_t seed, int cases) {
  SuiteResult r{"iP_lower <= iP_exact (mbar <= 8)"};
  Rng rng(seed);
  int skipped = 0;
  while (r.cases < cases && skipped < 10 * cases) {
    const auto g = random_binomial_germ(rng, 8);
    if (!g) {
      ++skipped;
      continue;
    }
    try {
      const auto exact = compute_iP_exact(*g);
      const auto lower = compute_iP_lower(*g);
      ++r.cases;
      bool ok = lower.value <= exact.value;
      std::string why;
      if (!ok) why = "lower " + to_string(lower.value) + " > exact " + to_string(exact.value);
      if (ok && !exact.boundary_hit) {
        const auto brute = oracle::exact_ip_times_mbar(*g, exact.cap, 12 * g->m());
        ok = brute && Rational(*brute, g->mbar()) == exact.value;
        if (!ok) why = "exact " + to_string(exact.value) + " vs brute force " + (brute ? std::to_string(*brute) : "none");
      }
      if (!ok) fail(r, g->describe() + ": " + why);
    } catch (const SearchExhausted&) {
      ++skipped;
    }
  }
  return r;
}

SuiteResult canonicalize_idempotence(std::uint64_t seed, int cases) {
  SuiteResult r{"canonicalize idempotence"};
  Rng rng(seed);
  std::vector<NormalizedGerm> pool;
  for (std::int64_t mbar = 1; mbar <= 6; ++mbar)
    for (std::int64_t d : {1, 2, 4})
      for (const auto& g : enumerate_candidates(mbar, d)) pool.push_back(g);
  for (int i = 0; i < 3; ++i)
    if (auto g = random_binomial_germ(rng, 8)) pool.push_back(*g);
  if (pool.empty()) {
    fail(r, "empty candidate pool");
    return r;
  }
  for (int i = 0; i < cases; ++i) {
    const auto& g = pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(pool.size()) - 1))];
    const auto m = g.m();
    std::vector<std::int64_t> units;
    for (std::int64_t u = 1; u <= m; ++u)
      if (std::gcd(u, m) == 1 && mod_floor(u - 1, g.mbar()) == 0) units.push_back(u);
    const auto u = units[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(units.size()) - 1))];
    auto w = g.weights();
    auto o = g.orders();
    Equation eq = g.equation();
    if (uniform(rng, 0, 1) == 1) {
      std::swap(w[0], w[1]);
      std::swap(o[0], o[1]);
      if (auto* b = std::get_if<CyclicBinomial>(&eq)) {
        auto e = b->psi0.exponents();
        std::swap(e[0], e[1]);
        b->psi0 = Monomial(e);
      }
    }
    for (auto& x : w) x = mod_floor(x * u, m);
    const NormalizedGerm moved(g.mbar(), g.d(), g.series(), w, o, eq);
    const auto c = canonicalize(g);
    ++r.cases;
    if (!canonicalize(c).same_data(c) || !canonicalize(moved).same_data(c))
      fail(r, g.describe() + " moved to " + moved.describe());
  }
  return r;
}

SuiteResult action_order_identity(std::uint64_t seed, int cases) {
  SuiteResult r{"action-order identity (five families)"};
  Rng rng(seed);
  std::vector<EquivariantFamily> fams;
  for (const auto& name : builtin_example_names()) fams.push_back(builtin_example(name));
  for (int i = 0; i < cases; ++i) {
    const auto& f = i < static_cast<int>(fams.size()) ? fams[static_cast<std::size_t>(i)] : fams[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(fams.size()) - 1))];
    ++r.cases;
    bool ok = true;
    for (const auto& g : f.generators)
      if (!(apply_action_power(g, f.action, f.order) == g)) ok = false;
    const auto p = random_poly(rng, f.order);
    if (!(apply_action_power(p, f.action, f.order) == p)) ok = false;
    const auto eq = check_ideal_equivariance(f);
    if (!eq.ok || !eq.order_identity || !eq.invertible) ok = false;
    if (!ok) fail(r, f.name + ": " + p.to_string());
  }
  return r;
}

SuiteResult hj_roundtrip(std::uint64_t seed, int cases) {
  SuiteResult r{"HJ roundtrip"};
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    ++r.cases;
    if (i % 2 == 0) {
      const auto n = uniform(rng, 2, 1000000);
      auto q = uniform(rng, 1, n - 1);
      while (std::gcd(n, q) != 1) q = uniform(rng, 1, n - 1);
      const auto chain = hj_expand(n, q);
      bool ok = hj_fold(chain) == std::make_pair(n, q) && chain == oracle::hj_expand(n, q) &&
                oracle::hj_value(chain) == Rational(n, q) && static_cast<std::int64_t>(chain.size()) <= n - 1;
      for (auto b : chain) ok = ok && b >= 2;
      if (!ok) fail(r, "1/" + std::to_string(n) + "(1," + std::to_string(q) + ")");
    } else {
      std::vector<std::int64_t> chain(static_cast<std::size_t>(uniform(rng, 1, 8)));
      for (auto& b : chain) b = uniform(rng, 2, 6);
      const auto [n, q] = hj_fold(chain);
      const bool ok = q >= 1 && q < n && hj_expand(n, q) == chain;
      if (!ok) fail(r, "chain of length " + std::to_string(chain.size()) + " folds to " + std::to_string(n) + "/" + std::to_string(q));
    }
  }
  return r;
}

SuiteResult cyclotomic_identities(std::uint64_t seed, int cases) {
  SuiteResult r{"cyclotomic identities"};
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    const int n = static_cast<int>(uniform(rng, 1, 24));
    const auto random_elem = [&] {
      std::vector<Rational> c(static_cast<std::size_t>(uniform(rng, 1, 2 * n)));
      for (auto& v : c) v = Rational(uniform(rng, -5, 5), uniform(rng, 1, 3));
      return Cyclotomic::from_poly(n, c);
    };
    const auto a = random_elem(), b = random_elem(), c = random_elem();
    ++r.cases;
    bool ok = Cyclotomic::root(n, 1).pow(n) == Cyclotomic(n, Rational(1));
    ok = ok && Cyclotomic::from_poly(n, a.coefficients()) == a;
    ok = ok && (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c;
    if (!a.is_zero()) ok = ok && a * a.inverse() == Cyclotomic(n, Rational(1));
    ok = ok && std::abs((a * b).evaluate() - a.evaluate() * b.evaluate()) < 1e-6 * (1 + std::abs(a.evaluate() * b.evaluate()));
    if (auto s = (a * a).sqrt()) ok = ok && *s * *s == a * a;
    if (!ok) fail(r, "n=" + std::to_string(n) + " a=" + a.to_string() + " b=" + b.to_string());
  }
  return r;
}

SuiteResult fiber_stability(std::uint64_t seed, int cases) {
  SuiteResult r{"central fiber stable under generator changes"};
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    const auto f = random_family(rng);
    std::int64_t t[2][2];
    do {
      for (auto& row : t)
        for (auto& v : row) v = uniform(rng, -3, 3);
    } while (t[0][0] * t[1][1] - t[0][1] * t[1][0] == 0);
    std::vector<Poly> moved;
    for (int k = 0; k < 2; ++k)
      moved.push_back(f.generators[0].scaled(Cyclotomic(1, Rational(t[k][0]))) +
                      f.generators[1].scaled(Cyclotomic(1, Rational(t[k][1]))));
    ++r.cases;
    try {
      const auto base = component_texts(central_fiber_components(f.generators));
      const auto got = component_texts(central_fiber_components(moved));
      if (base != got) fail(r, f.name + ": component sets differ after a generator change");
    } catch (const UnsupportedShape& e) {
      fail(r, f.name + ": " + e.what());
    }
  }
  return r;
}

SuiteResult equivariance_numeric(std::uint64_t seed, int cases) {
  SuiteResult r{"equivariance scalars vs numeric substitution"};
  Rng rng(seed);
  std::normal_distribution<double> gauss;
  for (int i = 0; i < cases; ++i) {
    const auto f = random_family(rng);
    const auto eq = check_ideal_equivariance(f);
    oracle::CPoint x;
    for (auto& v : x) v = {gauss(rng), gauss(rng)};
    const auto y = oracle::act(f.action, x);
    ++r.cases;
    bool ok = eq.ok;
    for (std::size_t a = 0; ok && a < f.generators.size(); ++a) {
      std::complex<double> rhs = 0;
      for (std::size_t b = 0; b < f.generators.size(); ++b) rhs += eq.scalars[a][b].evaluate() * oracle::eval(f.generators[b], x);
      const auto lhs = oracle::eval(f.generators[a], y);
      ok = std::abs(lhs - rhs) < 1e-8 * (1 + std::abs(lhs));
    }
    if (!ok) fail(r, f.name);
  }
  return r;
}

std::vector<SuiteResult> run_required(std::uint64_t seed) {
  return {ord_weight_additivity(seed),    min_ord_vs_enumeration(seed + 1), ip_lower_le_exact(seed + 2),
          canonicalize_idempotence(seed + 3), action_order_identity(seed + 4),  hj_roundtrip(seed + 5)};
}

}  // namespace suites
