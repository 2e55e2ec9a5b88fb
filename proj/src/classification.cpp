#include "tgerm/classification.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <thread>
#include <tuple>

#include "tgerm/duval.hpp"

namespace tgerm {

std::string to_string(FilterMode m) { return m == FilterMode::Strict ? "strict" : "binomial"; }

std::optional<FilterMode> parse_filter_mode(const std::string& text) {
  if (text == "strict") return FilterMode::Strict;
  if (text == "binomial" || text == "binomial-jacobian") return FilterMode::Binomial;
  return std::nullopt;
}

namespace {

using Key = std::tuple<int, NormalizedGerm::Quad, NormalizedGerm::Quad>;

Key key_of(const NormalizedGerm& g) {
  return {g.series() == Series::Main ? 0 : 1, g.weights(), g.orders()};
}

bool key_less(const NormalizedGerm& a, const NormalizedGerm& b) { return key_of(a) < key_of(b); }

Monomial swap12(const Monomial& p) { return Monomial(p[1], p[0], p[2], p[3]); }

Equation swap_equation(const Equation& eq) {
  if (const auto* b = std::get_if<CyclicBinomial>(&eq)) return CyclicBinomial{swap12(b->psi0), b->power};
  return eq;
}

}  // namespace

NormalizedGerm canonicalize(const NormalizedGerm& germ) {
  const auto m = germ.m();
  const auto mbar = germ.mbar();
  std::optional<NormalizedGerm> best;
  for (int swap = 0; swap < 2; ++swap) {
    auto w = germ.weights();
    auto o = germ.orders();
    Equation eq = germ.equation();
    if (swap) {
      std::swap(w[0], w[1]);
      std::swap(o[0], o[1]);
      eq = swap_equation(eq);
    }
    for (std::int64_t u = 1; u <= m; ++u) {
      if (std::gcd(u, m) != 1 || mod_floor(u - 1, mbar) != 0) continue;
      NormalizedGerm::Quad wu;
      for (std::size_t i = 0; i < 4; ++i) wu[i] = mod_floor(w[i] * u, m);
      NormalizedGerm cand(mbar, germ.d(), germ.series(), wu, o, eq);
      if (!best || key_less(cand, *best)) best = cand;
    }
  }
  return *best;
}

std::vector<NormalizedGerm> enumerate_candidates(std::int64_t mbar, std::int64_t d, const Caps& caps) {
  if (mbar < 1 || d < 1) throw std::invalid_argument("enumerate_candidates: mbar and d must be >= 1");
  const auto m = mbar * d;
  const auto cap = caps.order_cap_for(mbar);
  const auto pair_cap = caps.pair_sum_cap_for(mbar);
  std::set<Key> seen;
  std::vector<NormalizedGerm> out;
  auto offer = [&](const NormalizedGerm& g) {
    if (!validate(g).normalized()) return;
    auto c = canonicalize(g);
    if (seen.insert(key_of(c)).second) out.push_back(c);
  };
  if (m > 1) {
    auto orders_for = [&](std::int64_t w) {
      std::vector<std::int64_t> v;
      for (std::int64_t a = 1; a <= cap; ++a)
        if (mod_floor(a - w, mbar) == 0 && std::gcd(a, mbar) == 1) v.push_back(a);
      return v;
    };
    for (std::int64_t a = 1; a < m; ++a) {
      if (std::gcd(a, m) != 1) continue;
      for (std::int64_t b = 1; b < m; ++b) {
        if (std::gcd(b, m) != 1) continue;
        const auto o1 = orders_for(a);
        const auto o2 = orders_for(m - a);
        const auto o3 = orders_for(b);
        for (auto a1 : o1)
          for (auto a2 : o2) {
            if (a1 + a2 > pair_cap) continue;
            for (auto a3 : o3)
              offer(NormalizedGerm(mbar, d, Series::Main, {a, m - a, b, 0}, {a1, a2, a3, mbar}));
          }
      }
    }
    if (m == 4) {
      const auto ex = cax4_germ();
      offer(NormalizedGerm(mbar, d, Series::Exceptional, ex.weights(), ex.orders()));
    }
  }
  std::sort(out.begin(), out.end(), key_less);
  return out;
}

InvolutionAnalysis involution_analysis(const NormalizedGerm& g) {
  InvolutionAnalysis r;
  const auto m = g.m();
  const auto d = g.d();
  const bool exceptional = g.series() == Series::Exceptional;
  const std::string tail = " (index m=" + std::to_string(m) + ", base index d=" + std::to_string(d) + ")";

  for (int row = 1; row <= 4; ++row)
    r.lines.push_back("row " + std::to_string(row) + ": quotient " + catanese_table()[row - 1].quotient +
                      " is not a cyclic point of index " + std::to_string(d));

  auto series_ok = [&](TerminalClass c) { return (c == TerminalClass::cAx4) == exceptional; };

  auto check_elephant = [&](int row, const DuValType& F) {
    const std::string head = "row " + std::to_string(row) + ": elephant " + F.to_string() + " (topological index " +
                             std::to_string(topological_index(F)) + ")";
    const auto verdict = index_divisibility_check(m, F);
    if (verdict == IndexVerdict::Fail) {
      r.lines.push_back(head + ": index divisibility fails" + tail);
      return;
    }
    auto classes = classes_with_elephant(F, m);
    std::erase_if(classes, [&](TerminalClass c) { return !series_ok(c); });
    if (classes.empty()) {
      r.lines.push_back(head + ": no terminal class of index " + std::to_string(m) + " in the " +
                        to_string(g.series()) + " series has this elephant");
      return;
    }
    if (verdict == IndexVerdict::PassForcingA) {
      auto inv = min_ord_of_weight(g.chart(), Residue(0, m), g.mbar(), {kFirstThreeVars, false});
      if (exceptional || !inv || inv->order != g.mbar()) {
        r.lines.push_back(head + ": forces a cyclic quotient, but no invariant of order " +
                          std::to_string(g.mbar()) + " in x1, x2, x3");
        return;
      }
      r.forces_cyclic_quotient = true;
      r.lines.push_back(head + ": " + to_string(verdict) + ", cyclic quotient with x4 = " +
                        inv->witness.to_string());
    } else {
      r.lines.push_back(head + ": " + to_string(verdict) + " (" + to_string(classes.front()) + ")");
    }
    r.admissible = true;
  };

  auto no_fit = [&](int row, const std::string& why) {
    r.lines.push_back("row " + std::to_string(row) + ": " + why);
  };

  // Rows whose quotient is a cyclic point; its topological index must be d.
  if (d % 2 == 0 && d / 2 - 1 >= 1)
    check_elephant(5, DuValType::A(static_cast<int>(d / 2 - 1)));
  else
    no_fit(5, "quotient A_{2k+1} has index 2k+2 != " + std::to_string(d) + " for k >= 1");
  if (d % 4 == 0)
    check_elephant(6, DuValType::A(static_cast<int>(2 * ((d - 4) / 4) + 1)));
  else
    no_fit(6, "quotient index 4k+4 != " + std::to_string(d));
  if (d == 3)
    check_elephant(7, DuValType::E(6));
  else
    no_fit(7, "quotient A_2 has index 3 != " + std::to_string(d));
  if (d % 2 == 1 && d >= 3)
    check_elephant(8, DuValType::A(static_cast<int>(d - 1)));
  else
    no_fit(8, "quotient index 2k+1 != " + std::to_string(d));
  if (d == 2) {
    bool any = false;
    for (int j = 4; j <= 4 + 2 * static_cast<int>(m) && !any; ++j) {
      const auto F = DuValType::D(j);
      if (index_divisibility_check(m, F) == IndexVerdict::Fail) continue;
      auto classes = classes_with_elephant(F, m);
      for (auto c : classes)
        if (series_ok(c)) {
          r.lines.push_back("row 9: elephant " + F.to_string() + " admissible (" + to_string(c) + ")");
          r.admissible = true;
          any = true;
          break;
        }
    }
    if (!any)
      no_fit(9, "no terminal class of index " + std::to_string(m) + " in the " + to_string(g.series()) +
                    " series has a D-type elephant");
  } else {
    no_fit(9, "quotient A_1 has index 2 != " + std::to_string(d));
  }
  if (d - 1 >= 1)
    check_elephant(10, DuValType::A(static_cast<int>(2 * d - 1)));
  else
    no_fit(10, "quotient A_k needs k >= 1");
  return r;
}

std::vector<std::string> SurvivorReport::unmatched() const {
  std::vector<std::string> out;
  for (const auto& s : survivors)
    if (s.tag == "unmatched") out.push_back(s.germ.describe());
  return out;
}

namespace {

struct Outcome {
  enum Kind { Survive, Exclude, Inconclusive } kind;
  Survivor survivor;
  Exclusion exclusion;
};

std::string join_rationals(const std::vector<Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " + " : "") + to_string(v[i]);
  return s;
}

Outcome classify_one(const NormalizedGerm& input, FilterMode mode, const Caps& caps) {
  NormalizedGerm germ = input;
  const bool ord1 = germ.order(2) == 1 || germ.order(2) < germ.mbar();
  const std::string branch = ord1 ? "main-ord1" : "contains-curve";
  auto exclude = [&](std::string failed, Certificate cert, std::optional<InvariantReport> inv = {},
                     bool inconclusive = false) {
    Outcome o{inconclusive ? Outcome::Inconclusive : Outcome::Exclude, Survivor{germ, branch, {}, {}, ""},
              Exclusion{germ, branch, std::move(failed), std::move(cert), std::move(inv)}};
    return o;
  };

  const auto pred = structural_predicates(germ);
  if (!pred.all_pass()) {
    Certificate c{"predicate", {}};
    c.lines.push_back(pred.first_failure() + " fails: mbar=" + std::to_string(germ.mbar()) +
                      ", d=" + std::to_string(germ.d()) + ", ord(x3)=" + std::to_string(germ.order(2)));
    return exclude(pred.first_failure(), std::move(c));
  }

  if (ord1 && germ.mbar() > 1) {
    auto inv = involution_analysis(germ);
    if (!inv.admissible) return exclude("involution-quotient", Certificate{"involution", inv.lines});
    if (inv.forces_cyclic_quotient) {
      auto psi0 = min_ord_of_weight(germ.chart(), Residue(0, germ.m()), germ.mbar(), {kFirstThreeVars, false});
      germ = germ.with_equation(CyclicBinomial{psi0->witness, 1});
    }
  }

  SearchOptions opts;
  opts.cap = caps.generator_cap;
  opts.keep_trace = true;
  InvariantReport inv;
  try {
    inv = compute_invariants(germ, opts);
  } catch (const SearchExhausted& e) {
    return exclude("search-exhausted", Certificate{"search", {e.what()}}, std::nullopt, true);
  }

  PointContribution p{inv.wP.value, make_rational(1), inv.singular};
  bool used_lower = false;
  if (mode == FilterMode::Binomial && inv.lower) {
    Rational c(ceil_of(inv.lower->value));
    if (c > p.i) {
      p.i = c;
      used_lower = true;
    }
  }
  const auto antican = make_rational(1, germ.mbar());
  const auto global = global_check(std::vector<PointContribution>{p}, 0, antican);
  if (!global.all_pass()) {
    Certificate c{"budget", {}};
    c.lines.push_back("w_P = " + to_string(inv.wP.value) + " via " + inv.wP.witness.to_string());
    if (inv.lower) {
      std::string triple;
      if (inv.lower->triple)
        for (std::size_t i = 0; i < 3; ++i) triple += (i ? ", " : "") + (*inv.lower->triple)[i].to_string();
      c.lines.push_back("lower-bound (binomial search): min V = " + std::to_string(inv.lower->min_value) +
                        (triple.empty() ? "" : " via {" + triple + "}") + ", i_P >= (" +
                        std::to_string(inv.lower->min_value) + " - " + std::to_string(inv.lower->wP_t_order) +
                        ")/" + std::to_string(germ.mbar()) + " = " + to_string(inv.lower->value) +
                        (inv.lower->boundary_hit ? " [cap " + std::to_string(inv.lower->cap) + " binding]" : ""));
    }
    if (inv.exact)
      for (const auto& line : inv.exact->trace) c.lines.push_back("exact: " + line);
    c.lines.push_back("i_P used = " + to_string(p.i) + (used_lower ? " (lower bound)" : " (i_P >= 1)"));
    c.lines.push_back("budget (-K.C) + w_P + i_P = " + join_rationals({antican, p.w, p.i}) + " = " +
                      to_string(global.budget_total));
    for (const auto& f : global.failures()) c.lines.push_back(f);
    if (used_lower && inv.lower->boundary_hit)
      c.lines.push_back("generator cap binds: bound certified as cap + 1 - max(a1,a2,a3)");
    return exclude(global.failures().front(), std::move(c), inv);
  }

  Outcome o{Outcome::Survive, Survivor{germ, branch, inv, global, match_theorem_pattern(germ)},
            Exclusion{germ, branch, "", {}, std::nullopt}};
  return o;
}

}  // namespace

SurvivorReport classify_candidates(std::int64_t mbar, std::int64_t d, std::span<const NormalizedGerm> candidates,
                                   FilterMode mode, const Caps& caps) {
  SurvivorReport report;
  report.mbar = mbar;
  report.d = d;
  report.mode = mode;
  report.order_cap = caps.order_cap_for(mbar);
  report.pair_sum_cap = caps.pair_sum_cap_for(mbar);
  report.generator_cap = caps.generator_cap;

  std::map<Key, NormalizedGerm> unique;
  for (const auto& g : candidates) {
    auto c = canonicalize(g);
    unique.emplace(key_of(c), c);
  }
  std::vector<NormalizedGerm> list;
  for (auto& [k, g] : unique) list.push_back(g);

  std::vector<std::optional<Outcome>> outcomes(list.size());
  unsigned threads = caps.threads ? caps.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, list.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < list.size(); ++i) outcomes[i] = classify_one(list[i], mode, caps);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < list.size(); i += threads) outcomes[i] = classify_one(list[i], mode, caps);
      });
    for (auto& th : pool) th.join();
  }

  for (auto& o : outcomes) {
    switch (o->kind) {
      case Outcome::Survive:
        report.survivors.push_back(std::move(o->survivor));
        break;
      case Outcome::Exclude:
        report.excluded.push_back(std::move(o->exclusion));
        break;
      case Outcome::Inconclusive:
        report.inconclusive.push_back(std::move(o->exclusion));
        break;
    }
  }
  return report;
}

SurvivorReport classify(std::int64_t mbar, std::int64_t d, FilterMode mode, const Caps& caps) {
  const auto candidates = enumerate_candidates(mbar, d, caps);
  return classify_candidates(mbar, d, candidates, mode, caps);
}

std::string match_theorem_pattern(const NormalizedGerm& germ) {
  const auto g = canonicalize(germ);
  const auto mbar = g.mbar();
  if (g.series() == Series::Exceptional) return g.same_data(canonicalize(cax4_germ())) ? "main-1.(ii)" : "unmatched";
  if (mbar == 1 && g.d() == 2) return "main-1.(i)";
  if (g.same_data(canonicalize(quotient_4_131_germ()))) return "main-1.(iii)";
  if (g.d() == 2 && mbar % 2 == 0) {
    if (mbar >= 4 && g.same_data(canonicalize(pattern_one_germ(mbar)))) return "main-1.(iv)";
    if (g.same_data(canonicalize(pattern_two_germ(mbar)))) return "main-1.(v)";
  }
  if (mbar == 2 && g.d() == 4 && g.orders() == NormalizedGerm::Quad{1, 1, 1, 2}) {
    // a = wt(x1) / wt(x3) mod 8, up to sign
    std::int64_t inv3 = 0;
    for (std::int64_t u = 1; u < 8; ++u)
      if (mod_floor(u * g.weights()[2], 8) == 1) inv3 = u;
    const auto a = mod_floor(g.weights()[0] * inv3, 8);
    if (a == 1 || a == 7) return "main-2.(i)";
    if (a == 3 || a == 5) return "main-2.(ii)";
  }
  return "unmatched";
}

void match_theorem_patterns(std::vector<Survivor>& survivors) {
  for (auto& s : survivors) s.tag = match_theorem_pattern(s.germ);
}

}  // namespace tgerm
