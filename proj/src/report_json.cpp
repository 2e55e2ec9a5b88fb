#include "tgerm/report_json.hpp"

#include <set>

namespace tgerm {

namespace {

Json bigint_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

std::int64_t int_field(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw DocumentError(what + " must be an integer");
  return j.get<std::int64_t>();
}

NormalizedGerm::Quad quad_field(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 4) throw DocumentError(what + " must be an array of four integers");
  NormalizedGerm::Quad q;
  for (std::size_t i = 0; i < 4; ++i) q[i] = int_field(j[i], what + "[" + std::to_string(i) + "]");
  return q;
}

Json string_list(const std::vector<std::string>& v) { return Json(v); }

}  // namespace

Json rational_json(const Rational& r) {
  return Json{{"num", bigint_json(numerator_of(r))}, {"den", bigint_json(denominator_of(r))}};
}

Rational rational_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den") || j.size() != 2)
    throw DocumentError("rational must be {\"num\": p, \"den\": q}");
  const auto read = [](const Json& v) {
    if (v.is_number_integer()) return BigInt(v.get<std::int64_t>());
    if (v.is_string()) return BigInt(v.get<std::string>());
    throw DocumentError("rational parts must be integers");
  };
  const BigInt den = read(j["den"]);
  if (den == 0) throw DocumentError("rational with zero denominator");
  return Rational(read(j["num"]), den);
}

Json germ_to_json(const NormalizedGerm& germ) {
  Json j;
  j["mbar"] = germ.mbar();
  j["d"] = germ.d();
  j["series"] = to_string(germ.series());
  j["weights"] = germ.weights();
  j["ords"] = germ.orders();
  if (const auto* b = std::get_if<CyclicBinomial>(&germ.equation())) {
    const auto& e = b->psi0.exponents();
    j["equation"] = Json{{"binomial", e}, {"n", b->power}};
  } else if (germ.is_smooth_marker()) {
    j["equation"] = "smooth-marker";
  } else {
    j["equation"] = "general-hypersurface";
  }
  return j;
}

NormalizedGerm germ_from_json(const Json& j) {
  if (!j.is_object()) throw DocumentError("germ document must be an object");
  static const std::set<std::string> known = {"mbar", "d", "series", "weights", "ords", "equation"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!known.count(key)) throw DocumentError("unknown field \"" + key + "\"");
  }
  for (const char* key : {"mbar", "d", "series", "weights", "ords"})
    if (!j.contains(key)) throw DocumentError(std::string("missing field \"") + key + "\"");
  const auto mbar = int_field(j["mbar"], "mbar");
  const auto d = int_field(j["d"], "d");
  if (!j["series"].is_string()) throw DocumentError("series must be \"main\" or \"exceptional\"");
  const auto s = j["series"].get<std::string>();
  Series series;
  if (s == "main")
    series = Series::Main;
  else if (s == "exceptional")
    series = Series::Exceptional;
  else
    throw DocumentError("series must be \"main\" or \"exceptional\", got \"" + s + "\"");
  const auto weights = quad_field(j["weights"], "weights");
  const auto ords = quad_field(j["ords"], "ords");
  Equation eq = GeneralHypersurface{};
  if (j.contains("equation")) {
    const auto& e = j["equation"];
    if (e.is_string()) {
      const auto tag = e.get<std::string>();
      if (tag == "smooth-marker")
        eq = SmoothMarker{};
      else if (tag != "general-hypersurface")
        throw DocumentError("equation must be \"general-hypersurface\", \"smooth-marker\" or a binomial object");
    } else if (e.is_object()) {
      for (const auto& [key, value] : e.items()) {
        (void)value;
        if (key != "binomial" && key != "n") throw DocumentError("unknown equation field \"" + key + "\"");
      }
      if (!e.contains("binomial")) throw DocumentError("equation object needs \"binomial\"");
      const auto exps = quad_field(e["binomial"], "equation.binomial");
      if (exps[3] != 0) throw DocumentError("equation.binomial must not involve x4");
      for (auto v : exps)
        if (v < 0 || v > 1000) throw DocumentError("equation.binomial exponents must lie in 0..1000");
      const auto n = e.contains("n") ? int_field(e["n"], "equation.n") : 1;
      if (n < 1 || n > 1000) throw DocumentError("equation.n must lie in 1..1000");
      eq = CyclicBinomial{Monomial(static_cast<int>(exps[0]), static_cast<int>(exps[1]), static_cast<int>(exps[2]), 0),
                          static_cast<int>(n)};
    } else {
      throw DocumentError("equation must be a string or an object");
    }
  }
  return NormalizedGerm(mbar, d, series, weights, ords, eq);
}

NormalizedGerm parse_germ_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DocumentError(std::string("malformed JSON: ") + e.what());
  }
  return germ_from_json(j);
}

Json to_json(const ValidationReport& r) {
  Json axioms = Json::array();
  for (const auto& a : r.axioms) {
    Json j{{"axiom", a.axiom}, {"pass", a.pass}, {"detail", a.detail}};
    j["witness"] = a.witness ? Json(a.witness->to_string()) : Json(nullptr);
    axioms.push_back(j);
  }
  return Json{{"normalized", r.normalized()}, {"axioms", axioms}};
}

namespace {

Json wp_json(const WPResult& w) {
  return Json{{"value", rational_json(w.value)}, {"t_order", w.t_order}, {"witness", w.witness.to_string()}};
}

}  // namespace

Json to_json(const InvariantReport& r) {
  Json j;
  j["wP"] = wp_json(r.wP);
  j["fc"] = rational_json(r.fc);
  j["singular"] = r.singular;
  Json ip{{"kind", to_string(r.ip_kind)}, {"value", rational_json(r.ip_value)},
          {"contribution", rational_json(ip_contribution(r))}};
  if (r.exact) {
    const auto& e = *r.exact;
    ip["exact"] = Json{{"value", rational_json(e.value)},
                       {"min_jacobian", e.min_jacobian},
                       {"equation", e.equation.to_string()},
                       {"pair", Json::array({e.pair[0].to_string(), e.pair[1].to_string()})},
                       {"wP_t_order", e.wP_t_order},
                       {"cap", e.cap},
                       {"boundary_hit", e.boundary_hit},
                       {"trace", string_list(e.trace)}};
  }
  if (r.lower) {
    const auto& l = *r.lower;
    Json triple = nullptr;
    if (l.triple) triple = Json::array({(*l.triple)[0].to_string(), (*l.triple)[1].to_string(), (*l.triple)[2].to_string()});
    ip["lower"] = Json{{"value", rational_json(l.value)},
                       {"min_value", l.min_value},
                       {"triple", triple},
                       {"wP_t_order", l.wP_t_order},
                       {"cap", l.cap},
                       {"boundary_hit", l.boundary_hit},
                       {"smooth", l.smooth}};
  }
  if (!r.unsupported_reason.empty()) ip["unsupported_reason"] = r.unsupported_reason;
  j["iP"] = ip;
  return j;
}

Json to_json(const GlobalReport& r) {
  return Json{{"anticanonical_degree", rational_json(r.anticanonical_degree)},
              {"sum_w", rational_json(r.sum_w)},
              {"sum_i", rational_json(r.sum_i)},
              {"budget_total", rational_json(r.budget_total)},
              {"deg_gr0_omega", rational_json(r.deg_gr0_omega)},
              {"deg_gr1_O", rational_json(r.deg_gr1_O)},
              {"singular_points", r.singular_points},
              {"budget_ok", r.budget_ok},
              {"deg_gr0_integral", r.deg_gr0_integral},
              {"deg_gr0_in_range", r.deg_gr0_in_range},
              {"deg_gr1_ok", r.deg_gr1_ok},
              {"point_count_ok", r.point_count_ok},
              {"all_pass", r.all_pass()},
              {"failures", string_list(r.failures())}};
}

namespace {

Json exclusion_json(const Exclusion& e) {
  Json j{{"germ", germ_to_json(e.germ)},
         {"describe", e.germ.describe()},
         {"branch", e.branch},
         {"failed", e.failed},
         {"certificate", Json{{"kind", e.certificate.kind}, {"lines", string_list(e.certificate.lines)}}}};
  if (e.invariants) j["invariants"] = to_json(*e.invariants);
  return j;
}

}  // namespace

Json to_json(const SurvivorReport& r) {
  Json survivors = Json::array();
  for (const auto& s : r.survivors)
    survivors.push_back(Json{{"germ", germ_to_json(s.germ)},
                             {"describe", s.germ.describe()},
                             {"branch", s.branch},
                             {"tag", s.tag},
                             {"invariants", to_json(s.invariants)},
                             {"global", to_json(s.global)}});
  Json excluded = Json::array();
  for (const auto& e : r.excluded) excluded.push_back(exclusion_json(e));
  Json inconclusive = Json::array();
  for (const auto& e : r.inconclusive) inconclusive.push_back(exclusion_json(e));
  Json caps{{"order_cap", r.order_cap}, {"pair_sum_cap", r.pair_sum_cap}};
  caps["generator_cap"] = r.generator_cap ? Json(*r.generator_cap) : Json(nullptr);
  return Json{{"mbar", r.mbar},
              {"d", r.d},
              {"mode", to_string(r.mode)},
              {"caps", caps},
              {"candidate_count", r.candidate_count()},
              {"survivors", survivors},
              {"excluded", excluded},
              {"inconclusive", inconclusive},
              {"unmatched", string_list(r.unmatched())}};
}

Json to_json(const EquivarianceReport& r) {
  Json scalars = Json::array();
  for (const auto& row : r.scalars) {
    Json jr = Json::array();
    for (const auto& c : row) jr.push_back(c.to_string());
    scalars.push_back(jr);
  }
  return Json{{"ok", r.ok},
              {"scalars", scalars},
              {"residuals", string_list(r.residuals)},
              {"invertible", r.invertible},
              {"order_identity", r.order_identity},
              {"lines", string_list(r.lines)}};
}

Json to_json(const FiberDecomposition& r) {
  Json comps = Json::array();
  for (const auto& c : r.components) {
    Json eqs = Json::array();
    for (const auto& f : c.equations) eqs.push_back(to_string(f));
    comps.push_back(Json{{"equations", eqs}, {"dimension", c.dimension}, {"text", c.to_string()}});
  }
  return Json{{"count", r.count()}, {"components", comps}, {"multiplicity_notes", string_list(r.multiplicity_notes)}};
}

Json to_json(const FixedPointReport& r) {
  Json cands = Json::array();
  for (const auto& c : r.candidates) {
    Json j{{"label", c.label}, {"fixed", c.fixed}, {"on_family", c.on_family}, {"lines", string_list(c.lines)}};
    j["jacobian_rank"] = c.jacobian_rank ? Json(*c.jacobian_rank) : Json(nullptr);
    cands.push_back(j);
  }
  Json eig = Json::array();
  for (const auto& e : r.eigenspaces) {
    Json basis = Json::array();
    for (const auto& v : e.basis) {
      Json jv = Json::array();
      for (const auto& c : v) jv.push_back(c.to_string());
      basis.push_back(jv);
    }
    eig.push_back(Json{{"power", e.power}, {"eigenvalue_exponent", e.exponent}, {"basis", basis}});
  }
  Json pts = Json::array();
  for (const auto& p : r.isolated_on_family) pts.push_back(p.to_string());
  return Json{{"candidates", cands},
              {"eigenspaces", eig},
              {"uv_fixed", string_list(r.uv_fixed)},
              {"isolated_on_family", pts},
              {"all_pass", r.all_pass()},
              {"lines", string_list(r.lines)}};
}

}  // namespace tgerm
