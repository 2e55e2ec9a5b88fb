#include "tgerm/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "tgerm/classification.hpp"
#include "tgerm/duval.hpp"
#include "tgerm/example_verifier.hpp"
#include "tgerm/invariants.hpp"

namespace tgerm {

namespace {

const char* kUsage =
    "usage: tgerm <command> [options]\n"
    "commands:\n"
    "  invariants      --germ NAME|FILE [--cap N] [--extra-gorenstein N] [--json]\n"
    "  classify        --mbar N --d N [--mode strict|binomial] [--cap N] [--generator-cap N] [--threads N] [--json]\n"
    "  duval           --cyclic N Q | --catanese [-k K] | --index-check M TYPE | --cover CLASS K [M]  [--json]\n"
    "  verify-example  --family NAME|FILE [-k K] [--json]\n";

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parses the options of one command; returns an outcome when parsing
/// ended the run (help or error).
std::optional<CliOutcome> parse_options(CLI::App& app, const std::vector<std::string>& args) {
  std::vector<std::string> rev(args.begin() + 1, args.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    CliOutcome o;
    o.out = app.help();
    return o;
  } catch (const CLI::ParseError& e) {
    CliOutcome o;
    o.exit_code = exit_code::kParseError;
    o.err = std::string(e.what()) + "\n";
    return o;
  }
  return std::nullopt;
}

Json envelope(const std::string& command, Json inputs) {
  return Json{{"schema_version", kReportSchemaVersion}, {"command", command}, {"inputs", std::move(inputs)}};
}

void finish(CliOutcome& o, bool json, const std::string& text) {
  o.report["pass"] = o.exit_code == exit_code::kPass;
  o.report["exit_code"] = o.exit_code;
  o.out = json ? o.report.dump(2) + "\n" : text;
}

std::string r2s(const Rational& r) { return to_string(r); }

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

// ---------------------------------------------------------------------------

std::string invariants_text(const NormalizedGerm& germ, const InvariantReport& r, const GlobalReport& g) {
  std::ostringstream os;
  os << "germ: " << germ.describe() << "\n";
  os << "wP: " << r2s(r.wP.value) << " (witness " << r.wP.witness.to_string() << ", t-order " << r.wP.t_order
     << ")\n";
  os << "fc: " << r2s(r.fc) << "\n";
  os << "iP: " << r2s(r.ip_value) << " [" << to_string(r.ip_kind) << "]";
  if (r.ip_kind != IPKind::Exact) os << ", contribution " << r2s(ip_contribution(r));
  os << "\n";
  if (!r.unsupported_reason.empty()) os << "  " << r.unsupported_reason << "\n";
  if (r.exact) {
    const auto& e = *r.exact;
    os << "  equation " << e.equation.to_string() << ", pair " << e.pair[0].to_string() << " ; "
       << e.pair[1].to_string() << ", min " << e.min_jacobian << ", cap " << e.cap
       << (e.boundary_hit ? " (boundary hit)" : "") << "\n";
    for (const auto& l : e.trace) os << "  " << l << "\n";
  }
  if (r.lower && !r.exact) {
    const auto& l = *r.lower;
    os << "  lower-bound min " << l.min_value << ", cap " << l.cap << (l.boundary_hit ? " (boundary hit)" : "");
    if (l.triple) os << ", triple " << (*l.triple)[0].to_string() << ", " << (*l.triple)[1].to_string() << ", "
                     << (*l.triple)[2].to_string();
    os << "\n";
  }
  os << "global: total " << r2s(g.budget_total) << " <= 4 " << (g.budget_ok ? "ok" : "FAILS") << ", deg gr0 omega "
     << r2s(g.deg_gr0_omega) << ", deg gr1 O " << r2s(g.deg_gr1_O) << ", singular points " << g.singular_points
     << "\n";
  for (const auto& f : g.failures()) os << "  failed: " << f << "\n";
  return os.str();
}

CliOutcome cmd_invariants(const std::vector<std::string>& args) {
  CLI::App app{"local invariants of a germ", "tgerm invariants"};
  std::string germ_spec;
  std::optional<std::int64_t> cap;
  int extra = 0;
  bool json = false;
  app.add_option("--germ", germ_spec, "builtin germ name or germ document path")->required();
  app.add_option("--cap", cap, "generator order cap for the i_P searches");
  app.add_option("--extra-gorenstein", extra, "extra Gorenstein points on the fiber")->check(CLI::Range(0, 3));
  app.add_flag("--json", json);
  if (auto early = parse_options(app, args)) return *early;

  CliOutcome o;
  Json inputs{{"germ", germ_spec}, {"extra_gorenstein", extra}};
  inputs["cap"] = cap ? Json(*cap) : Json(nullptr);
  o.report = envelope("invariants", inputs);
  std::optional<NormalizedGerm> germ;
  try {
    germ = load_germ(germ_spec);
  } catch (const GermError& e) {
    o.exit_code = exit_code::kValidationFailure;
    o.err = std::string("invalid germ: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    o.exit_code = exit_code::kParseError;
    o.err = std::string(e.what()) + "\n";
  }
  if (!germ) {
    o.report["error"] = o.err;
    finish(o, json, "");
    return o;
  }
  Json results;
  results["germ"] = germ_to_json(*germ);
  const auto validation = validate(*germ);
  results["validation"] = to_json(validation);
  if (!validation.normalized()) {
    const auto* f = validation.first_failure();
    o.exit_code = exit_code::kValidationFailure;
    o.err = "validation failed: axiom " + f->axiom + ": " + f->detail + "\n";
    o.report["results"] = results;
    finish(o, json, o.err);
    return o;
  }
  std::string text;
  try {
    SearchOptions opts;
    opts.cap = cap;
    opts.keep_trace = true;
    const auto inv = compute_invariants(*germ, opts);
    const auto preds = structural_predicates(*germ);
    const auto global = global_check(std::vector<InvariantReport>{inv}, extra, preds.anticanonical_degree);
    results["invariants"] = to_json(inv);
    results["global"] = to_json(global);
    text = invariants_text(*germ, inv, global);
    if (!global.all_pass()) o.exit_code = exit_code::kFailedCheck;
  } catch (const SearchExhausted& e) {
    o.exit_code = exit_code::kFailedCheck;
    results["error"] = e.what();
    text = std::string("search exhausted: ") + e.what() + "\n";
  }
  o.report["results"] = results;
  finish(o, json, text);
  return o;
}

// ---------------------------------------------------------------------------

CliOutcome cmd_classify(const std::vector<std::string>& args) {
  CLI::App app{"bounded classification of a cell", "tgerm classify"};
  std::int64_t mbar = 0, d = 0;
  std::string mode_text = "binomial";
  std::optional<std::int64_t> cap, gen_cap;
  unsigned threads = 0;
  bool json = false;
  app.add_option("--mbar", mbar)->required()->check(CLI::Range(std::int64_t{1}, std::int64_t{64}));
  app.add_option("--d", d)->required()->check(CLI::Range(std::int64_t{1}, std::int64_t{64}));
  app.add_option("--mode", mode_text, "strict or binomial");
  app.add_option("--cap", cap, "bound on each of a1, a2, a3 and on a1 + a2 (default 3*mbar)");
  app.add_option("--generator-cap", gen_cap, "generator order cap for the i_P searches");
  app.add_option("--threads", threads);
  app.add_flag("--json", json);
  if (auto early = parse_options(app, args)) return *early;

  CliOutcome o;
  const auto mode = parse_filter_mode(mode_text);
  if (!mode) {
    o.exit_code = exit_code::kParseError;
    o.err = "unknown mode \"" + mode_text + "\" (strict or binomial)\n";
    return o;
  }
  Json inputs{{"mbar", mbar}, {"d", d}, {"mode", to_string(*mode)}};
  inputs["cap"] = cap ? Json(*cap) : Json(nullptr);
  inputs["generator_cap"] = gen_cap ? Json(*gen_cap) : Json(nullptr);
  o.report = envelope("classify", inputs);
  Caps caps;
  caps.order_cap = cap;
  caps.pair_sum_cap = cap;
  caps.generator_cap = gen_cap;
  caps.threads = threads;
  const auto rep = classify(mbar, d, *mode, caps);
  o.report["results"] = to_json(rep);
  if (!rep.inconclusive.empty()) o.exit_code = exit_code::kFailedCheck;

  std::ostringstream os;
  os << "cell mbar=" << mbar << " d=" << d << " mode=" << to_string(*mode) << " order-cap " << rep.order_cap
     << " pair-sum-cap " << rep.pair_sum_cap << "\n";
  os << "candidates " << rep.candidate_count() << ": survivors " << rep.survivors.size() << ", excluded "
     << rep.excluded.size() << ", inconclusive " << rep.inconclusive.size() << "\n";
  for (const auto& s : rep.survivors)
    os << "survivor " << s.germ.describe() << " [" << s.tag << "] " << s.branch << " wP " << r2s(s.invariants.wP.value)
       << " iP " << r2s(ip_contribution(s.invariants)) << " total " << r2s(s.global.budget_total) << "\n";
  for (const auto* list : {&rep.excluded, &rep.inconclusive})
    for (const auto& e : *list) {
      os << (list == &rep.excluded ? "excluded " : "inconclusive ") << e.germ.describe() << " (" << e.failed << ")\n";
      for (const auto& l : e.certificate.lines) os << "  " << l << "\n";
    }
  finish(o, json, os.str());
  return o;
}

// ---------------------------------------------------------------------------

CliOutcome cmd_duval(const std::vector<std::string>& args) {
  CLI::App app{"surface singularity toolkit", "tgerm duval"};
  std::vector<std::int64_t> cyclic;
  bool catanese = false;
  std::vector<std::string> index_check, cover;
  std::optional<int> k;
  bool json = false;
  app.add_option("--cyclic", cyclic, "N Q: resolve 1/N(1,Q)")->expected(2);
  app.add_flag("--catanese", catanese, "involution quotient table");
  app.add_option("-k", k, "instantiate table rows at k");
  app.add_option("--index-check", index_check, "M TYPE")->expected(2);
  app.add_option("--cover", cover, "CLASS K [M]")->expected(2, 3);
  app.add_flag("--json", json);
  if (auto early = parse_options(app, args)) return *early;

  CliOutcome o;
  if (cyclic.empty() && !catanese && index_check.empty() && cover.empty()) {
    o.exit_code = exit_code::kParseError;
    o.err = "duval needs one of --cyclic, --catanese, --index-check, --cover\n";
    return o;
  }
  Json inputs;
  if (!cyclic.empty()) inputs["cyclic"] = cyclic;
  if (catanese) inputs["catanese"] = true;
  if (k) inputs["k"] = *k;
  if (!index_check.empty()) inputs["index_check"] = index_check;
  if (!cover.empty()) inputs["cover"] = cover;
  o.report = envelope("duval", inputs);
  Json results;
  std::ostringstream os;
  try {
    if (!cyclic.empty()) {
      const CyclicQuot cq(cyclic[0], cyclic[1]);
      const auto chain = hj_expand(cq.n, cq.q);
      const auto graph = dual_graph(cq);
      const auto back = hj_fold(chain);
      results["cyclic"] = Json{{"point", cq.to_string()},
                               {"chain", chain},
                               {"self_intersections", graph.self_intersections},
                               {"fold_back", Json::array({back.first, back.second})},
                               {"index", topological_index(cq)}};
      std::vector<std::string> parts;
      for (auto b : graph.self_intersections) parts.push_back(std::to_string(b));
      os << cq.to_string() << ": chain [" << join(parts, ", ") << "], fold-back " << back.first << "/" << back.second
         << "\n";
      if (back.first != cq.n || back.second != cq.q) o.exit_code = exit_code::kFailedCheck;
    }
    if (catanese) {
      Json rows = Json::array();
      for (const auto& row : catanese_table()) {
        Json jr{{"row", row.number}, {"cover", row.cover}, {"quotient", row.quotient}, {"min_k", row.min_k}};
        os << "row " << row.number << ": " << row.cover << " -> " << row.quotient;
        if (k) {
          try {
            const auto c = catanese_cover(row.number, *k);
            const auto qt = catanese_quotient(c, row.number);
            jr["instance"] = Json{{"cover", c.to_string()}, {"quotient", to_string(qt)}};
            os << "   [k=" << *k << ": " << c.to_string() << " -> " << to_string(qt) << "]";
          } catch (const std::invalid_argument& e) {
            jr["instance"] = nullptr;
            os << "   [k=" << *k << ": n/a]";
          }
        }
        os << "\n";
        rows.push_back(jr);
      }
      results["catanese"] = rows;
    }
    if (!index_check.empty()) {
      std::int64_t m = 0;
      try {
        m = std::stoll(index_check[0]);
      } catch (const std::exception&) {
        o.exit_code = exit_code::kParseError;
        o.err = "--index-check needs an integer index, got \"" + index_check[0] + "\"\n";
        return o;
      }
      const auto type = parse_duval(index_check[1]);
      if (!type) {
        o.exit_code = exit_code::kParseError;
        o.err = "unknown DuVal type \"" + index_check[1] + "\"\n";
        return o;
      }
      const auto verdict = index_divisibility_check(m, *type);
      results["index_check"] = Json{{"m", m}, {"type", type->to_string()}, {"verdict", to_string(verdict)},
                                    {"topological_index", topological_index(*type)}};
      os << "index check m=" << m << " " << type->to_string() << ": " << to_string(verdict) << "\n";
      if (verdict == IndexVerdict::Fail) o.exit_code = exit_code::kFailedCheck;
    }
    if (!cover.empty()) {
      const auto cls = parse_terminal_class(cover[0]);
      if (!cls) {
        o.exit_code = exit_code::kParseError;
        o.err = "unknown terminal class \"" + cover[0] + "\"\n";
        return o;
      }
      std::int64_t kk = 0, m = 2;
      try {
        kk = std::stoll(cover[1]);
        if (cover.size() == 3) m = std::stoll(cover[2]);
      } catch (const std::exception&) {
        o.exit_code = exit_code::kParseError;
        o.err = "--cover needs integer K and M\n";
        return o;
      }
      const auto row = canonical_cover_row(*cls, kk, m);
      results["cover"] = Json{{"class", to_string(row.cls)},
                              {"index", row.index},
                              {"exceptional_series", row.exceptional_series},
                              {"cover", to_string(row.cover)},
                              {"base", to_string(row.base)},
                              {"degree", row.degree}};
      os << to_string(row.cls) << " k=" << kk << ": cover " << to_string(row.cover) << ", base "
         << to_string(row.base) << ", index " << row.index << "\n";
    }
  } catch (const std::invalid_argument& e) {
    o.exit_code = exit_code::kValidationFailure;
    o.err = std::string(e.what()) + "\n";
    o.report["error"] = e.what();
  }
  o.report["results"] = results;
  finish(o, json, os.str());
  return o;
}

// ---------------------------------------------------------------------------

CliOutcome cmd_verify(const std::vector<std::string>& args) {
  CLI::App app{"check an equivariant family", "tgerm verify-example"};
  std::string family_spec;
  std::optional<std::int64_t> k;
  bool json = false;
  app.add_option("--family", family_spec, "builtin family name or family file")->required();
  app.add_option("-k", k, "family parameter");
  app.add_flag("--json", json);
  if (auto early = parse_options(app, args)) return *early;

  CliOutcome o;
  Json inputs{{"family", family_spec}};
  inputs["k"] = k ? Json(*k) : Json(nullptr);
  o.report = envelope("verify-example", inputs);
  std::optional<EquivariantFamily> fam;
  try {
    const auto& names = builtin_example_names();
    if (std::find(names.begin(), names.end(), family_spec) != names.end())
      fam = builtin_example(family_spec, k);
    else if (std::filesystem::exists(family_spec))
      fam = parse_family(read_file(family_spec), k);
    else
      throw ParseError("no builtin family or file named \"" + family_spec + "\"");
  } catch (const FamilyError& e) {
    o.exit_code = exit_code::kValidationFailure;
    o.err = std::string(e.what()) + "\n";
  } catch (const std::exception& e) {
    o.exit_code = exit_code::kParseError;
    o.err = std::string(e.what()) + "\n";
  }
  if (!fam) {
    o.report["error"] = o.err;
    finish(o, json, "");
    return o;
  }

  Json results;
  std::ostringstream os;
  os << "family " << fam->name << " (order " << fam->order << ")\n";
  Json gens = Json::array();
  for (std::size_t i = 0; i < fam->generators.size(); ++i) {
    gens.push_back(fam->generators[i].to_string());
    os << "g" << i + 1 << " = " << fam->generators[i].to_string() << "\n";
  }
  results["generators"] = gens;

  bool pass = true;
  const auto eq = check_ideal_equivariance(*fam);
  results["equivariance"] = to_json(eq);
  for (const auto& l : eq.lines) os << l << "\n";
  pass = pass && eq.ok;

  bool order_ok = true;
  for (const auto& g : fam->generators)
    if (!(apply_action_power(g, fam->action, fam->order) == g)) order_ok = false;
  results["action_order_identity"] = order_ok;
  os << "sigma^" << fam->order << (order_ok ? " fixes" : " does not fix") << " every generator\n";
  pass = pass && order_ok;

  try {
    const auto fiber = central_fiber_components(*fam);
    results["central_fiber"] = to_json(fiber);
    os << "central fiber: " << fiber.count() << " component" << (fiber.count() == 1 ? "" : "s") << "\n";
    for (const auto& c : fiber.components) os << "  " << c.to_string() << "\n";
    for (const auto& n : fiber.multiplicity_notes) os << "  note: " << n << "\n";
  } catch (const UnsupportedShape& e) {
    results["central_fiber"] = Json{{"unsupported", e.what()}};
    os << "central fiber: unsupported shape: " << e.what() << "\n";
    pass = false;
  }

  const auto fixed = fixed_points_check(*fam);
  results["fixed_points"] = to_json(fixed);
  for (const auto& c : fixed.candidates)
    for (const auto& l : c.lines) os << "[" << c.label << "] " << l << "\n";
  for (const auto& l : fixed.lines) os << l << "\n";
  for (const auto& l : fixed.uv_fixed) os << l << "\n";
  pass = pass && fixed.all_pass();

  if (!pass) o.exit_code = exit_code::kFailedCheck;
  o.report["results"] = results;
  finish(o, json, os.str());
  return o;
}

}  // namespace

NormalizedGerm load_germ(const std::string& spec) {
  if (auto g = builtin_germ(spec)) return *g;
  if (!std::filesystem::exists(spec))
    throw DocumentError("no builtin germ or file named \"" + spec + "\" (builtins: " + join(builtin_germ_names(), ", ") +
                        ")");
  return parse_germ_document(read_file(spec));
}

CliOutcome run(const std::vector<std::string>& args) {
  if (args.empty() || args[0] == "--help" || args[0] == "-h") {
    CliOutcome o;
    o.exit_code = args.empty() ? exit_code::kUnknownCommand : exit_code::kPass;
    (args.empty() ? o.err : o.out) = kUsage;
    return o;
  }
  const auto& cmd = args[0];
  if (cmd == "invariants") return cmd_invariants(args);
  if (cmd == "classify") return cmd_classify(args);
  if (cmd == "duval") return cmd_duval(args);
  if (cmd == "verify-example") return cmd_verify(args);
  CliOutcome o;
  o.exit_code = exit_code::kUnknownCommand;
  o.err = "unknown command \"" + cmd + "\"\n" + kUsage;
  return o;
}

}  // namespace tgerm
