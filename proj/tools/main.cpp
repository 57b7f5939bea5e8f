// Command-line front end: resolves names through the registry, runs the
// requested analysis and emits deterministic JSON or CSV reports.
//
// Exit codes: 0 when a verdict or curve was computed (refuted verdicts are
// still exit 0), 2 for invalid input of any kind, 3 when an evaluation left
// the finite horizon.

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wsq/assoc.hpp"
#include "wsq/checks.hpp"
#include "wsq/defs.hpp"
#include "wsq/errors.hpp"
#include "wsq/sequence.hpp"
#include "wsq/spaces.hpp"
#include "wsq/weight.hpp"

namespace {

using nlohmann::ordered_json;

struct GlobalOpts {
  std::string defs_path;
  std::string out_path;
  std::string format;  // empty = per-command default
  int horizon = 0;     // 0 = no override
  int grid = 0;
};

// Settings precedence: defaults, then the definition file, then the flags.
// The file is parsed once; its settings block is applied before the flag
// overrides and stripped before registry construction so the flags win.
wsq::Registry make_registry(const GlobalOpts& g) {
  nlohmann::json doc = nlohmann::json::object();
  if (!g.defs_path.empty()) {
    std::ifstream in(g.defs_path);
    if (!in)
      wsq::fail(wsq::errc::invalid_parameter,
                "cannot open definition file '" + g.defs_path + "'");
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      wsq::fail(wsq::errc::invalid_parameter,
                "definition file '" + g.defs_path + "' is not valid JSON: " + e.what());
    }
  }
  wsq::Settings eff;
  if (doc.is_object() && doc.contains("settings"))
    eff = wsq::settings_from_json(doc.at("settings"), eff);
  if (g.horizon > 0) eff.horizon = g.horizon;
  if (g.grid > 0) eff.grid_points = g.grid;
  if (doc.is_object()) doc.erase("settings");
  return wsq::parse_definitions(doc, eff);
}

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out_path, std::ios::binary | std::ios::trunc);
  if (!out)
    wsq::fail(wsq::errc::invalid_parameter, "cannot open output file '" + g.out_path + "'");
  out << text;
}

// Report envelope shared by every JSON-producing command.
ordered_json envelope(const wsq::Registry& reg, const std::string& command) {
  ordered_json j;
  j["schema"] = "wsq-report/1";
  j["command"] = command;
  j["settings"] = wsq::settings_json(reg.settings);
  return j;
}

void emit_json(const GlobalOpts& g, const ordered_json& j) { emit(g, j.dump(2) + "\n"); }

void emit_csv(const GlobalOpts& g, const wsq::CurveSample& curve) {
  std::ostringstream os;
  wsq::write_csv(curve, os);
  emit(g, os.str());
}

std::string pick_format(const GlobalOpts& g, const char* fallback) {
  return g.format.empty() ? fallback : g.format;
}

// Index-indexed CSV view of a log sequence.
wsq::CurveSample sequence_curve(const wsq::LogSequence& m) {
  wsq::CurveSample c;
  c.label = "log_value";
  for (int j = 0; j <= m.horizon(); ++j) {
    c.t.push_back(double(j));
    c.value.push_back(m.log_value(j));
  }
  return c;
}

// Structural flags are exact on the stored horizon, so they become proved or
// refuted rather than horizon-qualified verdicts.
wsq::Verdict flag_verdict(bool value, const std::string& rule, const wsq::LogSequence& m) {
  wsq::Verdict v;
  v.status = value ? wsq::VerdictStatus::proved : wsq::VerdictStatus::refuted;
  v.rule = rule;
  v.horizon_used = m.horizon();
  v.notes.push_back("structural flag evaluated on the stored horizon");
  return v;
}

ordered_json sequence_summary(const std::string& name, const wsq::LogSequence& m) {
  ordered_json j;
  j["name"] = name;
  j["family"] = family_label(m.family());
  j["horizon"] = m.horizon();
  j["log_convex"] = m.log_convex();
  j["lc"] = m.lc();
  j["weight_sequence"] = m.weight_sequence_on_horizon();
  return j;
}

// ---------------------------------------------------------------------------
// Subcommand bodies.

void run_seq(const wsq::Registry& reg, const GlobalOpts& g, const std::string& name,
             const std::vector<std::string>& requested) {
  const wsq::LogSequence m = wsq::resolve_sequence(reg, name);
  if (pick_format(g, "json") == "csv") {
    emit_csv(g, sequence_curve(m));
    return;
  }
  // Canonical check order; an explicit request may include om1char on a
  // non-lc sequence and will surface its prerequisite error (exit 2).
  std::vector<std::string> order;
  if (requested.empty()) {
    order = {"logconvex", "LC", "mg"};
    if (m.lc()) order.push_back("om1char");
  } else {
    const std::set<std::string> want(requested.begin(), requested.end());
    for (const char* c : {"logconvex", "LC", "mg", "om1char"})
      if (want.count(c)) order.push_back(c);
  }
  ordered_json checks = ordered_json::object();
  for (const std::string& c : order) {
    if (c == "logconvex")
      checks[c] = wsq::verdict_json(flag_verdict(m.log_convex(), "logconvex", m));
    else if (c == "LC")
      checks[c] = wsq::verdict_json(flag_verdict(m.lc(), "LC", m));
    else if (c == "mg")
      checks[c] = wsq::verdict_json(wsq::check_mg(m, reg.settings));
    else
      checks[c] = wsq::verdict_json(wsq::check_om1_char(m, reg.settings));
  }
  ordered_json j = envelope(reg, "seq");
  j["sequence"] = sequence_summary(name, m);
  j["checks"] = checks;
  emit_json(g, j);
}

void run_omega(const wsq::Registry& reg, const GlobalOpts& g, const std::string& name,
               double tmin, double tmax, int points) {
  const wsq::LogSequence m = wsq::resolve_sequence(reg, name);
  if (tmax <= 0.0) tmax = wsq::default_grid(m, reg.settings).back();
  if (points <= 0) points = reg.settings.grid_points;
  const wsq::CurveSample curve = wsq::omega_curve(m, tmin, tmax, points);
  if (pick_format(g, "csv") == "csv") {
    emit_csv(g, curve);
    return;
  }
  ordered_json j = envelope(reg, "omega");
  j["sequence"] = name;
  j["t"] = curve.t;
  j["omega"] = curve.value;
  emit_json(g, j);
}

void run_assoc(const wsq::Registry& reg, const GlobalOpts& g, const std::string& name) {
  const wsq::Weight v = wsq::resolve_weight(reg, name);
  const wsq::LogSequence m = wsq::assoc_sequence(v, reg.settings.horizon, reg.settings);
  if (pick_format(g, "json") == "csv") {
    emit_csv(g, sequence_curve(m));
    return;
  }
  ordered_json j = envelope(reg, "assoc");
  j["weight"] = v.describe();
  j["sequence"] = wsq::sequence_json(name, m);
  emit_json(g, j);
}

void run_compare(const wsq::Registry& reg, const GlobalOpts& g, const std::string& uname,
                 const std::string& wname, const std::string& kind) {
  const wsq::Weight u = wsq::resolve_weight(reg, uname);
  const wsq::Weight w = wsq::resolve_weight(reg, wname);
  const wsq::WeightRelation rel = kind == "plain"        ? wsq::WeightRelation::plain
                                  : kind == "dilatation" ? wsq::WeightRelation::dilatation
                                                         : wsq::WeightRelation::exponential;
  ordered_json j = envelope(reg, "compare");
  j["u"] = uname;
  j["w"] = wname;
  j["kind"] = kind;
  j["verdict"] = wsq::verdict_json(wsq::check_weight_relation(u, w, rel, reg.settings));
  emit_json(g, j);
}

void run_include(const wsq::Registry& reg, const GlobalOpts& g, const std::string& aname,
                 const std::string& bname) {
  const wsq::SpaceSpec a = wsq::resolve_space(reg, aname);
  const wsq::SpaceSpec b = wsq::resolve_space(reg, bname);
  ordered_json j = envelope(reg, "include");
  j["a"] = aname;
  j["b"] = bname;
  j["verdict"] = wsq::verdict_json(wsq::decide_inclusion(a, b, reg.settings));
  emit_json(g, j);
}

void run_closure(const wsq::Registry& reg, const GlobalOpts& g, const std::string& name) {
  const wsq::SpaceSpec a = wsq::resolve_space(reg, name);
  ordered_json j = envelope(reg, "closure");
  j["space"] = name;
  j["verdict"] = wsq::verdict_json(wsq::decide_mult_closure(a, reg.settings));
  emit_json(g, j);
}

void run_convolve(const wsq::Registry& reg, const GlobalOpts& g, const std::string& aname,
                  const std::string& bname) {
  const wsq::LogSequence a = wsq::resolve_sequence(reg, aname);
  const wsq::LogSequence b = wsq::resolve_sequence(reg, bname);
  const wsq::LogSequence m = wsq::convolve(a, b);
  if (pick_format(g, "json") == "csv") {
    emit_csv(g, sequence_curve(m));
    return;
  }
  ordered_json j = envelope(reg, "convolve");
  j["a"] = aname;
  j["b"] = bname;
  j["sequence"] = wsq::sequence_json(aname + " * " + bname, m);
  emit_json(g, j);
}

void run_report(const wsq::Registry& reg, const GlobalOpts& g) {
  if (pick_format(g, "json") != "json")
    wsq::fail(wsq::errc::invalid_parameter, "the full report is JSON only");
  emit_json(g, wsq::report_full(reg));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted-space sequence toolbox"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--defs", g.defs_path, "JSON definition file layered over the builtins");
  app.add_option("--horizon", g.horizon, "index horizon override")
      ->check(CLI::Range(8, 100000));
  app.add_option("--grid", g.grid, "evaluation grid size override")
      ->check(CLI::Range(2, 100000));
  app.add_option("--out", g.out_path, "write output to this file instead of stdout");
  app.add_option("--format", g.format, "output format (json or csv)")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* seq = app.add_subcommand("seq", "structural flags and growth checks of a sequence");
  std::string seq_name;
  std::vector<std::string> seq_checks;
  seq->add_option("name", seq_name, "sequence name or inline descriptor")->required();
  seq->add_option("--check", seq_checks, "run only these checks")
      ->check(CLI::IsMember({"logconvex", "LC", "mg", "om1char"}));

  auto* omega = app.add_subcommand("omega", "sample the weight function of a sequence");
  std::string omega_name;
  double omega_tmin = 0.5, omega_tmax = 0.0;
  int omega_points = 0;
  omega->add_option("name", omega_name, "sequence name or inline descriptor")->required();
  omega->add_option("--tmin", omega_tmin, "first abscissa (default 0.5)");
  omega->add_option("--tmax", omega_tmax, "last abscissa (default: end of the default grid)");
  omega->add_option("--points", omega_points, "sample count (default: grid setting)")
      ->check(CLI::Range(2, 1000000));

  auto* assoc = app.add_subcommand("assoc", "associated sequence of a weight");
  std::string assoc_name;
  assoc->add_option("name", assoc_name, "weight name or inline descriptor")->required();

  auto* compare = app.add_subcommand("compare", "pairwise weight comparison on a shared grid");
  std::string cmp_u, cmp_w, cmp_kind = "plain";
  compare->add_option("u", cmp_u, "reference weight")->required();
  compare->add_option("w", cmp_w, "compared weight")->required();
  compare->add_option("--kind", cmp_kind, "relation kind (default plain)")
      ->check(CLI::IsMember({"plain", "dilatation", "exponential"}));

  auto* include = app.add_subcommand("include", "decide inclusion between two spaces");
  std::string inc_a, inc_b;
  include->add_option("a", inc_a, "candidate subspace descriptor")->required();
  include->add_option("b", inc_b, "candidate superspace descriptor")->required();

  auto* closure = app.add_subcommand("closure", "multiplicative closure of a space");
  std::string clo_spec, clo_source;
  closure->add_option("space", clo_spec, "space descriptor, or a system when a source follows")
      ->required();
  closure->add_option("source", clo_source, "sequence or weight name joined to the system");

  auto* convolve = app.add_subcommand("convolve", "infimal convolution of two sequences");
  std::string cv_a, cv_b;
  convolve->add_option("a", cv_a, "first sequence")->required();
  convolve->add_option("b", cv_b, "second sequence")->required();

  auto* report = app.add_subcommand("report", "full survey of every registry entry");

  for (CLI::App* sub : {seq, omega, assoc, compare, include, closure, convolve, report})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // --help and --version exit 0, everything else 2
  }

  try {
    const wsq::Registry reg = make_registry(g);
    if (seq->parsed())
      run_seq(reg, g, seq_name, seq_checks);
    else if (omega->parsed())
      run_omega(reg, g, omega_name, omega_tmin, omega_tmax, omega_points);
    else if (assoc->parsed())
      run_assoc(reg, g, assoc_name);
    else if (compare->parsed())
      run_compare(reg, g, cmp_u, cmp_w, cmp_kind);
    else if (include->parsed())
      run_include(reg, g, inc_a, inc_b);
    else if (closure->parsed())
      run_closure(reg, g, clo_source.empty() ? clo_spec : clo_spec + ":" + clo_source);
    else if (convolve->parsed())
      run_convolve(reg, g, cv_a, cv_b);
    else if (report->parsed())
      run_report(reg, g);
    return 0;
  } catch (const wsq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == wsq::errc::horizon_exceeded ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
