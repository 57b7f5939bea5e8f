#include "wsq/defs.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "wsq/checks.hpp"
#include "wsq/errors.hpp"

namespace wsq {

namespace {

constexpr const char* kDefsSchema = "wsq-defs/1";
constexpr const char* kReportSchema = "wsq-report/1";

// ---------------------------------------------------------------------------
// JSON field access with error messages that name the offending key.

const nlohmann::json& field(const nlohmann::json& spec, const std::string& key,
                            const std::string& context) {
  if (!spec.contains(key))
    fail(errc::invalid_parameter, context + " is missing the key '" + key + "'");
  return spec.at(key);
}

std::string str_field(const nlohmann::json& spec, const std::string& key,
                      const std::string& context) {
  const nlohmann::json& v = field(spec, key, context);
  if (!v.is_string()) fail(errc::invalid_parameter, context + "." + key + " must be a string");
  return v.get<std::string>();
}

double num_field(const nlohmann::json& spec, const std::string& key, const std::string& context) {
  const nlohmann::json& v = field(spec, key, context);
  if (!v.is_number()) fail(errc::invalid_parameter, context + "." + key + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(errc::invalid_parameter, context + "." + key + " must be finite");
  return x;
}

int int_field_or(const nlohmann::json& spec, const std::string& key, int fallback,
                 const std::string& context) {
  if (!spec.contains(key)) return fallback;
  const nlohmann::json& v = spec.at(key);
  if (!v.is_number_integer())
    fail(errc::invalid_parameter, context + "." + key + " must be an integer");
  const long long x = v.get<long long>();
  if (x < 8 || x > 100000)
    fail(errc::invalid_parameter, context + "." + key + " must lie in [8, 100000]");
  return static_cast<int>(x);
}

std::vector<double> array_field(const nlohmann::json& spec, const std::string& key,
                                const std::string& context) {
  const nlohmann::json& v = field(spec, key, context);
  if (!v.is_array()) fail(errc::invalid_parameter, context + "." + key + " must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const nlohmann::json& e : v) {
    if (!e.is_number())
      fail(errc::invalid_parameter, context + "." + key + " must hold numbers only");
    out.push_back(e.get<double>());
  }
  return out;
}

void restrict_keys(const nlohmann::json& spec, std::initializer_list<const char*> allowed,
                   const std::string& context) {
  for (const auto& item : spec.items()) {
    bool known = false;
    for (const char* k : allowed) known = known || item.key() == k;
    if (!known) fail(errc::invalid_parameter, context + " has an unknown key '" + item.key() + "'");
  }
}

// Inline descriptor parameters ("gevrey:1.5") must be a full, finite number.
double parse_number(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &pos);
  } catch (const std::exception&) {
    fail(errc::invalid_parameter, what + ": '" + text + "' is not a number");
  }
  if (pos != text.size() || !std::isfinite(x))
    fail(errc::invalid_parameter, what + ": '" + text + "' is not a finite number");
  return x;
}

// ---------------------------------------------------------------------------
// Definition-file entry builders.

// User-chosen names share one namespace with the builtins; ':' and ',' are
// reserved for inline descriptors.
void check_fresh_name(const Registry& reg, const std::string& name) {
  if (name.empty()) fail(errc::invalid_parameter, "definition names may not be empty");
  if (name.find_first_of(":,") != std::string::npos)
    fail(errc::invalid_parameter, "name '" + name + "' may not contain ':' or ','");
  if (reg.sequences.count(name) || reg.weights.count(name) || reg.spaces.count(name))
    fail(errc::invalid_parameter, "name '" + name + "' is already defined");
}

LogSequence build_sequence(const nlohmann::json& spec, const Settings& st,
                           const std::string& context) {
  if (!spec.is_object()) fail(errc::invalid_parameter, context + " must be a JSON object");
  const std::string family = str_field(spec, "family", context);
  if (family == "gevrey") {
    restrict_keys(spec, {"family", "s", "horizon"}, context);
    return make_gevrey(num_field(spec, "s", context),
                       int_field_or(spec, "horizon", st.horizon, context));
  }
  if (family == "qgevrey") {
    restrict_keys(spec, {"family", "q", "horizon"}, context);
    return make_qgevrey(num_field(spec, "q", context),
                        int_field_or(spec, "horizon", st.horizon, context));
  }
  if (family == "table") {
    restrict_keys(spec, {"family", "log_values"}, context);
    return make_table(array_field(spec, "log_values", context));
  }
  fail(errc::invalid_parameter,
       context + ": unknown sequence family '" + family + "' (expected gevrey, qgevrey or table)");
}

Weight::FlagOverrides parse_flag_overrides(const nlohmann::json& spec, const std::string& context) {
  if (!spec.is_object()) fail(errc::invalid_parameter, context + " must be a JSON object");
  restrict_keys(spec, {"normalized", "convex", "rapidly_decreasing", "moderate_growth"}, context);
  Weight::FlagOverrides o;
  auto pick = [&](const char* key, std::optional<bool>& slot) {
    if (!spec.contains(key)) return;
    if (!spec.at(key).is_boolean())
      fail(errc::invalid_parameter, context + "." + key + " must be a boolean");
    slot = spec.at(key).get<bool>();
  };
  pick("normalized", o.normalized);
  pick("convex", o.convex);
  pick("rapidly_decreasing", o.rapidly_decreasing);
  pick("moderate_growth", o.moderate_growth);
  return o;
}

Weight build_weight(const Registry& reg, const nlohmann::json& spec, const std::string& context) {
  if (!spec.is_object()) fail(errc::invalid_parameter, context + " must be a JSON object");
  const std::string family = str_field(spec, "family", context);
  Weight v = [&] {
    if (family == "exppower") {
      restrict_keys(spec, {"family", "a", "b", "flags"}, context);
      return Weight::exp_power(num_field(spec, "a", context), num_field(spec, "b", context));
    }
    if (family == "dilate") {
      restrict_keys(spec, {"family", "sequence", "c", "flags"}, context);
      return Weight::from_sequence_dilate(
          resolve_sequence(reg, str_field(spec, "sequence", context)),
          num_field(spec, "c", context));
    }
    if (family == "power") {
      restrict_keys(spec, {"family", "sequence", "c", "flags"}, context);
      return Weight::from_sequence_power(
          resolve_sequence(reg, str_field(spec, "sequence", context)),
          num_field(spec, "c", context));
    }
    if (family == "table") {
      restrict_keys(spec, {"family", "log_t", "log_v", "flags"}, context);
      return Weight::table(array_field(spec, "log_t", context),
                           array_field(spec, "log_v", context));
    }
    fail(errc::invalid_parameter, context + ": unknown weight family '" + family +
                                      "' (expected exppower, dilate, power or table)");
  }();
  if (spec.contains("flags"))
    v = Weight::with_flags(v, parse_flag_overrides(spec.at("flags"), context + ".flags"));
  return v;
}

// Space sources name a sequence first, a weight second; the two maps share a
// namespace, so at most one can match.
std::variant<LogSequence, Weight> resolve_source(const Registry& reg, const std::string& src,
                                                 const std::string& context) {
  try {
    return resolve_sequence(reg, src);
  } catch (const Error& e) {
    if (e.code() != errc::unresolved_name) throw;
  }
  try {
    return resolve_weight(reg, src);
  } catch (const Error& e) {
    if (e.code() != errc::unresolved_name) throw;
  }
  fail(errc::unresolved_name, context + ": source '" + src + "' names no sequence or weight");
}

SpaceSpec build_space(const Registry& reg, const std::string& name, const nlohmann::json& spec,
                      const std::string& context) {
  if (!spec.is_object()) fail(errc::invalid_parameter, context + " must be a JSON object");
  restrict_keys(spec, {"source", "system"}, context);
  const SystemKind system = parse_system(str_field(spec, "system", context));
  return SpaceSpec{resolve_source(reg, str_field(spec, "source", context), context), system, name};
}

// Per-entry verdicts inside the full report must not abort the whole run;
// prerequisite failures become structured error entries instead.
template <typename Fn>
nlohmann::ordered_json guarded(Fn&& fn) {
  try {
    return verdict_json(fn());
  } catch (const Error& e) {
    nlohmann::ordered_json j;
    j["error"] = errc_name(e.code());
    j["message"] = e.what();
    return j;
  }
}

}  // namespace

Registry builtin_registry(const Settings& st) {
  Registry reg;
  reg.settings = st;
  reg.sequences.emplace("gevrey1", make_gevrey(1.0, st.horizon));
  reg.sequences.emplace("gevrey2", make_gevrey(2.0, st.horizon));
  reg.sequences.emplace("gevrey3", make_gevrey(3.0, st.horizon));
  reg.sequences.emplace("qgevrey2", make_qgevrey(2.0, st.horizon));
  for (const auto& [name, m] : reg.sequences)
    reg.weights.emplace("v_" + name, Weight::from_sequence_dilate(m, 1.0));
  return reg;
}

Settings settings_from_json(const nlohmann::json& obj, Settings base) {
  if (!obj.is_object()) fail(errc::invalid_parameter, "settings must be a JSON object");
  Settings out = base;
  for (const auto& item : obj.items()) {
    const std::string& key = item.key();
    const nlohmann::json& val = item.value();
    auto want_int = [&](long long lo, long long hi) {
      if (!val.is_number_integer())
        fail(errc::invalid_parameter, "settings." + key + " must be an integer");
      const long long x = val.get<long long>();
      if (x < lo || x > hi)
        fail(errc::invalid_parameter, "settings." + key + " must lie in [" + std::to_string(lo) +
                                          ", " + std::to_string(hi) + "]");
      return static_cast<int>(x);
    };
    auto positive = [&] {
      if (!val.is_number()) fail(errc::invalid_parameter, "settings." + key + " must be a number");
      const double x = val.get<double>();
      if (!std::isfinite(x) || x <= 0.0)
        fail(errc::invalid_parameter, "settings." + key + " must be a positive number");
      return x;
    };
    if (key == "horizon") {
      out.horizon = want_int(8, 100000);
    } else if (key == "grid_points") {
      out.grid_points = want_int(2, 100000);
    } else if (key == "trend_threshold") {
      out.trend_threshold = positive();
    } else if (key == "trend_persistence") {
      const double x = positive();
      if (x > 1.0) fail(errc::invalid_parameter, "settings.trend_persistence must lie in (0, 1]");
      out.trend_persistence = x;
    } else if (key == "growth_floor") {
      out.growth_floor = positive();
    } else if (key == "om1_margin") {
      out.om1_margin = positive();
    } else if (key == "bracket_cap") {
      out.bracket_cap = positive();
    } else if (key == "grid_floor") {
      out.grid_floor = positive();
    } else if (key == "grid_headroom") {
      const double x = positive();
      if (x >= 1.0) fail(errc::invalid_parameter, "settings.grid_headroom must lie in (0, 1)");
      out.grid_headroom = x;
    } else if (key == "weight_grid_cap") {
      out.weight_grid_cap = positive();
    } else {
      fail(errc::invalid_parameter, "unknown settings key '" + key + "'");
    }
  }
  return out;
}

Registry parse_definitions(const nlohmann::json& doc, const Settings& st) {
  if (!doc.is_object()) fail(errc::invalid_parameter, "definition file must be a JSON object");
  restrict_keys(doc, {"schema", "settings", "sequences", "weights", "spaces"}, "definition file");
  if (doc.contains("schema")) {
    if (!doc.at("schema").is_string() || doc.at("schema").get<std::string>() != kDefsSchema)
      fail(errc::invalid_parameter,
           std::string("definition file schema must be \"") + kDefsSchema + "\"");
  }
  Settings eff = st;
  if (doc.contains("settings")) eff = settings_from_json(doc.at("settings"), eff);
  Registry reg = builtin_registry(eff);

  // Sequences first, then weights, then spaces: references only ever point at
  // earlier layers, so the graph cannot contain cycles.
  if (doc.contains("sequences")) {
    const nlohmann::json& sec = doc.at("sequences");
    if (!sec.is_object()) fail(errc::invalid_parameter, "sequences must be a JSON object");
    for (const auto& item : sec.items()) {
      check_fresh_name(reg, item.key());
      reg.sequences.emplace(item.key(),
                            build_sequence(item.value(), eff, "sequence '" + item.key() + "'"));
    }
  }
  if (doc.contains("weights")) {
    const nlohmann::json& sec = doc.at("weights");
    if (!sec.is_object()) fail(errc::invalid_parameter, "weights must be a JSON object");
    for (const auto& item : sec.items()) {
      check_fresh_name(reg, item.key());
      reg.weights.emplace(item.key(),
                          build_weight(reg, item.value(), "weight '" + item.key() + "'"));
    }
  }
  if (doc.contains("spaces")) {
    const nlohmann::json& sec = doc.at("spaces");
    if (!sec.is_object()) fail(errc::invalid_parameter, "spaces must be a JSON object");
    for (const auto& item : sec.items()) {
      check_fresh_name(reg, item.key());
      reg.spaces.emplace(item.key(), build_space(reg, item.key(), item.value(),
                                                 "space '" + item.key() + "'"));
    }
  }
  return reg;
}

Registry load_definitions(const std::string& path, const Settings& st) {
  std::ifstream in(path);
  if (!in) fail(errc::invalid_parameter, "cannot open definition file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::invalid_parameter, "definition file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_definitions(doc, st);
}

LogSequence resolve_sequence(const Registry& reg, const std::string& name) {
  if (auto it = reg.sequences.find(name); it != reg.sequences.end()) return it->second;
  const std::size_t colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string head = name.substr(0, colon);
    const std::string rest = name.substr(colon + 1);
    if (head == "gevrey")
      return make_gevrey(parse_number(rest, "gevrey exponent"), reg.settings.horizon);
    if (head == "qgevrey")
      return make_qgevrey(parse_number(rest, "qgevrey base"), reg.settings.horizon);
  }
  fail(errc::unresolved_name, "unknown sequence '" + name + "'");
}

Weight resolve_weight(const Registry& reg, const std::string& name) {
  if (auto it = reg.weights.find(name); it != reg.weights.end()) return it->second;
  const std::size_t colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string head = name.substr(0, colon);
    const std::string rest = name.substr(colon + 1);
    if (head == "exppower") {
      const std::size_t comma = rest.find(',');
      if (comma == std::string::npos)
        fail(errc::invalid_parameter, "exppower descriptor expects 'exppower:<a>,<b>'");
      return Weight::exp_power(parse_number(rest.substr(0, comma), "exppower coefficient"),
                               parse_number(rest.substr(comma + 1), "exppower exponent"));
    }
    if (head == "vdil" || head == "vpow") {
      // The sequence part may itself be an inline descriptor with a comma-free
      // tail, so the scale parameter is everything after the last comma.
      const std::size_t comma = rest.rfind(',');
      if (comma == std::string::npos)
        fail(errc::invalid_parameter, head + " descriptor expects '" + head + ":<sequence>,<c>'");
      const LogSequence m = resolve_sequence(reg, rest.substr(0, comma));
      const double c = parse_number(rest.substr(comma + 1), head + " parameter");
      return head == "vdil" ? Weight::from_sequence_dilate(m, c)
                            : Weight::from_sequence_power(m, c);
    }
  }
  fail(errc::unresolved_name, "unknown weight '" + name + "'");
}

SpaceSpec resolve_space(const Registry& reg, const std::string& name) {
  if (auto it = reg.spaces.find(name); it != reg.spaces.end()) return it->second;
  const std::size_t colon = name.find(':');
  if (colon == std::string::npos) fail(errc::unresolved_name, "unknown space '" + name + "'");
  const SystemKind system = parse_system(name.substr(0, colon));
  return SpaceSpec{resolve_source(reg, name.substr(colon + 1), "space '" + name + "'"), system,
                   name};
}

SystemKind parse_system(const std::string& name) {
  if (name == "single") return SystemKind::single;
  if (name == "dilatation-inductive") return SystemKind::dilatation_inductive;
  if (name == "dilatation-projective") return SystemKind::dilatation_projective;
  if (name == "exponential-inductive") return SystemKind::exponential_inductive;
  if (name == "exponential-projective") return SystemKind::exponential_projective;
  fail(errc::invalid_parameter,
       "unknown system '" + name +
           "' (expected single, dilatation-inductive, dilatation-projective, "
           "exponential-inductive or exponential-projective)");
}

nlohmann::ordered_json settings_json(const Settings& st) {
  nlohmann::ordered_json j;
  j["horizon"] = st.horizon;
  j["grid_points"] = st.grid_points;
  j["trend_threshold"] = st.trend_threshold;
  j["trend_persistence"] = st.trend_persistence;
  j["growth_floor"] = st.growth_floor;
  j["om1_margin"] = st.om1_margin;
  j["bracket_cap"] = st.bracket_cap;
  j["grid_floor"] = st.grid_floor;
  j["grid_headroom"] = st.grid_headroom;
  j["weight_grid_cap"] = st.weight_grid_cap;
  return j;
}

nlohmann::ordered_json verdict_json(const Verdict& v) {
  nlohmann::ordered_json j;
  j["status"] = status_name(v.status);
  j["holds"] = v.holds();
  j["rule"] = v.rule;
  nlohmann::ordered_json wit = nlohmann::ordered_json::object();
  for (const auto& [key, value] : v.witness) wit[key] = value;
  j["witness"] = wit;
  j["trend"] = v.trend;
  j["horizon"] = v.horizon_used;
  if (v.counterexample) j["counterexample"] = *v.counterexample;
  j["notes"] = v.notes;
  return j;
}

nlohmann::ordered_json sequence_json(const std::string& name, const LogSequence& m) {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["family"] = family_label(m.family());
  j["horizon"] = m.horizon();
  j["log_convex"] = m.log_convex();
  j["lc"] = m.lc();
  j["weight_sequence"] = m.weight_sequence_on_horizon();
  j["log_values"] = m.log_values();
  return j;
}

void write_csv(const CurveSample& curve, std::ostream& out) {
  if (curve.t.size() != curve.value.size())
    fail(errc::invalid_parameter, "curve abscissa and value arrays differ in length");
  out << "t," << (curve.label.empty() ? "value" : curve.label) << "\n";
  char row[80];
  for (std::size_t i = 0; i < curve.t.size(); ++i) {
    // + 0.0 canonicalizes negative zero so rows never read "-0".
    std::snprintf(row, sizeof row, "%.17g,%.17g\n", curve.t[i] + 0.0, curve.value[i] + 0.0);
    out << row;
  }
}

nlohmann::ordered_json report_full(const Registry& reg) {
  nlohmann::ordered_json rep;
  rep["schema"] = kReportSchema;
  rep["settings"] = settings_json(reg.settings);

  nlohmann::ordered_json seqs = nlohmann::ordered_json::object();
  for (const auto& [name, m] : reg.sequences) {
    nlohmann::ordered_json e;
    e["family"] = family_label(m.family());
    e["horizon"] = m.horizon();
    nlohmann::ordered_json flags;
    flags["log_convex"] = m.log_convex();
    flags["lc"] = m.lc();
    flags["weight_sequence"] = m.weight_sequence_on_horizon();
    e["flags"] = flags;
    nlohmann::ordered_json checks = nlohmann::ordered_json::object();
    checks["mg"] = guarded([&] { return check_mg(m, reg.settings); });
    if (m.lc()) checks["om1char"] = guarded([&] { return check_om1_char(m, reg.settings); });
    e["checks"] = checks;
    seqs[name] = e;
  }
  rep["sequences"] = seqs;

  nlohmann::ordered_json weights = nlohmann::ordered_json::object();
  for (const auto& [name, v] : reg.weights) {
    nlohmann::ordered_json e;
    e["describe"] = v.describe();
    nlohmann::ordered_json flags;
    flags["normalized"] = v.normalized();
    flags["convex"] = v.convex();
    flags["rapidly_decreasing"] = v.rapidly_decreasing();
    flags["moderate_growth"] = v.moderate_growth();
    e["flags"] = flags;
    nlohmann::ordered_json conds;
    conds["rapid_decrease"] =
        guarded([&] { return check_weight_condition(v, WeightCondition::rapid_decrease, reg.settings); });
    conds["convexity"] =
        guarded([&] { return check_weight_condition(v, WeightCondition::convexity, reg.settings); });
    conds["square_dilation"] =
        guarded([&] { return check_weight_condition(v, WeightCondition::square_dilation, reg.settings); });
    conds["doubling_power"] =
        guarded([&] { return check_weight_condition(v, WeightCondition::doubling_power, reg.settings); });
    e["conditions"] = conds;
    weights[name] = e;
  }
  rep["weights"] = weights;

  nlohmann::ordered_json inclusions = nlohmann::ordered_json::object();
  nlohmann::ordered_json closures = nlohmann::ordered_json::object();
  for (const auto& [aname, a] : reg.spaces) {
    for (const auto& [bname, b] : reg.spaces) {
      if (aname == bname || a.system != b.system) continue;
      inclusions[aname + " -> " + bname] =
          guarded([&] { return decide_inclusion(a, b, reg.settings); });
    }
    closures[aname] = guarded([&] { return decide_mult_closure(a, reg.settings); });
  }
  nlohmann::ordered_json spaces;
  spaces["inclusions"] = inclusions;
  spaces["closures"] = closures;
  rep["spaces"] = spaces;
  return rep;
}

}  // namespace wsq
