#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include <json.hpp>

#include "wsq/sequence.hpp"
#include "wsq/settings.hpp"
#include "wsq/spaces.hpp"
#include "wsq/verdict.hpp"
#include "wsq/weight.hpp"

namespace wsq {

// Named objects available to the CLI: the built-in families plus whatever a
// definition file contributes.
struct Registry {
  Settings settings;
  std::map<std::string, LogSequence> sequences;
  std::map<std::string, Weight> weights;
  std::map<std::string, SpaceSpec> spaces;
};

// gevrey1, gevrey2, gevrey3, qgevrey2 and their dilation weights.
Registry builtin_registry(const Settings& st = {});

// Apply a JSON settings object over a baseline, rejecting unknown keys and
// out-of-range values.  The CLI uses this to give its flags the last word.
Settings settings_from_json(const nlohmann::json& obj, Settings base);

// Parse a JSON definition file and layer it over the builtins.  Validates
// parameters, reference resolution and cycles; throws Error on bad input.
Registry load_definitions(const std::string& path, const Settings& st = {});
Registry parse_definitions(const nlohmann::json& doc, const Settings& st = {});

// Name resolution with inline descriptors:
//   sequences: defs name | gevrey:<s> | qgevrey:<q>
//   weights:   defs name | exppower:<a>,<b> | vdil:<seq>,<c> | vpow:<seq>,<c>
//   spaces:    defs name | <system>:<source>  (source = sequence or weight name)
LogSequence resolve_sequence(const Registry& reg, const std::string& name);
Weight resolve_weight(const Registry& reg, const std::string& name);
SpaceSpec resolve_space(const Registry& reg, const std::string& name);
SystemKind parse_system(const std::string& name);

// Deterministic serialization (sorted keys, no timestamps).
nlohmann::ordered_json settings_json(const Settings& st);
nlohmann::ordered_json verdict_json(const Verdict& v);
nlohmann::ordered_json sequence_json(const std::string& name, const LogSequence& m);
void write_csv(const CurveSample& curve, std::ostream& out);

// The full fixture report: flags and checks for every sequence, condition
// grid for every weight, pairwise inclusions and closures for every space.
nlohmann::ordered_json report_full(const Registry& reg);

}  // namespace wsq
