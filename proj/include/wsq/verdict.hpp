#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wsq {

// Outcome of a finite-horizon decision procedure.
//
//   proved              analytic rule-table answer for closed-form families
//   holds_on_horizon    statistic bounded on the tested horizon
//   refuted             concrete counterexample, or an exhausted bounded search
//   diverges_on_horizon statistic grows beyond the trend threshold
enum class VerdictStatus { proved, holds_on_horizon, refuted, diverges_on_horizon };

const char* status_name(VerdictStatus s);

struct Verdict {
  VerdictStatus status = VerdictStatus::holds_on_horizon;
  // Named constants backing the verdict (A, C, H, L, c, sup, ratio, ...).
  std::map<std::string, double> witness;
  // Least-squares slope of the statistic against the log-index (or log-abscissa)
  // over the tail half of the horizon.
  double trend = 0.0;
  // Index or abscissa horizon the decision looked at.
  double horizon_used = 0.0;
  // Index or abscissa at which a refuted verdict can be reproduced.
  std::optional<double> counterexample;
  // Identifier of the dispatch rule that produced this verdict.
  std::string rule;
  // Free-form diagnostics, e.g. "operands lc-normalized".
  std::vector<std::string> notes;

  bool holds() const {
    return status == VerdictStatus::proved || status == VerdictStatus::holds_on_horizon;
  }
};

}  // namespace wsq
