#pragma once

#include <cmath>

namespace wsq {

// Tunables shared by the checkers, evaluators and the CLI.  The defaults are
// part of the documented contract; tests pin them.
struct Settings {
  // Default index horizon J for family construction.
  int horizon = 512;
  // Number of abscissas in a default evaluation grid.
  int grid_points = 64;
  // Least-squares tail slope at or below this counts as a bounded statistic.
  double trend_threshold = 1e-3;
  // A positive slope only counts as divergence when it persists: the slope over
  // the later dyadic window must stay above this fraction of the earlier one.
  // Bounded statistics with O(log j / j) transients decay ~2x per octave and
  // fall below; genuinely divergent ones (even log log j) stay above.
  double trend_persistence = 0.8;
  // (M_J)^{1/J} must exceed this for the weight-sequence flag.
  double growth_floor = std::log(10.0);
  // Strict tail margin for the root-quotient ratio test (ratio must beat 1.05).
  double om1_margin = std::log(1.05);
  // Log-abscissa cap when maximizing t^j v(t); hitting it is a hard error.
  double bracket_cap = 60.0;
  // Smallest abscissa a default grid may start at.
  double grid_floor = 1e-3;
  // Default grids stop at this fraction of the valid-domain end.
  double grid_headroom = 0.9;
  // Abscissa ceiling for weights that impose no cap of their own.
  double weight_grid_cap = 1e6;
};

}  // namespace wsq
