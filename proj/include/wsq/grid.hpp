#pragma once

#include <string>
#include <vector>

#include "wsq/settings.hpp"

namespace wsq {

// A sampled curve: increasing abscissas and one value per abscissa.
struct CurveSample {
  std::vector<double> t;
  std::vector<double> value;
  std::string label;
};

// n log-spaced points on [lo, hi] with both endpoints included; lo > 0.
std::vector<double> log_grid(double lo, double hi, int n);

// Least-squares slope of y against x (0 when fewer than two distinct x).
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

// Geometrically spaced integer subsample of [max(1, hi/2), hi], deduplicated
// and increasing; used to estimate tail trends without scanning every index.
std::vector<int> tail_indices(int hi);

// Tail statistics of a sampled statistic: least-squares slope of value against
// log-abscissa over all samples and over the two dyadic half-windows, plus the
// overall maximum and where it sits.  Callers pass tail-half samples only.
struct TailTrend {
  double slope = 0.0;
  double slope_early = 0.0;
  double slope_late = 0.0;
  double max_value = 0.0;
  double arg_max = 0.0;
};

TailTrend tail_trend(const std::vector<double>& logx, const std::vector<double>& y);

// Divergence test: the overall slope exceeds the threshold and does not decay
// across the two half-windows (see Settings::trend_persistence).
bool trend_diverging(const TailTrend& tt, const Settings& st);

}  // namespace wsq
