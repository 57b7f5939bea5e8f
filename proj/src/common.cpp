#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "wsq/errors.hpp"
#include "wsq/grid.hpp"
#include "wsq/sequence.hpp"
#include "wsq/verdict.hpp"

namespace wsq {

const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_parameter: return "invalid parameter";
    case errc::unresolved_name: return "unresolved name";
    case errc::horizon_exceeded: return "horizon exceeded";
    case errc::not_log_convex: return "not log-convex";
    case errc::no_positive_quotient: return "no positive quotient";
    case errc::not_lc: return "not a normalized log-convex sequence";
    case errc::maximizer_at_bracket_cap: return "maximizer at bracket cap";
    case errc::non_finite: return "non-finite value";
    case errc::incompatible_systems: return "incompatible systems";
    case errc::prerequisite_not_met: return "prerequisite not met";
  }
  return "unknown error";
}

const char* status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::proved: return "proved";
    case VerdictStatus::holds_on_horizon: return "holds-on-horizon";
    case VerdictStatus::refuted: return "refuted";
    case VerdictStatus::diverges_on_horizon: return "diverges-on-horizon";
  }
  return "unknown";
}

std::string family_label(const Family& f) {
  if (const auto* g = std::get_if<GevreyFamily>(&f))
    return "factorial-power(" + std::to_string(g->s) + ")";
  if (const auto* q = std::get_if<QGevreyFamily>(&f))
    return "squared-exponent(" + std::to_string(q->q) + ")";
  if (std::holds_alternative<TableFamily>(f)) return "table";
  return "derived: " + std::get<DerivedFamily>(f).record;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi >= lo) || n < 1)
    fail(errc::invalid_parameter, "log_grid needs 0 < lo <= hi and n >= 1");
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n));
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  const double slo = std::log(lo), shi = std::log(hi);
  for (int i = 0; i < n; ++i)
    out.push_back(std::exp(slo + (shi - slo) * double(i) / double(n - 1)));
  out.front() = lo;
  out.back() = hi;
  return out;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = std::min(x.size(), y.size());
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) return 0.0;
  return sxy / sxx;
}

std::vector<int> tail_indices(int hi) {
  std::vector<int> out;
  if (hi < 1) return out;
  const int lo = std::max(1, hi / 2);
  const int kSamples = 33;
  for (int i = 0; i < kSamples; ++i) {
    const double f = double(i) / double(kSamples - 1);
    const int j = static_cast<int>(std::lround(lo * std::pow(double(hi) / double(lo), f)));
    if (out.empty() || j > out.back()) out.push_back(std::min(j, hi));
  }
  return out;
}

TailTrend tail_trend(const std::vector<double>& logx, const std::vector<double>& y) {
  TailTrend tt;
  const size_t n = std::min(logx.size(), y.size());
  if (n == 0) return tt;
  size_t imax = 0;
  for (size_t i = 1; i < n; ++i)
    if (y[i] > y[imax]) imax = i;
  tt.max_value = y[imax];
  tt.arg_max = logx[imax];
  const std::vector<double> xs(logx.begin(), logx.begin() + n);
  const std::vector<double> ys(y.begin(), y.begin() + n);
  tt.slope = least_squares_slope(xs, ys);
  const size_t mid = n / 2;
  tt.slope_early = least_squares_slope({xs.begin(), xs.begin() + mid + 1},
                                       {ys.begin(), ys.begin() + mid + 1});
  tt.slope_late = least_squares_slope({xs.begin() + mid, xs.end()}, {ys.begin() + mid, ys.end()});
  return tt;
}

bool trend_diverging(const TailTrend& tt, const Settings& st) {
  if (!(tt.slope > st.trend_threshold)) return false;
  const bool decaying = tt.slope_early > 0.0 && tt.slope_late < st.trend_persistence * tt.slope_early;
  return !decaying;
}

}  // namespace wsq
