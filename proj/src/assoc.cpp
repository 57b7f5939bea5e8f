#include "wsq/assoc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wsq {

OmegaEvaluator::OmegaEvaluator(const LogSequence& m) : lc_(lc_minorant(m)) {
  const int J = lc_.horizon();
  lam_ = lc_.quotient_logs();
  // The minorant's quotients are non-decreasing by construction; sorting is a
  // no-op that guards the binary searches against last-ulp interpolation wobble.
  std::sort(lam_.begin() + 1, lam_.end());

  prefix_.assign(J + 1, 0.0);
  double sum = 0.0, comp = 0.0;  // compensated: quotient sums reach ~1e5 at large horizons
  for (int j = 1; j <= J; ++j) {
    const double y = lam_[j] - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    prefix_[j] = sum;
  }
  lam_end_ = lam_[J];
  t_max_ = std::exp(lam_end_);
}

int OmegaEvaluator::counting_log(double s) const {
  return int(std::upper_bound(lam_.begin() + 1, lam_.end(), s) - (lam_.begin() + 1));
}

double OmegaEvaluator::omega_log(double s) const {
  const int k = counting_log(s);
  return -lc_.log_value(0) + (k * s - prefix_[k]);
}

int OmegaEvaluator::counting(double t) const {
  if (!(t >= 0.0)) fail(errc::invalid_parameter, "counting: t must be >= 0");
  if (t >= t_max_) fail(errc::horizon_exceeded, "counting: t beyond the last quotient");
  if (t == 0.0) return 0;
  return counting_log(std::log(t));
}

double OmegaEvaluator::omega(double t) const {
  if (!(t >= 0.0)) fail(errc::invalid_parameter, "omega: t must be >= 0");
  if (t >= t_max_) fail(errc::horizon_exceeded, "omega: t beyond the last quotient");
  if (t == 0.0) return -lc_.log_value(0);
  return omega_log(std::log(t));
}

double OmegaEvaluator::invert(int j) const {
  const int J = lc_.horizon();
  if (j < 0) fail(errc::invalid_parameter, "invert: j must be >= 0");
  if (j > J - 1) fail(errc::horizon_exceeded, "invert: j must stay below the horizon");
  if (j == 0) return lc_.log_value(0);
  // The supremum of s -> j s - omega(e^s) sits at the j-th quotient log; with
  // ties the counting value k may exceed j and the extra terms cancel exactly.
  const double s = lam_[j];
  const int k = counting_log(s);
  return lc_.log_value(0) + (j - k) * s + prefix_[k];
}

double omega_sup_bruteforce(const LogSequence& m, double t) {
  if (!(t >= 0.0)) fail(errc::invalid_parameter, "omega_sup_bruteforce: t must be >= 0");
  if (t == 0.0) return -m.log_value(0);
  const double s = std::log(t);
  double best = -m.log_value(0);
  for (int j = 1; j <= m.horizon(); ++j) best = std::max(best, j * s - m.log_value(j));
  return best;
}

LogSequence underline(const LogSequence& m, int c, int out_horizon) {
  if (c < 1) fail(errc::invalid_parameter, "underline: c must be a positive integer");
  if (!m.lc()) fail(errc::not_lc, "underline: requires a normalized log-convex sequence");
  const int J = m.horizon();
  const int max_out = c * (J - 1);
  int out = out_horizon;
  if (out == 0) out = std::min(J, max_out);
  if (out < 1) fail(errc::invalid_parameter, "underline: output horizon must be >= 1");
  if (out > max_out)
    fail(errc::horizon_exceeded, "underline: output horizon needs quotients past the input");

  const OmegaEvaluator ev(m);
  std::vector<double> l(out + 1);
  l[0] = 0.0;  // omega vanishes near 0, so the j = 0 supremum is exp(0)
  for (int j = 1; j <= out; ++j) {
    const int k = (j + c - 1) / c;  // ceil(j / c), the maximizing quotient index
    const double s = m.quotient_log(k);
    l[j] = j * s - c * ev.omega_log(s);
  }
  return LogSequence(std::move(l), DerivedFamily{"underline(" + family_label(m.family()) + "," +
                                                 std::to_string(c) + ")"});
}

std::vector<double> default_grid(const LogSequence& m, const Settings& st) {
  const OmegaEvaluator ev(m);
  const double mu1 = std::exp(ev.minorant().quotient_log(1));
  double lo = std::max(st.grid_floor, 0.5 * mu1);
  // Large horizons can push t_max past double range; stay well inside it.
  double hi = st.grid_headroom * std::min(ev.t_max(), 1e300);
  if (!(lo < hi)) lo = 0.5 * hi;
  return log_grid(lo, hi, st.grid_points);
}

CurveSample omega_curve(const LogSequence& m, double tmin, double tmax, int points) {
  const OmegaEvaluator ev(m);
  CurveSample curve;
  curve.label = "omega";
  curve.t = log_grid(tmin, tmax, points);
  curve.value.reserve(curve.t.size());
  for (double t : curve.t) curve.value.push_back(ev.omega(t));
  return curve;
}

namespace {

// Max of (scale_m * omega_M - scale_u * omega_U) over the common default grid.
double grid_defect(const LogSequence& m, const LogSequence& u, double scale_m, double scale_u,
                   const Settings& st) {
  const OmegaEvaluator em(m), eu(u);
  const double mu1 = std::exp(em.minorant().quotient_log(1));
  double lo = std::max(st.grid_floor, 0.5 * mu1);
  double hi = st.grid_headroom * std::min({em.t_max(), eu.t_max(), 1e300});
  if (!(lo < hi)) lo = 0.5 * hi;
  double defect = 0.0;
  for (double t : log_grid(lo, hi, st.grid_points))
    defect = std::max(defect, scale_m * em.omega(t) - scale_u * eu.omega(t));
  return defect;
}

}  // namespace

double underline_sandwich_defect(const LogSequence& m, int c, const Settings& st) {
  return grid_defect(m, underline(m, c), double(c), 2.0, st);
}

double tilde_sandwich_defect(const LogSequence& m, int c, const Settings& st) {
  return grid_defect(m, tilde(m, c), 1.0, 2.0 * c, st);
}

}  // namespace wsq
