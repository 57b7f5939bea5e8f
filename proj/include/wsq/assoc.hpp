#pragma once

#include "wsq/grid.hpp"
#include "wsq/sequence.hpp"
#include "wsq/settings.hpp"

namespace wsq {

// Evaluator for the weight function omega_M(t) = sup_j log(t^j / M_j) and the
// quotient counting function.  Internally built on the log-convex minorant of
// the source (the two have the same weight function), so every query reduces
// to a binary search over the quotient logs plus a prefix-sum lookup.
//
// The valid domain is [0, t_max) with t_max = mu_J; beyond that the horizon
// no longer determines the function and queries throw horizon_exceeded.
class OmegaEvaluator {
 public:
  explicit OmegaEvaluator(const LogSequence& m);

  double t_max() const { return t_max_; }
  double log_t_max() const { return lam_end_; }
  const LogSequence& minorant() const { return lc_; }

  // Number of quotients mu_j <= t; 0 <= t < t_max.
  int counting(double t) const;
  // omega(t) = sum over {j : mu_j <= t} of (log t - log mu_j); 0 <= t < t_max.
  double omega(double t) const;
  // log sup_t t^j exp(-omega(t)), the log-convex minorant value at j <= J-1.
  double invert(int j) const;

  // Log-domain core: s = log t, no domain guard.  Exposed for evaluators
  // layered on top (weights, theta series, underline).
  double omega_log(double s) const;
  int counting_log(double s) const;

 private:
  LogSequence lc_;
  std::vector<double> lam_;     // quotient logs of the minorant, sorted (entry 0 unused)
  std::vector<double> prefix_;  // prefix_[j] = lam_1 + ... + lam_j, compensated
  double lam_end_ = 0.0;
  double t_max_ = 0.0;
};

// Brute-force sup_j (j log t - l_j) over the raw table; the test oracle for
// OmegaEvaluator::omega.
double omega_sup_bruteforce(const LogSequence& m, double t);

// j-th term sup_t t^j exp(-c * omega_M(t)) for integer c >= 1; requires lc().
// The output horizon defaults to min(J, c*(J-1)) and may not exceed c*(J-1).
LogSequence underline(const LogSequence& m, int c, int out_horizon = 0);

// Default evaluation grid: grid_points log-spaced abscissas on
// [max(grid_floor, mu_1/2), grid_headroom * t_max].
std::vector<double> default_grid(const LogSequence& m, const Settings& st = {});

// omega sampled on [tmin, tmax].
CurveSample omega_curve(const LogSequence& m, double tmin, double tmax, int points);

// Sandwich defects measured on the default grid, both >= 0 up to rounding:
//   underline: max over t of  c*omega_M(t) - 2*omega_{underline(M,c)}(t)
//   tilde:     max over t of  omega_M(t)   - 2*c*omega_{tilde(M,c)}(t)
double underline_sandwich_defect(const LogSequence& m, int c, const Settings& st = {});
double tilde_sandwich_defect(const LogSequence& m, int c, const Settings& st = {});

}  // namespace wsq
