#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wsq/grid.hpp"
#include "wsq/sequence.hpp"
#include "wsq/settings.hpp"
#include "wsq/verdict.hpp"

namespace wsq {

// A radial weight: continuous, non-increasing, strictly positive, evaluated
// exclusively through log v(t).  Flags are declared at construction from the
// family rules (they are assertions about the full function, not horizon
// measurements).  Sequence-backed weights have a finite evaluation cap
// inherited from the omega evaluator's domain.
class Weight {
 public:
  double log_value(double t) const;  // log v(t), t >= 0
  double omega(double t) const { return -log_value(t); }  // -log v
  // Exclusive abscissa cap; +inf when the weight imposes none.
  double t_cap() const;

  bool normalized() const;          // v == 1 on [0, 1]
  bool convex() const;              // -log v(e^s) convex in s
  bool rapidly_decreasing() const;  // log t = o(-log v(t))
  bool moderate_growth() const;     // 2w(t) <= w(Ht) + H for some H, w = -log v

  std::string describe() const;

  // v(t) = exp(-a t^b), a > 0, b > 0.
  static Weight exp_power(double a, double b);
  // v(t) = exp(-omega_M(c t)), c > 0.
  static Weight from_sequence_dilate(const LogSequence& m, double c);
  // v(t) = exp(-c omega_M(t)), c > 0.
  static Weight from_sequence_power(const LogSequence& m, double c);
  // Piecewise-linear interpolation of (log t, log v) samples, extended with
  // the boundary slope on the right and held at the first sample toward t = 0
  // (a negative left slope would blow up at the origin); log_t strictly
  // increasing, log_v non-increasing.
  static Weight table(std::vector<double> log_t, std::vector<double> log_v);
  // Pointwise product.
  static Weight product(const Weight& a, const Weight& b);
  // Constant multiple exp(log_factor) * v, for bracket construction.
  static Weight scaled(const Weight& v, double log_factor);

  // Individual declared flags forced by the caller; unset fields inherit.
  struct FlagOverrides {
    std::optional<bool> normalized, convex, rapidly_decreasing, moderate_growth;
  };
  // Copy of v carrying the overridden flags: for definition files whose
  // author asserts properties the construction rules cannot see.
  static Weight with_flags(const Weight& v, const FlagOverrides& overrides);

  struct Impl;
  explicit Weight(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  const Impl& impl() const { return *impl_; }

 private:
  std::shared_ptr<const Impl> impl_;
};

// 1 on [0,1] and min(1, v(t)/v(1)) past it; already-normalized weights are
// returned as-is.  The wrap changes the weight by at most the factor
// max(1, 1/v(1)).
Weight normalize(const Weight& v);

// Associated sequence M^v_j = sup_t t^j v(t), computed index by index by
// maximizing j s + log v(e^s); concave objectives (convex weights) use
// ternary search, otherwise a bracketed grid scan with local refinement.
// Results are memoized per weight instance and horizon.
LogSequence assoc_sequence(const Weight& v, int horizon, const Settings& st = {});

// log of the v-norm of the monomial z^j: the same maximization at one index.
double monomial_norm(const Weight& v, int j, const Settings& st = {});

// omega_{M^v}(t) evaluated through the associated sequence at the given horizon.
double p_function(const Weight& v, double t, int horizon, const Settings& st = {});

// gap(t) = log v_{M^u}(t) - log u(t) >= 0 sampled on the associated
// evaluator's grid, with a boundedness verdict (bounded gap = essential on
// the horizon).
struct EssentialityReport {
  CurveSample gap;
  Verdict verdict;
};
EssentialityReport essentiality_gap(const Weight& u, int horizon, const Settings& st = {});

// Computable two-sided envelope of the smallest essential majorant:
// lower = v_{M^u}/6 and upper = v_{M^u}.
struct WeightBracket {
  Weight lower;
  Weight upper;
  LogSequence assoc;
};
WeightBracket associated_weight_bracket(const Weight& u, int horizon, const Settings& st = {});

// Pairwise weight comparisons on a shared grid.
//   plain:        w(t) <= C u(t)
//   dilatation:   some c in {1,2,4,...,1024} with w(c t) <= C u(t)
//   exponential:  some c in {1,2,4,...,1024} with w(t)^c <= C u(t)
enum class WeightRelation { plain, dilatation, exponential };
Verdict check_weight_relation(const Weight& u, const Weight& w, WeightRelation kind,
                              const Settings& st = {});

// Grid checks of the standing growth conditions, w = -log v:
//   rapid_decrease:  log t = o(w(t))
//   convexity:       w(e^s) convex
//   square_dilation: 2 w(t) <= w(H t) + H for some searched H
//   doubling_power:  w(2 t) <= L (w(t) + 1) for some searched L
enum class WeightCondition { rapid_decrease, convexity, square_dilation, doubling_power };
Verdict check_weight_condition(const Weight& v, WeightCondition cond, const Settings& st = {});

// Default grid for a weight: log-spaced inside its cap (or the settings cap).
std::vector<double> weight_grid(const Weight& v, const Settings& st = {});

}  // namespace wsq
