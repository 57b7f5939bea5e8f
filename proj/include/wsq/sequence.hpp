#pragma once

#include <string>
#include <variant>
#include <vector>

#include "wsq/errors.hpp"

namespace wsq {

// Closed-form families keep their parameters so the analytic rule table can
// recognise them; everything else is a plain table or a derived record.
struct GevreyFamily {
  double s = 1.0;  // M_j = (j!)^s
};
struct QGevreyFamily {
  double q = 2.0;  // M_j = q^(j^2)
};
struct TableFamily {};
struct DerivedFamily {
  std::string record;  // how the sequence was constructed, e.g. "scale(gevrey,3)"
};
using Family = std::variant<GevreyFamily, QGevreyFamily, TableFamily, DerivedFamily>;

std::string family_label(const Family& f);

// A positive sequence M_0..M_J held as natural logs l_j = log M_j, with the
// quotient logs lam_j = l_j - l_{j-1} cached.  All arithmetic everywhere in
// this library stays in the log domain.
class LogSequence {
 public:
  LogSequence(std::vector<double> logvals, Family family);

  int horizon() const { return static_cast<int>(logvals_.size()) - 1; }
  double log_value(int j) const;
  double quotient_log(int j) const;  // lam_j, 1 <= j <= J
  const std::vector<double>& log_values() const { return logvals_; }
  // Entry j holds lam_j; entry 0 is unused and fixed to 0.
  const std::vector<double>& quotient_logs() const { return quot_; }

  const Family& family() const { return family_; }
  const GevreyFamily* gevrey() const { return std::get_if<GevreyFamily>(&family_); }
  const QGevreyFamily* qgevrey() const { return std::get_if<QGevreyFamily>(&family_); }

  // Quotients non-decreasing over the whole horizon (1e-12 slack).
  bool log_convex() const { return log_convex_; }
  // log_convex plus the normalization l_0 = 0, l_1 >= 0.
  bool lc() const { return lc_; }
  // Finite-horizon surrogate for "the roots (M_j)^{1/j} tend to infinity":
  // roots non-decreasing on the tail half and l_J / J above the growth floor.
  bool weight_sequence_on_horizon() const { return weight_seq_; }

 private:
  std::vector<double> logvals_;
  std::vector<double> quot_;
  Family family_;
  bool log_convex_ = false;
  bool lc_ = false;
  bool weight_seq_ = false;
};

// Family constructors.  Parametric families require horizon >= 8; tables carry
// their own length (at least two entries).
LogSequence make_gevrey(double s, int horizon);
LogSequence make_qgevrey(double q, int horizon);
LogSequence make_table(std::vector<double> logvals);

// Largest log-convex minorant: lower convex hull of the points (j, l_j).
// Log-convex inputs are returned unchanged (bitwise); the operation is
// idempotent and never exceeds the input.
LogSequence lc_minorant(const LogSequence& m);

// Result of pushing the early sub-1 quotients of a log-convex sequence up to 1.
struct NormalizedSequence {
  LogSequence sequence;
  double ratio_bound = 1.0;  // C with (1/C) M_j <= N_j <= C M_j
  int first_rising = 1;      // smallest j with quotient > 1
};

// Requires a log-convex input with a positive final quotient log.
NormalizedSequence lc_normalize(const LogSequence& m);

// M_j -> c^j M_j for c > 0.
LogSequence scale(const LogSequence& m, double c);

// M_j -> (M_{c j})^{1/c} for integer c >= 1.  The output horizon defaults to
// floor(J / c) and may not exceed it.
LogSequence tilde(const LogSequence& m, int c, int out_horizon = 0);

// Infimal convolution (M*N)_j = min_k M_k N_{j-k} on the common horizon.
// Log-convex pairs go through the sorted quotient merge; everything else
// falls back to the direct minimum.
LogSequence convolve(const LogSequence& a, const LogSequence& b);

// Direct min-route with the minimizing k recorded (smallest index on ties).
struct ConvolveDetail {
  LogSequence sequence;
  std::vector<int> argmin;
};
ConvolveDetail convolve_by_min(const LogSequence& a, const LogSequence& b);

}  // namespace wsq
