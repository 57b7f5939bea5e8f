#include "wsq/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wsq/settings.hpp"

namespace wsq {

namespace {

// Slack for quotient monotonicity: structural violations dwarf this; rounding
// wobble of derived tables stays below it.
double mono_slack(double a, double b) {
  return 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

LogSequence::LogSequence(std::vector<double> logvals, Family family)
    : logvals_(std::move(logvals)), family_(std::move(family)) {
  if (logvals_.size() < 2) fail(errc::invalid_parameter, "sequence needs at least two entries");
  for (double v : logvals_)
    if (!std::isfinite(v)) fail(errc::non_finite, "sequence log-values must be finite");

  const int J = horizon();
  quot_.assign(logvals_.size(), 0.0);
  for (int j = 1; j <= J; ++j) quot_[j] = logvals_[j] - logvals_[j - 1];

  log_convex_ = true;
  for (int j = 1; j < J; ++j)
    if (quot_[j + 1] < quot_[j] - mono_slack(quot_[j], quot_[j + 1])) {
      log_convex_ = false;
      break;
    }
  lc_ = log_convex_ && logvals_[0] == 0.0 && logvals_[1] >= 0.0;

  // Roots non-decreasing over the tail half plus real growth at the end.
  weight_seq_ = logvals_[J] / J >= Settings{}.growth_floor;
  for (int j = std::max(1, J / 2); weight_seq_ && j < J; ++j)
    if (logvals_[j + 1] / (j + 1) < logvals_[j] / j - 1e-12) weight_seq_ = false;
}

double LogSequence::log_value(int j) const {
  if (j < 0 || j > horizon()) fail(errc::horizon_exceeded, "index beyond sequence horizon");
  return logvals_[static_cast<size_t>(j)];
}

double LogSequence::quotient_log(int j) const {
  if (j < 1 || j > horizon()) fail(errc::horizon_exceeded, "quotient index out of range");
  return quot_[static_cast<size_t>(j)];
}

LogSequence make_gevrey(double s, int horizon) {
  if (!(s > 0.0)) fail(errc::invalid_parameter, "factorial power must be positive");
  if (horizon < 8) fail(errc::invalid_parameter, "family horizon must be at least 8");
  std::vector<double> l(static_cast<size_t>(horizon) + 1);
  for (int j = 0; j <= horizon; ++j) l[j] = s * std::lgamma(double(j) + 1.0);
  return LogSequence(std::move(l), GevreyFamily{s});
}

LogSequence make_qgevrey(double q, int horizon) {
  if (!(q > 1.0)) fail(errc::invalid_parameter, "base must exceed one");
  if (horizon < 8) fail(errc::invalid_parameter, "family horizon must be at least 8");
  const double lq = std::log(q);
  std::vector<double> l(static_cast<size_t>(horizon) + 1);
  for (int j = 0; j <= horizon; ++j) l[j] = double(j) * double(j) * lq;
  return LogSequence(std::move(l), QGevreyFamily{q});
}

LogSequence make_table(std::vector<double> logvals) {
  return LogSequence(std::move(logvals), TableFamily{});
}

LogSequence lc_minorant(const LogSequence& m) {
  if (m.log_convex()) return m;

  const auto& l = m.log_values();
  const int J = m.horizon();

  // Lower convex hull of (j, l_j) by monotone chain; abscissas are exact ints.
  std::vector<int> hull;
  auto pops = [&](int a, int b, int c) {
    // true when b lies on or above the chord a-c
    return (l[b] - l[a]) * double(c - b) >= (l[c] - l[b]) * double(b - a);
  };
  for (int j = 0; j <= J; ++j) {
    while (hull.size() >= 2 && pops(hull[hull.size() - 2], hull.back(), j)) hull.pop_back();
    hull.push_back(j);
  }

  std::vector<double> out(l.size());
  out[0] = l[0];
  for (size_t v = 1; v < hull.size(); ++v) {
    const int a = hull[v - 1], b = hull[v];
    const double slope = (l[b] - l[a]) / double(b - a);
    for (int j = a + 1; j < b; ++j) out[j] = l[a] + slope * double(j - a);
    out[b] = l[b];
  }
  return LogSequence(std::move(out), DerivedFamily{"lc-minorant(" + family_label(m.family()) + ")"});
}

NormalizedSequence lc_normalize(const LogSequence& m) {
  if (!m.log_convex()) fail(errc::not_log_convex, "normalization needs a log-convex input");
  const int J = m.horizon();
  const auto& lam = m.quotient_logs();
  int j0 = 0;
  for (int j = 1; j <= J; ++j)
    if (lam[j] > 0.0) {
      j0 = j;
      break;
    }
  if (j0 == 0) fail(errc::no_positive_quotient, "all quotients at or below one on the horizon");

  double discarded = 0.0;
  for (int j = 1; j < j0; ++j) discarded += std::abs(lam[j]);
  if (discarded == 0.0) return NormalizedSequence{m, 1.0, j0};

  const auto& l = m.log_values();
  std::vector<double> out(l.size(), 0.0);
  const double base = l[j0 - 1];
  for (int j = j0; j <= J; ++j) out[j] = l[j] - base;
  LogSequence seq(std::move(out), DerivedFamily{"lc-normalize(" + family_label(m.family()) + ")"});
  return NormalizedSequence{std::move(seq), std::exp(discarded), j0};
}

LogSequence scale(const LogSequence& m, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) fail(errc::invalid_parameter, "scale factor must be positive");
  const double lc = std::log(c);
  std::vector<double> out(m.log_values());
  for (int j = 0; j <= m.horizon(); ++j) out[j] += double(j) * lc;
  return LogSequence(std::move(out),
                     DerivedFamily{"scale(" + family_label(m.family()) + "," + std::to_string(c) + ")"});
}

LogSequence tilde(const LogSequence& m, int c, int out_horizon) {
  if (c < 1) fail(errc::invalid_parameter, "index dilation must be a positive integer");
  if (c == 1 && out_horizon == 0) return m;
  const int J = m.horizon();
  const int out = out_horizon == 0 ? J / c : out_horizon;
  if (out < 1 || c * out > J)
    fail(errc::horizon_exceeded, "requested output horizon needs source values beyond J");
  std::vector<double> l(static_cast<size_t>(out) + 1);
  for (int j = 0; j <= out; ++j) l[j] = m.log_value(c * j) / double(c);
  if (c == 1) return LogSequence(std::move(l), m.family());
  return LogSequence(std::move(l), DerivedFamily{"tilde(" + family_label(m.family()) + "," +
                                                 std::to_string(c) + ")"});
}

namespace {

std::vector<double> convolve_merge(const LogSequence& a, const LogSequence& b, int J) {
  // The j-th output is l^a_{k} + l^b_{j-k} where k counts how many of the j
  // smallest quotients (both arrays merged) came from a.  Evaluating through
  // the originals keeps each output a single addition instead of a prefix sum.
  const auto& qa = a.quotient_logs();
  const auto& qb = b.quotient_logs();
  const auto& la = a.log_values();
  const auto& lb = b.log_values();
  const int Ja = a.horizon(), Jb = b.horizon();
  std::vector<double> out(static_cast<size_t>(J) + 1);
  int ka = 0, kb = 0;
  out[0] = la[0] + lb[0];
  for (int j = 1; j <= J; ++j) {
    const bool take_a = kb == Jb || (ka < Ja && qa[ka + 1] <= qb[kb + 1]);
    if (take_a)
      ++ka;
    else
      ++kb;
    out[j] = la[ka] + lb[kb];
  }
  return out;
}

}  // namespace

ConvolveDetail convolve_by_min(const LogSequence& a, const LogSequence& b) {
  const int J = std::min(a.horizon(), b.horizon());
  const auto& la = a.log_values();
  const auto& lb = b.log_values();
  std::vector<double> out(static_cast<size_t>(J) + 1);
  std::vector<int> arg(static_cast<size_t>(J) + 1, 0);
  for (int j = 0; j <= J; ++j) {
    double best = std::numeric_limits<double>::infinity();
    int bestk = 0;
    for (int k = 0; k <= j; ++k) {
      const double v = la[k] + lb[j - k];
      if (v < best) {
        best = v;
        bestk = k;
      }
    }
    out[j] = best;
    arg[j] = bestk;
  }
  LogSequence seq(std::move(out), DerivedFamily{"convolve(" + family_label(a.family()) + "," +
                                                family_label(b.family()) + ")"});
  return ConvolveDetail{std::move(seq), std::move(arg)};
}

LogSequence convolve(const LogSequence& a, const LogSequence& b) {
  const int J = std::min(a.horizon(), b.horizon());
  if (a.log_convex() && b.log_convex()) {
    return LogSequence(convolve_merge(a, b, J),
                       DerivedFamily{"convolve(" + family_label(a.family()) + "," +
                                     family_label(b.family()) + ")"});
  }
  return convolve_by_min(a, b).sequence;
}

}  // namespace wsq
