#include "wsq/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "wsq/grid.hpp"

namespace wsq {

namespace {

const GevreyFamily* gevrey(const LogSequence& m) { return std::get_if<GevreyFamily>(&m.family()); }
const QGevreyFamily* qgevrey(const LogSequence& m) {
  return std::get_if<QGevreyFamily>(&m.family());
}

// Witness constants are stored as plain values when exp() stays finite and
// under a log_ key otherwise (divergent statistics can push past 1e308).
void set_exp_witness(Verdict& v, const std::string& key, double logval) {
  if (logval <= 690.0)
    v.witness[key] = std::exp(logval);
  else
    v.witness["log_" + key] = logval;
}

struct StatSeries {
  std::vector<double> logx, y;
};

template <typename Fn>
StatSeries sample_tail(int hi, Fn&& stat) {
  StatSeries s;
  for (int j : tail_indices(hi)) {
    s.logx.push_back(std::log(double(j)));
    s.y.push_back(stat(j));
  }
  return s;
}

}  // namespace

Verdict check_strong_dom(const LogSequence& m, const LogSequence& n, const Settings& st) {
  const int J = std::min(m.horizon(), n.horizon());
  double dmax = -std::numeric_limits<double>::infinity();
  for (int j = 0; j <= J; ++j) dmax = std::max(dmax, n.log_value(j) - m.log_value(j));
  const StatSeries s =
      sample_tail(J, [&](int j) { return n.log_value(j) - m.log_value(j); });
  const TailTrend tt = tail_trend(s.logx, s.y);

  Verdict v;
  v.rule = "strong-dom";
  v.horizon_used = J;
  v.trend = tt.slope;
  set_exp_witness(v, "A", dmax);

  const GevreyFamily *gm = gevrey(m), *gn = gevrey(n);
  const bool analytic = (gm && gn && gn->s <= gm->s) || (qgevrey(m) && gn);
  if (analytic) {
    v.status = VerdictStatus::proved;
    v.notes.push_back("analytic family rule");
  } else {
    v.status = trend_diverging(tt, st) ? VerdictStatus::diverges_on_horizon
                                       : VerdictStatus::holds_on_horizon;
  }
  return v;
}

Verdict check_preceq(const LogSequence& m, const LogSequence& n, const Settings& st) {
  const int J = std::min(m.horizon(), n.horizon());
  const auto stat = [&](int j) { return (m.log_value(j) - n.log_value(j)) / double(j); };
  double rmax = -std::numeric_limits<double>::infinity();
  for (int j = 1; j <= J; ++j) rmax = std::max(rmax, stat(j));
  const StatSeries s = sample_tail(J, stat);
  const TailTrend tt = tail_trend(s.logx, s.y);

  Verdict v;
  v.rule = "preceq";
  v.horizon_used = J;
  v.trend = tt.slope;
  set_exp_witness(v, "sup", rmax);

  const GevreyFamily *gm = gevrey(m), *gn = gevrey(n);
  const bool analytic = (gm && gn && gm->s <= gn->s) || (gm && qgevrey(n));
  if (analytic) {
    v.status = VerdictStatus::proved;
    v.notes.push_back("analytic family rule");
  } else {
    v.status = trend_diverging(tt, st) ? VerdictStatus::diverges_on_horizon
                                       : VerdictStatus::holds_on_horizon;
  }
  return v;
}

Verdict check_approx(const LogSequence& m, const LogSequence& n, const Settings& st) {
  const Verdict fwd = check_preceq(m, n, st);
  const Verdict bwd = check_preceq(n, m, st);

  Verdict v;
  v.rule = "approx";
  v.horizon_used = fwd.horizon_used;
  v.trend = std::max(fwd.trend, bwd.trend);
  const auto copy_witness = [&v](const Verdict& src, const std::string& key) {
    if (auto it = src.witness.find("sup"); it != src.witness.end())
      v.witness[key] = it->second;
    else if (auto lg = src.witness.find("log_sup"); lg != src.witness.end())
      v.witness["log_" + key] = lg->second;
  };
  copy_witness(fwd, "forward");
  copy_witness(bwd, "backward");

  if (fwd.status == VerdictStatus::proved && bwd.status == VerdictStatus::proved) {
    v.status = VerdictStatus::proved;
    v.notes.push_back("analytic family rule in both directions");
  } else if (fwd.holds() && bwd.holds()) {
    v.status = VerdictStatus::holds_on_horizon;
  } else if (fwd.status == VerdictStatus::refuted || bwd.status == VerdictStatus::refuted) {
    v.status = VerdictStatus::refuted;
  } else {
    v.status = VerdictStatus::diverges_on_horizon;
  }
  return v;
}

Verdict check_mg(const LogSequence& m, const Settings& st) {
  if (m.log_value(0) != 0.0)
    fail(errc::invalid_parameter, "check_mg: needs a unit leading term (l_0 = 0)");
  const int J = m.horizon();

  // Diagonal statistic: (l_{2j} - 2 l_j) / (2j).
  const auto diag = [&](int j) {
    return (m.log_value(2 * j) - 2.0 * m.log_value(j)) / (2.0 * j);
  };
  double diag_max = -std::numeric_limits<double>::infinity();
  for (int j = 1; 2 * j <= J; ++j) diag_max = std::max(diag_max, diag(j));
  const StatSeries ds = sample_tail(J / 2, diag);
  const TailTrend dt = tail_trend(ds.logx, ds.y);

  // Exact two-index scan: (l_s - min_k (l_k + l_{s-k})) / s over all splits.
  const auto scan = [&](int sum) {
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= sum; ++k) best = std::min(best, m.log_value(k) + m.log_value(sum - k));
    return (m.log_value(sum) - best) / double(sum);
  };
  double scan_max = -std::numeric_limits<double>::infinity();
  for (int sum = 1; sum <= J; ++sum) scan_max = std::max(scan_max, scan(sum));
  const StatSeries ss = sample_tail(J, scan);
  const TailTrend stt = tail_trend(ss.logx, ss.y);

  Verdict v;
  v.rule = "mg";
  v.horizon_used = J;
  v.trend = dt.slope;

  const bool diag_div = trend_diverging(dt, st);
  const bool scan_div = trend_diverging(stt, st);
  bool diverging = diag_div || scan_div;
  if (diag_div != scan_div)
    v.notes.push_back("diagonal and two-index classifications disagree; reporting divergent");

  if (const GevreyFamily* g = gevrey(m)) {
    v.status = VerdictStatus::proved;
    v.witness["C"] = std::pow(2.0, g->s);  // binomial bound (j+k)! <= 2^{j+k} j! k!
    v.notes.push_back("analytic family rule");
  } else {
    set_exp_witness(v, "C", std::max(diag_max, scan_max));
    v.status = diverging ? VerdictStatus::diverges_on_horizon : VerdictStatus::holds_on_horizon;
  }
  return v;
}

Verdict check_om1_char(const LogSequence& m, const Settings& st) {
  if (!m.lc()) fail(errc::not_lc, "check_om1_char: requires a normalized log-convex sequence");
  const int J = m.horizon();

  struct Candidate {
    int L = 0;
    double tail_min = -std::numeric_limits<double>::infinity();
    int arg_min = 0;
    double slope = 0.0;
  };
  std::vector<Candidate> cands;
  for (int L : {2, 3, 4, 8}) {
    const int hi = J / L;
    if (hi < 1) continue;
    const auto stat = [&](int j) {
      return m.log_value(L * j) / double(L * j) - m.log_value(j) / double(j);
    };
    Candidate c;
    c.L = L;
    c.tail_min = std::numeric_limits<double>::infinity();
    for (int j : tail_indices(hi)) {
      const double y = stat(j);
      if (y < c.tail_min) {
        c.tail_min = y;
        c.arg_min = j;
      }
    }
    const StatSeries s = sample_tail(hi, stat);
    c.slope = tail_trend(s.logx, s.y).slope;
    cands.push_back(c);
  }
  if (cands.empty()) fail(errc::invalid_parameter, "check_om1_char: horizon too small");

  Verdict v;
  v.rule = "om1-char";
  v.horizon_used = J;

  const auto hit = std::find_if(cands.begin(), cands.end(),
                                [&](const Candidate& c) { return c.tail_min > st.om1_margin; });
  if (hit != cands.end()) {
    v.status = (gevrey(m) || qgevrey(m)) ? VerdictStatus::proved : VerdictStatus::holds_on_horizon;
    if (v.status == VerdictStatus::proved) v.notes.push_back("analytic family rule");
    v.witness["L"] = hit->L;
    v.witness["margin"] = hit->tail_min;
    v.trend = hit->slope;
  } else {
    const auto best = std::max_element(
        cands.begin(), cands.end(),
        [](const Candidate& a, const Candidate& b) { return a.tail_min < b.tail_min; });
    v.status = VerdictStatus::refuted;
    v.witness["L"] = best->L;
    v.witness["margin"] = best->tail_min;
    v.trend = best->slope;
    v.counterexample = double(best->arg_min);
    v.notes.push_back("root ratio stays at or below the margin for every tested factor");
  }
  return v;
}

}  // namespace wsq
