#include "wsq/weight.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "wsq/assoc.hpp"
#include "wsq/checks.hpp"
#include "wsq/errors.hpp"

namespace wsq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

struct Weight::Impl {
  virtual ~Impl() = default;
  virtual double logv(double t) const = 0;  // t already range-checked
  virtual double cap() const { return kInf; }
  virtual std::string describe() const = 0;

  bool normalized = false;
  bool convex = false;
  bool rapid = false;
  bool mg = false;

  // Associated sequences already computed for this instance, keyed by horizon.
  mutable std::mutex memo_mu;
  mutable std::map<int, LogSequence> memo;
};

namespace {

struct ExpPowerImpl final : Weight::Impl {
  double a, b;

  ExpPowerImpl(double a_, double b_) : a(a_), b(b_) {
    convex = true;  // a e^{b s} in logarithmic coordinates
    rapid = true;   // log t = o(t^b)
    mg = true;      // any power of two with H^b >= 2 absorbs the square
  }
  double logv(double t) const override { return -a * std::pow(t, b); }
  std::string describe() const override {
    return "exp-power(" + fmt(a) + "," + fmt(b) + ")";
  }
};

struct SeqDilateImpl final : Weight::Impl {
  OmegaEvaluator ev;
  double c;
  bool source_lc;
  std::string label;

  SeqDilateImpl(const LogSequence& m, double c_)
      : ev(m), c(c_), source_lc(m.lc()), label(family_label(m.family())) {
    const LogSequence& hull = ev.minorant();
    // v == 1 on [0,1] iff omega_M(c t) stays 0 there: unit leading term and
    // first quotient at least c.
    normalized = hull.log_value(0) == 0.0 && hull.quotient_log(1) >= std::log(c);
    convex = true;  // omega of the hull is piecewise linear with rising slopes
    rapid = m.weight_sequence_on_horizon();
    mg = m.log_value(0) == 0.0 && check_mg(m).holds();
  }
  double logv(double t) const override {
    double u = c * t;
    // The public cap is t_max / c; keep the product inside t_max under rounding.
    if (u >= ev.t_max()) u = std::nextafter(ev.t_max(), 0.0);
    return -ev.omega(u);
  }
  double cap() const override { return ev.t_max() / c; }
  std::string describe() const override {
    return "sequence-weight(" + label + ",c=" + fmt(c) + ")";
  }
};

struct SeqPowerImpl final : Weight::Impl {
  OmegaEvaluator ev;
  double c;
  std::string label;

  SeqPowerImpl(const LogSequence& m, double c_)
      : ev(m), c(c_), label(family_label(m.family())) {
    const LogSequence& hull = ev.minorant();
    normalized = hull.log_value(0) == 0.0 && hull.quotient_log(1) >= 0.0;
    convex = true;
    rapid = m.weight_sequence_on_horizon();
    mg = m.log_value(0) == 0.0 && check_mg(m).holds();
  }
  double logv(double t) const override { return -c * ev.omega(t); }
  double cap() const override { return ev.t_max(); }
  std::string describe() const override {
    return "sequence-power(" + label + ",c=" + fmt(c) + ")";
  }
};

struct TableImpl final : Weight::Impl {
  std::vector<double> s, w;  // knots in (log t, log v)
  double right_slope = 0.0;

  TableImpl(std::vector<double> s_, std::vector<double> w_)
      : s(std::move(s_)), w(std::move(w_)) {
    if (s.size() != w.size() || s.size() < 2)
      fail(errc::invalid_parameter, "weight table needs matching samples, at least two");
    for (size_t i = 0; i < s.size(); ++i)
      if (!std::isfinite(s[i]) || !std::isfinite(w[i]))
        fail(errc::non_finite, "weight table samples must be finite");
    convex = true;
    double prev_slope = kInf;  // slopes of log v must be non-increasing
    for (size_t i = 1; i < s.size(); ++i) {
      if (!(s[i] > s[i - 1]))
        fail(errc::invalid_parameter, "weight table abscissas must be strictly increasing");
      if (w[i] > w[i - 1])
        fail(errc::invalid_parameter, "weight table values must be non-increasing");
      const double slope = (w[i] - w[i - 1]) / (s[i] - s[i - 1]);
      if (slope > prev_slope + 1e-12 * std::max(1.0, std::abs(prev_slope))) convex = false;
      prev_slope = slope;
    }
    right_slope = (w[w.size() - 1] - w[w.size() - 2]) / (s[s.size() - 1] - s[s.size() - 2]);
    normalized = w.front() == 0.0 && eval_log(0.0) == 0.0;
  }
  double eval_log(double x) const {
    if (x <= s.front()) return w.front();  // held constant toward the origin
    if (x >= s.back()) return w.back() + right_slope * (x - s.back());
    const auto it = std::upper_bound(s.begin(), s.end(), x);
    const size_t i = size_t(it - s.begin());  // s[i-1] <= x < s[i]
    const double f = (x - s[i - 1]) / (s[i] - s[i - 1]);
    return w[i - 1] + f * (w[i] - w[i - 1]);
  }
  double logv(double t) const override {
    return t == 0.0 ? w.front() : eval_log(std::log(t));
  }
  std::string describe() const override {
    return "table-weight(n=" + std::to_string(s.size()) + ")";
  }
};

struct ProductImpl final : Weight::Impl {
  Weight a, b;

  ProductImpl(Weight a_, Weight b_) : a(std::move(a_)), b(std::move(b_)) {
    normalized = a.normalized() && b.normalized();
    convex = a.convex() && b.convex();
    rapid = a.rapidly_decreasing() || b.rapidly_decreasing();
    mg = a.moderate_growth() && b.moderate_growth();
  }
  double logv(double t) const override { return a.log_value(t) + b.log_value(t); }
  double cap() const override { return std::min(a.t_cap(), b.t_cap()); }
  std::string describe() const override {
    return "product(" + a.describe() + "," + b.describe() + ")";
  }
};

struct ScaledImpl final : Weight::Impl {
  Weight v;
  double f;

  ScaledImpl(Weight v_, double f_) : v(std::move(v_)), f(f_) {
    normalized = f == 0.0 && v.normalized();
    convex = v.convex();
    rapid = v.rapidly_decreasing();
    mg = v.moderate_growth();
  }
  double logv(double t) const override { return f + v.log_value(t); }
  double cap() const override { return v.t_cap(); }
  std::string describe() const override {
    return "scaled(" + v.describe() + ",log-factor=" + fmt(f) + ")";
  }
};

struct FlaggedImpl final : Weight::Impl {
  Weight v;

  FlaggedImpl(Weight v_, const Weight::FlagOverrides& o) : v(std::move(v_)) {
    normalized = o.normalized.value_or(v.normalized());
    convex = o.convex.value_or(v.convex());
    rapid = o.rapidly_decreasing.value_or(v.rapidly_decreasing());
    mg = o.moderate_growth.value_or(v.moderate_growth());
  }
  double logv(double t) const override { return v.log_value(t); }
  double cap() const override { return v.t_cap(); }
  std::string describe() const override { return "flagged(" + v.describe() + ")"; }
};

struct NormalizedImpl final : Weight::Impl {
  Weight v;
  double log_at_1;

  explicit NormalizedImpl(Weight v_) : v(std::move(v_)), log_at_1(v.log_value(1.0)) {
    normalized = true;
    convex = v.convex();
    rapid = v.rapidly_decreasing();
    mg = v.moderate_growth();
  }
  double logv(double t) const override {
    if (t <= 1.0) return 0.0;
    return std::min(0.0, v.log_value(t) - log_at_1);
  }
  double cap() const override { return v.t_cap(); }
  std::string describe() const override { return "normalized(" + v.describe() + ")"; }
};

}  // namespace

double Weight::log_value(double t) const {
  if (!(t >= 0.0)) fail(errc::invalid_parameter, "weight abscissa must be non-negative");
  if (t >= impl_->cap())
    fail(errc::horizon_exceeded, "abscissa at or past the weight's evaluation cap");
  return impl_->logv(t);
}

double Weight::t_cap() const { return impl_->cap(); }
bool Weight::normalized() const { return impl_->normalized; }
bool Weight::convex() const { return impl_->convex; }
bool Weight::rapidly_decreasing() const { return impl_->rapid; }
bool Weight::moderate_growth() const { return impl_->mg; }
std::string Weight::describe() const { return impl_->describe(); }

Weight Weight::exp_power(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    fail(errc::invalid_parameter, "exponential-power weight needs a > 0 and b > 0");
  return Weight(std::make_shared<ExpPowerImpl>(a, b));
}

Weight Weight::from_sequence_dilate(const LogSequence& m, double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    fail(errc::invalid_parameter, "dilation parameter must be positive");
  return Weight(std::make_shared<SeqDilateImpl>(m, c));
}

Weight Weight::from_sequence_power(const LogSequence& m, double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    fail(errc::invalid_parameter, "power parameter must be positive");
  return Weight(std::make_shared<SeqPowerImpl>(m, c));
}

Weight Weight::table(std::vector<double> log_t, std::vector<double> log_v) {
  return Weight(std::make_shared<TableImpl>(std::move(log_t), std::move(log_v)));
}

Weight Weight::product(const Weight& a, const Weight& b) {
  return Weight(std::make_shared<ProductImpl>(a, b));
}

Weight Weight::scaled(const Weight& v, double log_factor) {
  if (!std::isfinite(log_factor))
    fail(errc::non_finite, "scaling factor must be finite");
  return Weight(std::make_shared<ScaledImpl>(v, log_factor));
}

Weight Weight::with_flags(const Weight& v, const FlagOverrides& overrides) {
  return Weight(std::make_shared<FlaggedImpl>(v, overrides));
}

Weight normalize(const Weight& v) {
  if (v.normalized()) return v;
  if (!(v.t_cap() > 1.0))
    fail(errc::invalid_parameter, "cannot normalize a weight capped at or below t = 1");
  return Weight(std::make_shared<NormalizedImpl>(v));
}

namespace {

double objective(const Weight& v, int j, double s) {
  return double(j) * s + v.log_value(std::exp(s));
}

// Right end of the search bracket: the first point (doubling from 1, capped by
// the settings bracket and the weight's domain) where the discrete slope of
// j s + log v(e^s) turns non-positive.
double bracket_right_edge(const Weight& v, int j, const Settings& st) {
  const double s_dom = std::isfinite(v.t_cap()) ? std::log(v.t_cap()) - 1e-9 : kInf;
  double s_hi = 1.0;
  for (;;) {
    const double edge = std::min({s_hi, st.bracket_cap, s_dom});
    const double delta = 1e-8 * std::max(1.0, std::abs(edge));
    if (objective(v, j, edge) - objective(v, j, edge - delta) <= 0.0) return edge;
    if (edge >= s_dom)
      fail(errc::horizon_exceeded,
           "monomial supremum presses against the weight's evaluation cap");
    if (edge >= st.bracket_cap)
      fail(errc::maximizer_at_bracket_cap, "monomial supremum beyond the search bracket");
    s_hi *= 2.0;
  }
}

double ternary_max(const Weight& v, int j, double lo, double hi) {
  while (hi - lo > 1e-10) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (objective(v, j, m1) < objective(v, j, m2))
      lo = m1;
    else
      hi = m2;
  }
  return objective(v, j, 0.5 * (lo + hi));
}

double scan_max(const Weight& v, int j, double lo, double hi) {
  const int n = 2048;
  double best = -kInf, best_s = lo;
  for (int i = 0; i <= n; ++i) {
    const double si = lo + (hi - lo) * double(i) / n;
    const double g = objective(v, j, si);
    if (g > best) {
      best = g;
      best_s = si;
    }
  }
  double half = (hi - lo) / n;
  for (int round = 0; round < 2; ++round) {
    const double a = std::max(lo, best_s - half);
    const double b = std::min(hi, best_s + half);
    for (int i = 0; i <= 128; ++i) {
      const double si = a + (b - a) * double(i) / 128.0;
      const double g = objective(v, j, si);
      if (g > best) {
        best = g;
        best_s = si;
      }
    }
    half = (b - a) / 128.0;
  }
  return best;
}

double maximize_index(const Weight& v, int j, const Settings& st) {
  if (j < 0) fail(errc::invalid_parameter, "monomial degree must be non-negative");
  double out;
  if (j == 0) {
    out = v.log_value(0.0);  // non-increasing: the supremum sits at the origin
  } else {
    const double edge = bracket_right_edge(v, j, st);
    out = v.convex() ? ternary_max(v, j, -20.0, edge) : scan_max(v, j, -20.0, edge);
  }
  if (!std::isfinite(out)) fail(errc::non_finite, "monomial norm is not finite");
  return out;
}

}  // namespace

LogSequence assoc_sequence(const Weight& v, int horizon, const Settings& st) {
  if (horizon < 1)
    fail(errc::invalid_parameter, "associated sequence needs horizon >= 1");
  const Weight::Impl& impl = v.impl();
  {
    std::lock_guard<std::mutex> lock(impl.memo_mu);
    const auto it = impl.memo.find(horizon);
    if (it != impl.memo.end()) return it->second;
  }
  std::vector<double> vals(size_t(horizon) + 1);
  for (int j = 0; j <= horizon; ++j) vals[size_t(j)] = maximize_index(v, j, st);
  LogSequence out(std::move(vals), DerivedFamily{"assoc(" + v.describe() + ")"});
  std::lock_guard<std::mutex> lock(impl.memo_mu);
  impl.memo.emplace(horizon, out);  // a racing duplicate is identical; keep the first
  return out;
}

double monomial_norm(const Weight& v, int j, const Settings& st) {
  return maximize_index(v, j, st);
}

double p_function(const Weight& v, double t, int horizon, const Settings& st) {
  return OmegaEvaluator(assoc_sequence(v, horizon, st)).omega(t);
}

namespace {

// Tail trend of a statistic sampled on a grid: slope against log t over the
// upper half of the window.
TailTrend stat_trend(const std::vector<double>& grid, const std::vector<double>& stat) {
  std::vector<double> lx, ly;
  for (size_t i = grid.size() / 2; i < grid.size(); ++i) {
    lx.push_back(std::log(grid[i]));
    ly.push_back(stat[i]);
  }
  return tail_trend(lx, ly);
}

double effective_hi(const Weight& v, const Settings& st) {
  const double cap = std::isfinite(v.t_cap()) ? v.t_cap() : st.weight_grid_cap;
  return st.grid_headroom * cap;
}

}  // namespace

EssentialityReport essentiality_gap(const Weight& u, int horizon, const Settings& st) {
  const LogSequence m = assoc_sequence(u, horizon, st);
  const OmegaEvaluator ev(m);
  CurveSample gap;
  gap.label = "essentiality-gap";
  for (double t : default_grid(m, st))
    if (t < u.t_cap()) gap.t.push_back(t);
  if (gap.t.size() < 8)
    fail(errc::prerequisite_not_met,
         "no usable overlap between the weight and its associated evaluator");
  double sup = -kInf;
  for (double t : gap.t) {
    const double g = -u.log_value(t) - ev.omega(t);  // log v_{M^u} - log u
    gap.value.push_back(g);
    sup = std::max(sup, g);
  }
  const TailTrend tt = stat_trend(gap.t, gap.value);

  Verdict verdict;
  verdict.rule = "essentiality-gap";
  verdict.trend = tt.slope;
  verdict.horizon_used = horizon;
  verdict.witness["sup"] = sup;
  verdict.status = trend_diverging(tt, st) ? VerdictStatus::diverges_on_horizon
                                           : VerdictStatus::holds_on_horizon;
  const auto* sd = dynamic_cast<const SeqDilateImpl*>(&u.impl());
  if (sd && sd->c == 1.0 && sd->source_lc &&
      verdict.status == VerdictStatus::holds_on_horizon) {
    verdict.status = VerdictStatus::proved;
    verdict.notes.push_back("log-convex sequence weights are essential by construction");
  }
  return {gap, verdict};
}

WeightBracket associated_weight_bracket(const Weight& u, int horizon, const Settings& st) {
  LogSequence m = assoc_sequence(u, horizon, st);
  Weight upper = Weight::from_sequence_dilate(m, 1.0);
  Weight lower = Weight::scaled(upper, -std::log(6.0));
  return {std::move(lower), std::move(upper), std::move(m)};
}

Verdict check_weight_relation(const Weight& u, const Weight& w, WeightRelation kind,
                              const Settings& st) {
  const double hi_u = effective_hi(u, st);
  const double hi_w = effective_hi(w, st);
  std::vector<double> factors;
  if (kind == WeightRelation::plain)
    factors = {1.0};
  else
    for (double c = 1.0; c <= 1024.0; c *= 2.0) factors.push_back(c);

  Verdict out;
  out.rule = kind == WeightRelation::plain        ? "weight-plain"
             : kind == WeightRelation::dilatation ? "weight-dilatation"
                                                  : "weight-exponential";
  bool tried = false;
  double last_c = 0.0, last_bound = 0.0, last_arg = 0.0, last_hi = 0.0;
  TailTrend last_tt;
  for (double c : factors) {
    const double hi =
        kind == WeightRelation::dilatation ? std::min(hi_u, hi_w / c) : std::min(hi_u, hi_w);
    if (!(hi > st.grid_floor * 8.0)) continue;  // window too small to judge
    const std::vector<double> grid = log_grid(st.grid_floor, hi, st.grid_points);
    std::vector<double> stat(grid.size());
    double bound = -kInf, arg = grid.front();
    for (size_t i = 0; i < grid.size(); ++i) {
      const double t = grid[i];
      double sv = 0.0;
      switch (kind) {
        case WeightRelation::plain: sv = w.log_value(t) - u.log_value(t); break;
        case WeightRelation::dilatation: sv = w.log_value(c * t) - u.log_value(t); break;
        case WeightRelation::exponential: sv = c * w.log_value(t) - u.log_value(t); break;
      }
      stat[i] = sv;
      if (sv > bound) {
        bound = sv;
        arg = t;
      }
    }
    const TailTrend tt = stat_trend(grid, stat);
    tried = true;
    last_c = c;
    last_bound = bound;
    last_arg = arg;
    last_hi = hi;
    last_tt = tt;
    if (!trend_diverging(tt, st)) {
      out.status = VerdictStatus::holds_on_horizon;
      if (kind != WeightRelation::plain) out.witness["c"] = c;
      out.witness["bound"] = bound;
      out.trend = tt.slope;
      out.horizon_used = hi;
      return out;
    }
  }
  if (!tried)
    fail(errc::invalid_parameter, "weight domains leave no usable comparison window");
  out.trend = last_tt.slope;
  out.horizon_used = last_hi;
  out.witness["bound"] = last_bound;
  if (kind == WeightRelation::plain) {
    out.status = VerdictStatus::diverges_on_horizon;
  } else {
    out.status = VerdictStatus::refuted;
    out.witness["c"] = last_c;
    out.counterexample = last_arg;
    out.notes.push_back("no factor up to 1024 bounds the comparison gap on the shared grid");
  }
  return out;
}

namespace {

Verdict condition_rapid(const Weight& v, const Settings& st) {
  std::vector<double> ts, rs;
  for (double t : weight_grid(v, st)) {
    if (t < 2.0) continue;  // keep log t positive and away from the flat region
    const double wv = -v.log_value(t);
    if (wv > 1.0) {
      ts.push_back(t);
      rs.push_back(std::log(t) / wv);
    }
  }
  if (ts.size() < 8)
    fail(errc::prerequisite_not_met, "weight decays too little on the window to classify");
  const TailTrend tt = stat_trend(ts, rs);

  Verdict out;
  out.rule = "weight-rapid-decrease";
  out.trend = tt.slope;
  out.horizon_used = ts.back();
  out.witness["ratio"] = rs.back();
  const bool ok = rs.back() <= 0.05 ||
                  (tt.slope <= -st.trend_threshold && rs.back() <= 0.5 * rs.front());
  if (ok) {
    out.status = v.rapidly_decreasing() ? VerdictStatus::proved
                                        : VerdictStatus::holds_on_horizon;
    if (out.status == VerdictStatus::proved)
      out.notes.push_back("declared rapidly decreasing family");
  } else {
    out.status = VerdictStatus::refuted;
    out.counterexample = ts.back();
    out.notes.push_back("log t does not vanish relative to the weight on the window");
  }
  return out;
}

Verdict condition_convexity(const Weight& v, const Settings& st) {
  const std::vector<double> grid = weight_grid(v, st);  // log-spaced: uniform in s
  std::vector<double> wv(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) wv[i] = -v.log_value(grid[i]);

  Verdict out;
  out.rule = "weight-convexity";
  out.horizon_used = grid.back();
  double worst = 0.0, arg = grid.front();
  bool bad = false;
  for (size_t i = 1; i + 1 < grid.size(); ++i) {
    const double d2 = wv[i + 1] - 2.0 * wv[i] + wv[i - 1];
    const double slack = 1e-9 * std::max(1.0, std::abs(wv[i]));
    if (d2 < -slack) {
      bad = true;
      if (d2 < worst) {
        worst = d2;
        arg = grid[i];
      }
    }
  }
  out.witness["second_difference"] = worst;
  if (bad) {
    out.status = VerdictStatus::refuted;
    out.counterexample = arg;
  } else if (v.convex()) {
    out.status = VerdictStatus::proved;
    out.notes.push_back("declared convex family");
  } else {
    out.status = VerdictStatus::holds_on_horizon;
  }
  return out;
}

// Shared search for the two dilation-type bounds, w = -log v:
//   square:    2 w(t) <= w(H t) + H      (factor H dilates the abscissa)
//   doubling:  w(2 t) <= L (w(t) + 1)    (factor L scales the right side)
// A factor only counts when the window still sees w above the additive
// constant (otherwise the inequality is vacuous there) and the residual is
// non-positive with a non-diverging trend (a residual still rising at the
// window edge is about to break the bound).
Verdict condition_search(const Weight& v, bool square, const Settings& st) {
  const double hi0 = effective_hi(v, st);
  Verdict out;
  out.rule = square ? "weight-square-dilation" : "weight-doubling-power";
  const char* key = square ? "H" : "L";
  bool any = false;
  double last_f = 0.0, last_worst = 0.0, last_arg = 0.0, last_hi = 0.0;
  TailTrend last_tt;
  for (double f = 2.0; f <= 1024.0; f *= 2.0) {
    const double stretch = square ? f : 2.0;
    const double hi = hi0 / stretch;
    if (!(hi > st.grid_floor * 8.0)) continue;
    const std::vector<double> grid = log_grid(st.grid_floor, hi, st.grid_points);
    std::vector<double> stat(grid.size());
    double wmax = 0.0, worst = -kInf, arg = grid.front();
    for (size_t i = 0; i < grid.size(); ++i) {
      const double t = grid[i];
      const double wt = -v.log_value(t);
      wmax = std::max(wmax, wt);
      const double sv = square ? 2.0 * wt + v.log_value(f * t) - f
                               : -v.log_value(2.0 * t) - f * (wt + 1.0);
      stat[i] = sv;
      if (sv > worst) {
        worst = sv;
        arg = t;
      }
    }
    if (wmax <= f) continue;  // vacuous window: the constant dwarfs the weight
    any = true;
    const TailTrend tt = stat_trend(grid, stat);
    last_f = f;
    last_worst = worst;
    last_arg = arg;
    last_hi = hi;
    last_tt = tt;
    const double slack = 1e-9 * std::max(1.0, wmax);
    if (worst <= slack && !trend_diverging(tt, st)) {
      out.status = VerdictStatus::holds_on_horizon;
      out.witness[key] = f;
      out.witness["margin"] = -worst;
      out.trend = tt.slope;
      out.horizon_used = hi;
      return out;
    }
  }
  if (!any)
    fail(errc::prerequisite_not_met, "weight decays too little on the window to test the bound");
  out.status = VerdictStatus::refuted;
  out.witness[key] = last_f;
  out.witness["residual"] = last_worst;
  out.trend = last_tt.slope;
  out.horizon_used = last_hi;
  out.counterexample = last_arg;
  out.notes.push_back(square ? "doubled decay is never absorbed by any tested dilation"
                             : "doubled abscissa exceeds every tested multiple of the decay");
  return out;
}

}  // namespace

Verdict check_weight_condition(const Weight& v, WeightCondition cond, const Settings& st) {
  switch (cond) {
    case WeightCondition::rapid_decrease: return condition_rapid(v, st);
    case WeightCondition::convexity: return condition_convexity(v, st);
    case WeightCondition::square_dilation: return condition_search(v, true, st);
    case WeightCondition::doubling_power: return condition_search(v, false, st);
  }
  fail(errc::invalid_parameter, "unknown weight condition");
}

std::vector<double> weight_grid(const Weight& v, const Settings& st) {
  const double hi = effective_hi(v, st);
  if (!(hi > st.grid_floor * 1.0001))
    fail(errc::invalid_parameter, "weight evaluation window is empty");
  return log_grid(st.grid_floor, hi, st.grid_points);
}

}  // namespace wsq
