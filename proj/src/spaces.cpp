#include "wsq/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wsq/assoc.hpp"
#include "wsq/checks.hpp"
#include "wsq/errors.hpp"

namespace wsq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLog2 = std::log(2.0);

}  // namespace

const char* system_name(SystemKind k) {
  switch (k) {
    case SystemKind::single: return "single";
    case SystemKind::dilatation_inductive: return "dilatation-inductive";
    case SystemKind::dilatation_projective: return "dilatation-projective";
    case SystemKind::exponential_inductive: return "exponential-inductive";
    case SystemKind::exponential_projective: return "exponential-projective";
  }
  return "unknown";
}

bool is_dilatation(SystemKind k) {
  return k == SystemKind::dilatation_inductive || k == SystemKind::dilatation_projective;
}

bool is_exponential(SystemKind k) {
  return k == SystemKind::exponential_inductive || k == SystemKind::exponential_projective;
}

// ---------------------------------------------------------------------------
// theta series

namespace {

void validate_theta(const ThetaFunction& th, double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    fail(errc::invalid_parameter, "theta argument must be finite and nonnegative");
  if (th.powered) {
    if (!std::isfinite(th.c) || th.c < 1.0 || th.c != std::floor(th.c))
      fail(errc::invalid_parameter, "powered theta needs an integer exponent c >= 1");
  } else if (!std::isfinite(th.c) || !(th.c > 0.0)) {
    fail(errc::invalid_parameter, "dilated theta needs a dilation factor c > 0");
  }
}

}  // namespace

ThetaEvalDetail theta_eval_detail(const ThetaFunction& th, double t) {
  validate_theta(th, t);
  const OmegaEvaluator ev(th.m);
  const double reach = th.powered ? t : th.c * t;
  if (!(reach < ev.t_max()))
    fail(errc::horizon_exceeded, "theta argument reaches past the sequence's evaluation cap");

  ThetaEvalDetail out;
  if (t == 0.0) {
    // only the j = 0 term survives
    out.log_value = th.powered ? -th.c * th.m.log_value(0) : -th.m.log_value(0);
    out.terms_used = 1;
    return out;
  }

  const double logt = std::log(t);
  const int J = th.m.horizon();
  double best = -kInf;     // running maximum, the truncation reference
  double run_max = -kInf;  // normalization of the streamed log-sum-exp
  double acc = 0.0;
  double prev = kInf;
  for (int j = 0; j <= J; ++j) {
    const double term = th.powered
                            ? th.c * (j * logt - th.m.log_value(j)) - j * kLog2
                            : j * (std::log(th.c) + logt - kLog2) - th.m.log_value(j);
    if (term > run_max) {
      acc = acc * std::exp(run_max - term) + 1.0;
      run_max = term;
    } else {
      acc += std::exp(term - run_max);
    }
    ++out.terms_used;
    best = std::max(best, term);
    if (term < best - 40.0) {
      if (j < J) {
        // geometric tail estimate from the last observed decay ratio
        const double r = std::exp(std::min(term - prev, -1e-12));
        out.truncation_bound = std::exp(term - run_max) / acc * r / (1.0 - r);
      }
      break;
    }
    prev = term;
  }
  out.log_value = run_max + std::log(acc);
  return out;
}

double theta_eval(const ThetaFunction& th, double t) { return theta_eval_detail(th, t).log_value; }

// ---------------------------------------------------------------------------
// polynomial norm

double poly_norm(const std::vector<double>& coeff_log_mag, const Weight& v,
                 const std::vector<double>& grid) {
  if (grid.empty()) fail(errc::invalid_parameter, "polynomial norm needs a nonempty grid");
  for (double a : coeff_log_mag)
    if (std::isnan(a) || a == kInf)
      fail(errc::invalid_parameter, "coefficient log-magnitudes must be finite or -inf");

  double bestval = -kInf;
  for (double t : grid) {
    if (!(t >= 0.0) || !std::isfinite(t))
      fail(errc::invalid_parameter, "grid abscissas must be finite and nonnegative");
    const double logt = t > 0.0 ? std::log(t) : -kInf;
    double top = -kInf;
    for (std::size_t j = 0; j < coeff_log_mag.size(); ++j) {
      if (coeff_log_mag[j] == -kInf) continue;
      top = std::max(top, coeff_log_mag[j] + (j ? double(j) * logt : 0.0));
    }
    if (top == -kInf) continue;  // zero polynomial
    double acc = 0.0;
    for (std::size_t j = 0; j < coeff_log_mag.size(); ++j) {
      if (coeff_log_mag[j] == -kInf) continue;
      acc += std::exp(coeff_log_mag[j] + (j ? double(j) * logt : 0.0) - top);
    }
    bestval = std::max(bestval, top + std::log(acc) + v.log_value(t));
  }
  return bestval;
}

// ---------------------------------------------------------------------------
// inclusion / equality / closure

namespace {

int reduction_horizon(const Settings& st) { return std::max(8, st.horizon / 2); }

const Weight* weight_source(const SpaceSpec& s) { return std::get_if<Weight>(&s.source); }

// A sequence standing in for the source: either the sequence itself, or the
// associated sequence of the weight (accurate up to the two-sided bracket).
LogSequence reduced_sequence(const SpaceSpec& s, const Settings& st,
                             std::vector<std::string>& notes) {
  if (const LogSequence* m = std::get_if<LogSequence>(&s.source)) return *m;
  const Weight& u = std::get<Weight>(s.source);
  const std::string label = s.name.empty() ? u.describe() : s.name;
  notes.push_back("'" + label + "' reduced to its associated sequence (bracket accuracy)");
  return assoc_sequence(u, reduction_horizon(st), st);
}

// Exponential towers assume sources from the normalized log-convex class;
// ragged sequences are replaced by their normalized convex representatives.
LogSequence ensure_lc(const LogSequence& m, const std::string& label,
                      std::vector<std::string>& notes) {
  if (m.lc()) return m;
  const NormalizedSequence ns = lc_normalize(lc_minorant(m));
  notes.push_back("'" + label + "' lc-normalized; the verdict applies to the normalized representative");
  return ns.sequence;
}

void require_dilatation_reduction(const SpaceSpec& a, const SpaceSpec& b, const Settings& st) {
  const Weight* ua = weight_source(a);
  const Weight* ub = weight_source(b);
  if (!ua && !ub) return;  // pure sequence comparison carries no reduction hypotheses
  for (const Weight* u : {ua, ub})
    if (u && !u->convex())
      fail(errc::prerequisite_not_met, "dilatation reduction needs convex weight sources");
  const auto side_mg = [&](const SpaceSpec& s, const Weight* u) {
    return u ? u->moderate_growth() : check_mg(std::get<LogSequence>(s.source), st).holds();
  };
  if (!side_mg(a, ua) && !side_mg(b, ub))
    fail(errc::prerequisite_not_met, "dilatation reduction needs one side of moderate growth");
}

void require_exponential_sources(const SpaceSpec& a, const SpaceSpec& b) {
  for (const SpaceSpec* s : {&a, &b})
    if (const Weight* u = weight_source(*s); u && !u->normalized())
      fail(errc::prerequisite_not_met, "exponential systems need normalized weight sources");
  if (const Weight* ua = weight_source(a); ua && !ua->convex())
    fail(errc::prerequisite_not_met, "exponential reduction needs a convex left weight");
}

// Smallest exponent c in {1, 2, 4, 8} whose scaled-index roots of the source
// dominate the target with one constant; exhausting the list refutes.
Verdict exponential_search(const LogSequence& ma, const LogSequence& nb, const Settings& st) {
  Verdict last;
  for (int c : {1, 2, 4, 8}) {
    Verdict vc = check_strong_dom(tilde(ma, c), nb, st);
    vc.witness["c"] = double(c);
    if (vc.holds()) return vc;
    last = std::move(vc);
  }
  last.status = VerdictStatus::refuted;
  const LogSequence deepest = tilde(ma, 8);
  const int J = std::min(deepest.horizon(), nb.horizon());
  int arg = 0;
  double gap = -kInf;
  for (int j = 0; j <= J; ++j) {
    const double d = nb.log_value(j) - deepest.log_value(j);
    if (d > gap) {
      gap = d;
      arg = j;
    }
  }
  last.counterexample = double(arg);
  last.notes.push_back("no scaled-root exponent c <= 8 admits a one-constant domination");
  return last;
}

}  // namespace

Verdict decide_inclusion(const SpaceSpec& a, const SpaceSpec& b, const Settings& st) {
  if (a.system != b.system)
    fail(errc::incompatible_systems, std::string("cannot compare a ") + system_name(a.system) +
                                         " system with a " + system_name(b.system) + " system");

  std::vector<std::string> notes;
  Verdict v;
  if (a.system == SystemKind::single) {
    const LogSequence ma = reduced_sequence(a, st, notes);
    const LogSequence nb = reduced_sequence(b, st, notes);
    v = check_strong_dom(ma, nb, st);
    v.rule = "single-domination";
    v.notes.push_back("sequence condition: strong-dom (target <= A * source)");
  } else if (is_dilatation(a.system)) {
    require_dilatation_reduction(a, b, st);
    const LogSequence ma = reduced_sequence(a, st, notes);
    const LogSequence nb = reduced_sequence(b, st, notes);
    v = check_preceq(nb, ma, st);
    v.rule = "dilatation-growth-order";
    v.notes.push_back("sequence condition: preceq (roots of target/source bounded)");
  } else {
    require_exponential_sources(a, b);
    const LogSequence ma = ensure_lc(reduced_sequence(a, st, notes), a.name, notes);
    const LogSequence nb = ensure_lc(reduced_sequence(b, st, notes), b.name, notes);
    v = exponential_search(ma, nb, st);
    v.rule = "exponential-root-domination";
    v.notes.push_back("sequence condition: strong-dom on scaled-index roots");
  }
  v.notes.insert(v.notes.end(), notes.begin(), notes.end());
  return v;
}

Verdict decide_equality(const SpaceSpec& a, const SpaceSpec& b, const Settings& st) {
  const Verdict fwd = decide_inclusion(a, b, st);
  const Verdict bwd = decide_inclusion(b, a, st);

  Verdict v;
  v.rule = "space-equality";
  v.horizon_used = fwd.horizon_used;
  v.trend = std::max(fwd.trend, bwd.trend);
  for (const auto& [key, val] : fwd.witness) v.witness["forward_" + key] = val;
  for (const auto& [key, val] : bwd.witness) v.witness["backward_" + key] = val;
  v.notes.push_back(std::string("forward: ") + status_name(fwd.status));
  v.notes.push_back(std::string("backward: ") + status_name(bwd.status));

  if (fwd.status == VerdictStatus::proved && bwd.status == VerdictStatus::proved) {
    v.status = VerdictStatus::proved;
  } else if (fwd.holds() && bwd.holds()) {
    v.status = VerdictStatus::holds_on_horizon;
  } else if (fwd.status == VerdictStatus::refuted || bwd.status == VerdictStatus::refuted) {
    v.status = VerdictStatus::refuted;
    v.counterexample =
        fwd.status == VerdictStatus::refuted ? fwd.counterexample : bwd.counterexample;
  } else {
    v.status = VerdictStatus::diverges_on_horizon;
  }
  return v;
}

Verdict decide_mult_closure(const SpaceSpec& a, const Settings& st) {
  if (a.system == SystemKind::single) {
    Verdict v;
    v.status = VerdictStatus::refuted;
    v.rule = "closure-single";
    v.notes.push_back("a single weighted space never absorbs products of its members");
    return v;
  }
  if (is_exponential(a.system)) {
    Verdict v;
    v.status = VerdictStatus::proved;
    v.rule = "closure-exponential";
    v.notes.push_back("power towers absorb products by construction");
    return v;
  }

  if (const LogSequence* m = std::get_if<LogSequence>(&a.source)) {
    if (!m->log_convex())
      fail(errc::prerequisite_not_met,
           "multiplication closure needs a log-convex sequence source");
    Verdict v = check_mg(*m, st);
    v.rule = "closure-dilatation";
    if (v.holds()) {
      if (auto it = v.witness.find("C"); it != v.witness.end())
        v.witness["H"] = std::exp2(std::ceil(std::log2(std::max(1.0, it->second))));
      v.notes.push_back("products land in the dilated class of the convolution square");
    } else {
      v.notes.push_back("products escape every dilate of the convolution square");
    }
    return v;
  }

  const Weight& u = std::get<Weight>(a.source);
  if (!(u.normalized() && u.convex()))
    fail(errc::prerequisite_not_met,
         "multiplication closure needs a normalized convex weight source");
  Verdict v = check_weight_condition(u, WeightCondition::square_dilation, st);
  v.rule = "closure-dilatation";
  v.notes.push_back("square dilation bounds the product weight");
  return v;
}

}  // namespace wsq
