// Acceptance checklist: eleven end-to-end properties, one PASS/FAIL line
// each, with brute-force or closed-form oracles independent of the library
// internals.  Exit status is the number of failed criteria.
//
// argv[1] must name the CLI binary (criterion 11 drives it twice and checks
// the exit-code contract).

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wsq/assoc.hpp"
#include "wsq/checks.hpp"
#include "wsq/defs.hpp"
#include "wsq/errors.hpp"
#include "wsq/sequence.hpp"
#include "wsq/spaces.hpp"
#include "wsq/weight.hpp"

using namespace wsq;

namespace {

// Pinned tolerances.  These are part of the acceptance contract; loosening
// them is a behavior change, not a test fix.
constexpr double kTolOmegaExact = 1e-9;   // evaluator vs. brute force, spot values
constexpr double kTolInvert = 1e-9;       // inversion roundtrip
constexpr double kTolConvMerge = 1e-12;   // merge route vs. min route
constexpr double kTolOmegaAdd = 1e-9;     // omega additivity under convolution
constexpr double kTolAssocRound = 1e-8;   // associated-sequence roundtrips
constexpr double kTolSandwich = 1e-9;     // theta series envelope slack
constexpr double kTolEssential = 1e-6;    // essentiality gap and half-power slack

int failures = 0;
bool current_ok = true;
std::vector<std::string> details;

void expect(bool ok, const std::string& what) {
  if (ok) return;
  current_ok = false;
  if (details.size() < 8) details.push_back(what);
}

void finish(int idx, const char* title) {
  std::printf("%s  criterion %2d: %s\n", current_ok ? "PASS" : "FAIL", idx, title);
  for (const std::string& d : details) std::printf("        - %s\n", d.c_str());
  if (!current_ok) ++failures;
  details.clear();
  current_ok = true;
}

std::string num(double x) {
  char b[40];
  std::snprintf(b, sizeof b, "%.6g", x);
  return b;
}

std::string data_path(const char* name) { return std::string(WSQ_TEST_DATA_DIR) + "/" + name; }

// Exit status of a shell command, or -1 when it did not terminate normally.
int run_cli(const std::string& cmd) {
  const int rc = std::system(cmd.c_str());
  if (rc == -1 || !WIFEXITED(rc)) return -1;
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  const Settings st;
  const Registry reg = builtin_registry(st);
  const LogSequence& g1 = reg.sequences.at("gevrey1");
  const LogSequence& g2 = reg.sequences.at("gevrey2");
  const LogSequence& g3 = reg.sequences.at("gevrey3");
  const LogSequence& qg2 = reg.sequences.at("qgevrey2");

  // 1. Evaluator omega vs. brute-force supremum, plus one closed-form value.
  {
    for (const LogSequence* m : {&g1, &g2, &qg2}) {
      const OmegaEvaluator ev(*m);
      for (double t : default_grid(*m, st)) {
        const double diff = std::abs(ev.omega(t) - omega_sup_bruteforce(*m, t));
        expect(diff <= kTolOmegaExact,
               family_label(m->family()) + " at t=" + num(t) + ": |diff|=" + num(diff));
      }
    }
    const double spot = std::abs(OmegaEvaluator(g1).omega(3.0) - std::log(4.5));
    expect(spot <= kTolOmegaExact, "factorial weight function at t=3: |diff|=" + num(spot));
    finish(1, "weight function matches the brute-force supremum");
  }

  // 2. Stirling asymptote: omega(t) / (s t^{1/s}) near 1 at the domain end.
  {
    for (double s : {1.0, 2.0, 3.0}) {
      const LogSequence m = make_gevrey(s, st.horizon);
      const double t = 0.9 * std::exp(m.quotient_log(m.horizon()));
      const double ratio = OmegaEvaluator(m).omega(t) / (s * std::pow(t, 1.0 / s));
      expect(ratio >= 0.9 && ratio <= 1.1, "s=" + num(s) + ": ratio=" + num(ratio));
    }
    finish(2, "Gevrey weight functions track the Stirling asymptote");
  }

  // 3. Inversion reconstructs the sequence on the interior half-horizon.
  {
    for (const auto& [name, m] : reg.sequences) {
      const OmegaEvaluator ev(m);
      double worst = 0.0;
      for (int j = 0; j <= m.horizon() / 2; ++j)
        worst = std::max(worst, std::abs(ev.invert(j) - m.log_value(j)));
      expect(worst <= kTolInvert, name + ": worst |diff|=" + num(worst));
    }
    finish(3, "inversion reconstructs the log-convex minorant");
  }

  // 4. Convolution: quotient merge == direct minimum; omega adds up; doubled
  //    factorial indices are exact.
  {
    const std::vector<const LogSequence*> builtins = {&g1, &g2, &g3, &qg2};
    for (const LogSequence* a : builtins)
      for (const LogSequence* b : builtins) {
        const LogSequence merged = convolve(*a, *b);
        const LogSequence direct = convolve_by_min(*a, *b).sequence;
        double worst = 0.0;
        for (int j = 0; j <= merged.horizon(); ++j)
          worst = std::max(worst, std::abs(merged.log_value(j) - direct.log_value(j)));
        expect(worst <= kTolConvMerge, family_label(a->family()) + " * " +
                                           family_label(b->family()) +
                                           ": merge vs min worst=" + num(worst));

        const OmegaEvaluator ea(*a), eb(*b), ec(merged);
        const double hi = 0.9 * std::min({ea.t_max(), eb.t_max(), ec.t_max()});
        double worst_add = 0.0;
        for (double t : log_grid(0.5, hi, st.grid_points))
          worst_add =
              std::max(worst_add, std::abs(ec.omega(t) - ea.omega(t) - eb.omega(t)));
        expect(worst_add <= kTolOmegaAdd, family_label(a->family()) + " * " +
                                              family_label(b->family()) +
                                              ": additivity worst=" + num(worst_add));
      }

    const LogSequence cc = convolve(g1, g1);
    for (int j = 0; 2 * j <= cc.horizon(); ++j)
      expect(cc.log_value(2 * j) == 2.0 * g1.log_value(j),
             "doubled index " + std::to_string(2 * j) + " not exact");
    finish(4, "convolution: merge route, min route and weight additivity");
  }

  // 5. Associated sequences recover their generators: M^{v_M} = M on the
  //    interior half (the outer half presses the maximizer into the domain
  //    cap), and the closed form (j/e)^j for v(t) = e^{-t}.
  {
    Settings deep = st;
    deep.bracket_cap = 800.0;  // q-Gevrey quotients outgrow the default cap
    for (const auto& [name, m] : reg.sequences) {
      const Weight v = Weight::from_sequence_dilate(m, 1.0);
      const LogSequence back = assoc_sequence(v, m.horizon() / 2, deep);
      double worst = 0.0;
      for (int j = 0; j <= back.horizon(); ++j)
        worst = std::max(worst, std::abs(back.log_value(j) - m.log_value(j)));
      expect(worst <= kTolAssocRound, name + ": roundtrip worst=" + num(worst));
    }

    const LogSequence me = assoc_sequence(Weight::exp_power(1.0, 1.0), st.horizon, st);
    expect(std::abs(me.log_value(0)) <= kTolAssocRound, "index 0 of exp(-t) transform");
    double worst = 0.0;
    for (int j = 1; j <= me.horizon(); ++j)
      worst = std::max(worst, std::abs(me.log_value(j) - (j * std::log(double(j)) - j)));
    expect(worst <= kTolAssocRound, "exp(-t): closed-form worst=" + num(worst));
    finish(5, "associated sequences round-trip their generating weights");
  }

  // 6. Comparison series envelope: omega(ct/2) <= log theta_c(t) <= log 2 + omega(ct).
  {
    for (const auto& [name, m] : reg.sequences) {
      const OmegaEvaluator ev(m);
      for (double c : {0.5, 1.0, 2.0}) {
        const double lo = std::max(st.grid_floor, std::exp(m.quotient_log(1)) / 2.0);
        const double hi = 0.9 * ev.t_max() / c;
        for (double t : log_grid(lo, hi, st.grid_points)) {
          const double th = theta_eval(ThetaFunction{m, false, c}, t);
          const double lower = ev.omega(c * t / 2.0) - th;
          const double upper = th - (std::log(2.0) + ev.omega(c * t));
          expect(lower <= kTolSandwich, name + " c=" + num(c) + " t=" + num(t) +
                                            ": lower slack " + num(lower));
          expect(upper <= kTolSandwich, name + " c=" + num(c) + " t=" + num(t) +
                                            ": upper slack " + num(upper));
        }
      }
    }
    finish(6, "comparison series sandwiched by the weight function");
  }

  // 7. Inclusion grid over all five systems matches the checked-in fixture.
  {
    nlohmann::json fix;
    try {
      std::ifstream in(data_path("inclusion_expected.json"));
      fix = nlohmann::json::parse(in);
    } catch (const std::exception& e) {
      expect(false, std::string("fixture unreadable: ") + e.what());
    }
    if (current_ok) {
      const std::vector<std::string> order = fix.at("order");
      for (const auto& [system, grid] : fix.at("holds").items()) {
        for (std::size_t i = 0; i < order.size(); ++i)
          for (std::size_t j = 0; j < order.size(); ++j) {
            const bool want = grid.at(i).at(j).get<bool>();
            const Verdict v =
                decide_inclusion(resolve_space(reg, system + ":" + order[i]),
                                 resolve_space(reg, system + ":" + order[j]), st);
            expect(v.holds() == want, system + ": " + order[i] + " -> " + order[j] +
                                          " expected " + (want ? "holds" : "fails") +
                                          ", got " + status_name(v.status));
          }
      }
    }
    finish(7, "inclusion grid matches the expected-verdict fixture");
  }

  // 8. Multiplicative closure by system kind.
  {
    for (const char* sys : {"dilatation-inductive", "dilatation-projective"}) {
      for (const char* name : {"gevrey1", "gevrey2", "gevrey3"}) {
        const Verdict v =
            decide_mult_closure(resolve_space(reg, std::string(sys) + ":" + name), st);
        expect(v.holds(), std::string(sys) + ":" + name + " not closed");
        expect(v.witness.count("H") == 1,
               std::string(sys) + ":" + name + " missing absorption witness");
      }
      const Verdict vg1 =
          decide_mult_closure(resolve_space(reg, std::string(sys) + ":gevrey1"), st);
      expect(vg1.witness.count("H") == 1 && vg1.witness.at("H") == 2.0,
             std::string(sys) + ":gevrey1 expected H=2");
      const Verdict vq =
          decide_mult_closure(resolve_space(reg, std::string(sys) + ":qgevrey2"), st);
      expect(!vq.holds(), std::string(sys) + ":qgevrey2 should not be closed");
    }
    for (const char* sys : {"exponential-inductive", "exponential-projective"})
      for (const auto& [name, m] : reg.sequences) {
        const Verdict v =
            decide_mult_closure(resolve_space(reg, std::string(sys) + ":" + name), st);
        expect(v.status == VerdictStatus::proved,
               std::string(sys) + ":" + name + " not closed by construction");
      }
    for (const auto& [name, m] : reg.sequences) {
      const Verdict v = decide_mult_closure(resolve_space(reg, "single:" + name), st);
      expect(!v.holds(), "single:" + name + " cannot be closed");
    }
    finish(8, "multiplicative closure follows the system kind");
  }

  // 9. Sequence conditions bridge to weight-function conditions: moderate
  //    growth == square-dilation bound on v_M == convolution-square order;
  //    root-quotient ratio == doubling-power bound on v_M.
  {
    for (const auto& [name, m] : reg.sequences) {
      const Weight vm = Weight::from_sequence_dilate(m, 1.0);
      const bool mg = check_mg(m, st).holds();
      const bool square = check_weight_condition(vm, WeightCondition::square_dilation, st).holds();
      const bool conv_order = check_preceq(m, convolve(m, m), st).holds();
      expect(mg == square,
             name + ": mg=" + std::to_string(mg) + " square_dilation=" + std::to_string(square));
      expect(mg == conv_order, name + ": mg=" + std::to_string(mg) +
                                   " convolution-square order=" + std::to_string(conv_order));
      const bool om1 = check_om1_char(m, st).holds();
      const bool doubling =
          check_weight_condition(vm, WeightCondition::doubling_power, st).holds();
      expect(om1 == doubling, name + ": om1char=" + std::to_string(om1) +
                                  " doubling_power=" + std::to_string(doubling));
    }
    finish(9, "sequence conditions bridge to weight conditions");
  }

  // 10. Essential weights: the factorial dilation weight equals its own
  //     associated weight, and convex normalized weights obey the half-power
  //     envelope.
  {
    const EssentialityReport er =
        essentiality_gap(Weight::from_sequence_dilate(g1, 1.0), st.horizon / 2, st);
    double gap = 0.0;
    for (double x : er.gap.value) gap = std::max(gap, std::abs(x));
    expect(gap <= kTolEssential, "factorial weight: sup |gap|=" + num(gap));
    expect(er.verdict.holds(), "factorial weight: gap verdict not bounded");

    const Weight n = normalize(Weight::exp_power(1.0, 1.0));
    const LogSequence mn = assoc_sequence(n, 64, st);
    const OmegaEvaluator ev(mn);
    double worst = -kTolEssential;
    for (double t : default_grid(mn, st))
      worst = std::max(worst, 0.5 * n.omega(t) - ev.omega(t));
    expect(worst <= kTolEssential, "half-power slack=" + num(worst));
    finish(10, "essential weights and the convex half-power envelope");
  }

  // 11. CLI: byte-identical reports across runs, exit 2 on invalid input,
  //     exit 3 past the evaluation domain.
  {
    if (argc < 2) {
      expect(false, "usage: acceptance <path-to-cli>");
    } else {
      const std::string cli = std::string("\"") + argv[1] + "\"";
      const std::string defs = "\"" + data_path("defs.json") + "\"";
      const int r1 = run_cli(cli + " report --defs " + defs + " --out acc_report_1.json");
      const int r2 = run_cli(cli + " report --defs " + defs + " --out acc_report_2.json");
      expect(r1 == 0 && r2 == 0,
             "report exits: " + std::to_string(r1) + ", " + std::to_string(r2));
      const std::string rep1 = slurp("acc_report_1.json");
      expect(!rep1.empty() && rep1 == slurp("acc_report_2.json"),
             "consecutive reports are not byte-identical");
      std::remove("acc_report_1.json");
      std::remove("acc_report_2.json");

      const int bad_name = run_cli(cli + " seq nosuchname >/dev/null 2>&1");
      expect(bad_name == 2, "invalid name exited " + std::to_string(bad_name));
      const int past_domain =
          run_cli(cli + " omega gevrey1 --tmin 1 --tmax 1000000 >/dev/null 2>&1");
      expect(past_domain == 3, "out-of-domain exited " + std::to_string(past_domain));
    }
    finish(11, "CLI determinism and exit-code contract");
  }

  if (failures == 0) std::printf("all 11 acceptance criteria passed\n");
  return failures;
}
