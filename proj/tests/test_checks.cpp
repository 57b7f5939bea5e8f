#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "wsq/checks.hpp"
#include "wsq/grid.hpp"
#include "wsq/sequence.hpp"

using namespace wsq;
using Catch::Approx;

namespace {

LogSequence flat(int J) { return make_table(std::vector<double>(J + 1, 0.0)); }

}  // namespace

TEST_CASE("trend classifier", "[checks]") {
  const Settings st;
  const std::vector<int> idx = tail_indices(512);
  std::vector<double> x;
  for (int j : idx) x.push_back(std::log(j));

  SECTION("constant statistic is bounded") {
    const TailTrend tt = tail_trend(x, std::vector<double>(x.size(), std::log(3.0)));
    CHECK(tt.slope == Approx(0.0).margin(1e-12));
    CHECK_FALSE(trend_diverging(tt, st));
  }

  SECTION("logarithmic growth diverges with the expected slope") {
    std::vector<double> y;
    for (double xi : x) y.push_back(0.5 * xi);
    const TailTrend tt = tail_trend(x, y);
    CHECK(tt.slope == Approx(0.5).margin(1e-9));
    CHECK(trend_diverging(tt, st));
  }

  SECTION("decaying transient of a bounded statistic is not divergence") {
    // log 2 - log(pi j / 2)/(2j): converges, slope ~ 7e-3 at J = 512 but
    // halving per octave.
    std::vector<double> y;
    for (int j : idx) y.push_back(std::log(2.0) - std::log(1.5707963 * j) / (2.0 * j));
    const TailTrend tt = tail_trend(x, y);
    CHECK(tt.slope > st.trend_threshold);
    CHECK_FALSE(trend_diverging(tt, st));
  }

  SECTION("even log log j counts as persistent divergence") {
    std::vector<double> y;
    for (double xi : x) y.push_back(std::log(xi));
    CHECK(trend_diverging(tail_trend(x, y), st));
  }
}

TEST_CASE("single-constant domination", "[checks]") {
  const LogSequence g1 = make_gevrey(1.0, 512);
  const LogSequence g2 = make_gevrey(2.0, 512);
  const LogSequence g3 = make_gevrey(3.0, 512);
  const LogSequence q2 = make_qgevrey(2.0, 512);

  SECTION("slower factorial power under a faster one") {
    const Verdict v = check_strong_dom(g2, g1);
    CHECK(v.status == VerdictStatus::proved);
    CHECK(v.holds());
    CHECK(v.witness.at("A") == 1.0);
    CHECK(v.trend <= 1e-3);
    CHECK(v.rule == "strong-dom");
  }

  SECTION("identical operands") {
    const Verdict v = check_strong_dom(g2, g2);
    CHECK(v.status == VerdictStatus::proved);
    CHECK(v.witness.at("A") == 1.0);
    CHECK(v.trend == Approx(0.0).margin(1e-12));
  }

  SECTION("faster family on the right diverges") {
    const Verdict v = check_strong_dom(g1, g2);
    CHECK(v.status == VerdictStatus::diverges_on_horizon);
    CHECK_FALSE(v.holds());
    CHECK(v.trend > 1.0);
  }

  SECTION("squared-exponent dominates every factorial power") {
    const Verdict v = check_strong_dom(q2, g3);
    CHECK(v.status == VerdictStatus::proved);
    CHECK(v.witness.at("A") == 1.0);

    CHECK(check_strong_dom(g3, q2).status == VerdictStatus::diverges_on_horizon);
  }

  SECTION("squared-exponent pairs are decided numerically") {
    const LogSequence q3 = make_qgevrey(3.0, 64);
    const LogSequence q2s = make_qgevrey(2.0, 64);
    const Verdict v = check_strong_dom(q3, q2s);
    CHECK(v.status == VerdictStatus::holds_on_horizon);  // no closed-form rule fires
    CHECK(v.witness.at("A") == 1.0);
    CHECK(check_strong_dom(q2s, q3).status == VerdictStatus::diverges_on_horizon);
  }

  SECTION("table inputs stay numeric") {
    const Verdict v = check_strong_dom(flat(64), flat(64));
    CHECK(v.status == VerdictStatus::holds_on_horizon);
    CHECK(v.witness.at("A") == 1.0);
  }

  SECTION("operands are trimmed to the common horizon") {
    const Verdict v = check_strong_dom(g1, make_gevrey(1.0, 256));
    CHECK(v.horizon_used == 256.0);
    CHECK(v.holds());
  }
}

TEST_CASE("root-normalized growth order", "[checks]") {
  const LogSequence g1 = make_gevrey(1.0, 512);
  const LogSequence g2 = make_gevrey(2.0, 512);
  const LogSequence q2 = make_qgevrey(2.0, 512);

  SECTION("factorial powers order by exponent") {
    const Verdict v = check_preceq(g1, g2);
    CHECK(v.status == VerdictStatus::proved);
    CHECK(v.witness.at("sup") == 1.0);
    CHECK(v.rule == "preceq");
  }

  SECTION("reverse order diverges like log j") {
    const Verdict v = check_preceq(g2, g1);
    CHECK(v.status == VerdictStatus::diverges_on_horizon);
    CHECK(v.trend == Approx(1.0).margin(0.15));  // r_j = log(j!)/j ~ log j - 1
  }

  SECTION("factorial power precedes squared-exponent") {
    const Verdict v = check_preceq(g1, q2);
    CHECK(v.status == VerdictStatus::proved);
    CHECK(v.witness.at("sup") == Approx(0.5).margin(1e-12));  // max at j = 1: exp(-log 2)
    CHECK_FALSE(check_preceq(q2, g1).holds());
  }
}

TEST_CASE("geometric rescaling is an equivalence", "[checks]") {
  const LogSequence m = make_gevrey(1.0, 256);
  const LogSequence s = scale(m, 3.0);

  const Verdict fwd = check_preceq(m, s);
  CHECK(fwd.status == VerdictStatus::holds_on_horizon);
  CHECK(fwd.witness.at("sup") == Approx(1.0 / 3.0).margin(1e-9));
  CHECK(fwd.trend <= 1e-3);

  const Verdict bwd = check_preceq(s, m);
  CHECK(bwd.status == VerdictStatus::holds_on_horizon);
  CHECK(bwd.witness.at("sup") == Approx(3.0).margin(1e-9));

  const Verdict both = check_approx(m, s);
  CHECK(both.status == VerdictStatus::holds_on_horizon);
  CHECK(both.witness.at("forward") == Approx(1.0 / 3.0).margin(1e-9));
  CHECK(both.witness.at("backward") == Approx(3.0).margin(1e-9));
  CHECK(both.rule == "approx");

  CHECK(check_approx(m, m).status == VerdictStatus::proved);
  CHECK_FALSE(check_approx(m, make_gevrey(2.0, 256)).holds());
}

TEST_CASE("merge bound on shifted indices", "[checks]") {
  SECTION("factorial powers carry the binomial constant") {
    const Verdict v1 = check_mg(make_gevrey(1.0, 512));
    CHECK(v1.status == VerdictStatus::proved);
    CHECK(v1.witness.at("C") == 2.0);
    CHECK(v1.rule == "mg");

    const Verdict v2 = check_mg(make_gevrey(2.0, 512));
    CHECK(v2.status == VerdictStatus::proved);
    CHECK(v2.witness.at("C") == 4.0);
  }

  SECTION("squared-exponent diverges") {
    const Verdict v = check_mg(make_qgevrey(2.0, 512));
    CHECK(v.status == VerdictStatus::diverges_on_horizon);
    CHECK_FALSE(v.holds());
    CHECK(v.trend > 10.0);  // diagonal statistic is j log 2
  }

  SECTION("flat table holds with constant one") {
    const Verdict v = check_mg(flat(64));
    CHECK(v.status == VerdictStatus::holds_on_horizon);
    CHECK(v.witness.at("C") == 1.0);
  }

  SECTION("requires a unit leading term") {
    CHECK_THROWS_AS(check_mg(make_table({1.0, 2.0, 3.0})), Error);
  }
}

TEST_CASE("root-quotient separation", "[checks]") {
  SECTION("factorial family separates with factor two") {
    const Verdict v = check_om1_char(make_gevrey(1.0, 512));
    CHECK(v.status == VerdictStatus::proved);
    CHECK(v.witness.at("L") == 2.0);
    CHECK(std::exp(v.witness.at("margin")) == Approx(2.0).epsilon(0.1));
    CHECK(v.rule == "om1-char");
  }

  SECTION("squared-exponent separates even faster") {
    const Verdict v = check_om1_char(make_qgevrey(2.0, 512));
    CHECK(v.status == VerdictStatus::proved);
    CHECK(v.witness.at("L") == 2.0);
    CHECK(v.witness.at("margin") > 10.0);
  }

  SECTION("flat table is refuted with a reproducible index") {
    const Verdict v = check_om1_char(flat(64));
    CHECK(v.status == VerdictStatus::refuted);
    CHECK_FALSE(v.holds());
    REQUIRE(v.counterexample.has_value());
    CHECK(*v.counterexample >= 1.0);
    CHECK(v.witness.at("margin") == Approx(0.0).margin(1e-12));
  }

  SECTION("requires a normalized log-convex input") {
    CHECK_THROWS_AS(check_om1_char(make_table({0.0, 2.0, 1.0, 3.0})), Error);
  }
}

TEST_CASE("domination implies growth order across the family matrix", "[checks]") {
  const std::vector<LogSequence> fams{make_gevrey(1.0, 512), make_gevrey(2.0, 512),
                                      make_gevrey(3.0, 512), make_qgevrey(2.0, 512)};
  for (const LogSequence& m : fams) {
    for (const LogSequence& n : fams) {
      if (check_strong_dom(m, n).holds()) CHECK(check_preceq(n, m).holds());
    }
  }
}

TEST_CASE("merge bound matches equivalence with the convolution square", "[checks]") {
  const std::vector<LogSequence> inputs{make_gevrey(1.0, 512), make_gevrey(2.0, 512),
                                        make_gevrey(3.0, 512), make_qgevrey(2.0, 512), flat(64)};
  for (const LogSequence& m : inputs) {
    const bool mg = check_mg(m).holds();
    const bool sq = check_preceq(m, convolve(m, m)).holds();
    CHECK(mg == sq);
  }
}
