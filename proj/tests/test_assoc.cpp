#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "wsq/assoc.hpp"
#include "wsq/sequence.hpp"

using namespace wsq;
using Catch::Approx;

namespace {

// Local oracle, independent of the library's brute-force entry point.
double sup_oracle(const std::vector<double>& l, double t) {
  const double s = std::log(t);
  double best = -l[0];
  for (size_t j = 1; j < l.size(); ++j) best = std::max(best, double(j) * s - l[j]);
  return best;
}

std::vector<double> random_table(std::mt19937& rng, int J) {
  std::uniform_real_distribution<double> step(-0.5, 3.0);
  std::vector<double> l{0.0};
  for (int j = 1; j <= J; ++j) l.push_back(l.back() + step(rng));
  return l;
}

}  // namespace

TEST_CASE("weight function frozen values", "[assoc]") {
  const OmegaEvaluator ev(make_gevrey(1.0, 512));
  CHECK(ev.omega(3.0) == Approx(std::log(4.5)).margin(1e-9));  // max of 3^j/j! at j = 2, 3
  CHECK(ev.omega(0.0) == 0.0);
  CHECK(ev.omega(1.0) == Approx(0.0).margin(1e-12));
  CHECK(ev.omega(0.5) == 0.0);  // vanishes up to the first quotient
  CHECK(ev.t_max() == Approx(512.0));
  CHECK_THROWS_AS(ev.omega(512.0), Error);
  CHECK_THROWS_AS(ev.omega(1e9), Error);
  CHECK_THROWS_AS(ev.omega(-1.0), Error);
}

TEST_CASE("counting function", "[assoc]") {
  const OmegaEvaluator g(make_gevrey(1.0, 512));
  CHECK(g.counting(3.5) == 3);
  CHECK(g.counting(3.0) == 3);  // quotients <= t, inclusive
  CHECK(g.counting(0.5) == 0);
  CHECK(g.counting(0.0) == 0);

  const OmegaEvaluator q(make_qgevrey(2.0, 64));
  CHECK(q.counting(8.0) == 2);
  CHECK(q.counting(7.9) == 1);
  CHECK_THROWS_AS(q.counting(q.t_max()), Error);
}

TEST_CASE("evaluator agrees with raw-table supremum", "[assoc]") {
  SECTION("builtin families on the default grid") {
    for (const LogSequence& m :
         {make_gevrey(1.0, 512), make_gevrey(2.0, 512), make_gevrey(3.0, 512),
          make_qgevrey(2.0, 512)}) {
      const OmegaEvaluator ev(m);
      for (double t : default_grid(m)) {
        CHECK(ev.omega(t) == Approx(sup_oracle(m.log_values(), t)).margin(1e-9));
        CHECK(ev.omega(t) == Approx(omega_sup_bruteforce(m, t)).margin(1e-9));
      }
    }
  }

  SECTION("non-convex tables: the minorant has the same weight function") {
    std::mt19937 rng(31415);
    for (int round = 0; round < 15; ++round) {
      const LogSequence m = make_table(random_table(rng, 24));
      const OmegaEvaluator ev(m);
      for (double t : default_grid(m)) {
        CHECK(ev.omega(t) == Approx(sup_oracle(m.log_values(), t)).margin(1e-9));
      }
    }
  }
}

TEST_CASE("inversion recovers the log-convex minorant", "[assoc]") {
  SECTION("frozen value") {
    const OmegaEvaluator ev(make_gevrey(1.0, 512));
    CHECK(ev.invert(3) == Approx(std::log(6.0)).margin(1e-9));
    CHECK(ev.invert(0) == 0.0);
  }

  SECTION("builtins round-trip") {
    for (const LogSequence& m :
         {make_gevrey(1.0, 512), make_gevrey(2.5, 512), make_qgevrey(2.0, 512)}) {
      const OmegaEvaluator ev(m);
      for (int j : {0, 1, 2, 5, 17, 100, 255, 256, 511})
        CHECK(ev.invert(j) == Approx(m.log_value(j)).margin(1e-9));
      CHECK_THROWS_AS(ev.invert(512), Error);
      CHECK_THROWS_AS(ev.invert(-1), Error);
    }
  }

  SECTION("non-convex source inverts to the hull") {
    const OmegaEvaluator ev(make_table({0.0, 2.0, 1.0, 3.0}));
    CHECK(ev.invert(1) == Approx(0.5).margin(1e-9));
    CHECK(ev.invert(2) == Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("dilation separation bound", "[assoc]") {
  // omega(d t) - omega(c t) >= counting(c t) * log(d/c)
  for (const LogSequence& m : {make_gevrey(1.0, 512), make_qgevrey(2.0, 128)}) {
    const OmegaEvaluator ev(m);
    for (double d : {1.5, 2.0}) {
      for (double t : default_grid(m)) {
        if (d * t >= ev.t_max()) continue;
        const double lhs = ev.omega(d * t) - ev.omega(t);
        CHECK(lhs >= ev.counting(t) * std::log(d) - 1e-9);
      }
    }
  }
}

TEST_CASE("convolution adds weight and counting functions", "[assoc]") {
  const LogSequence a = make_gevrey(1.0, 256);
  const LogSequence b = make_qgevrey(2.0, 256);
  const LogSequence c = convolve(a, b);
  const OmegaEvaluator ea(a), eb(b), ec(c);
  const double hi = 0.9 * std::min({ea.t_max(), eb.t_max(), ec.t_max()});
  for (double t : log_grid(0.5, hi, 64)) {
    CHECK(ec.omega(t) == Approx(ea.omega(t) + eb.omega(t)).margin(1e-9));
    CHECK(ec.counting(t) == ea.counting(t) + eb.counting(t));
  }
}

TEST_CASE("power minorant by inversion", "[assoc]") {
  SECTION("frozen value") {
    const LogSequence u = underline(make_gevrey(1.0, 32), 2);
    CHECK(u.log_value(4) == Approx(2.0 * std::log(2.0)).margin(1e-12));
    CHECK(u.lc());
  }

  SECTION("c = 1 reproduces the sequence") {
    for (const LogSequence& m : {make_gevrey(1.0, 64), make_qgevrey(2.0, 64)}) {
      const LogSequence u = underline(m, 1);
      REQUIRE(u.horizon() == 63);
      for (int j = 0; j <= 63; ++j)
        CHECK(u.log_value(j) == Approx(m.log_value(j)).margin(1e-9));
    }
  }

  SECTION("kink-scan oracle") {
    const LogSequence m = make_gevrey(2.0, 48);
    const OmegaEvaluator ev(m);
    const int c = 3;
    const LogSequence u = underline(m, c);
    for (int j = 1; j <= u.horizon(); ++j) {
      double best = 0.0;  // s -> j s - c omega(e^s) is 0 at s small enough
      for (int k = 1; k <= 47; ++k) {
        const double s = m.quotient_log(k);
        best = std::max(best, j * s - c * ev.omega_log(s));
      }
      CHECK(u.log_value(j) == Approx(best).margin(1e-8));
    }
  }

  SECTION("sandwich on the grid") {
    for (int c : {2, 4}) {
      const LogSequence m = make_gevrey(1.0, 512);
      const OmegaEvaluator em(m);
      const OmegaEvaluator eu(underline(m, c));
      const double hi = 0.9 * std::min(em.t_max(), eu.t_max());
      for (double t : log_grid(0.5, hi, 64))
        CHECK(eu.omega(t) <= c * em.omega(t) + 1e-9);
      const double defect = underline_sandwich_defect(m, c);
      CHECK(std::isfinite(defect));
      CHECK(defect >= -1e-9);
    }
  }

  SECTION("errors") {
    CHECK_THROWS_AS(underline(make_gevrey(1.0, 32), 0), Error);
    CHECK_THROWS_AS(underline(make_table({0.0, 2.0, 1.0, 3.0, 6.0, 10.0, 15.0, 21.0, 28.0}), 2),
                    Error);
    CHECK_THROWS_AS(underline(make_gevrey(1.0, 32), 2, 63), Error);  // 63 > 2*31
    CHECK_NOTHROW(underline(make_gevrey(1.0, 32), 2, 62));
  }
}

TEST_CASE("index-dilation sandwich", "[assoc]") {
  for (int c : {2, 4}) {
    const LogSequence m = make_gevrey(1.0, 512);
    const OmegaEvaluator em(m);
    const OmegaEvaluator et(tilde(m, c));
    const double hi = 0.9 * std::min(em.t_max(), et.t_max());
    for (double t : log_grid(0.5, hi, 64))
      CHECK(c * et.omega(t) <= em.omega(t) + 1e-9);
    const double defect = tilde_sandwich_defect(m, c);
    CHECK(std::isfinite(defect));
    CHECK(defect >= -1e-9);
  }
}

TEST_CASE("default grid stays inside the valid domain", "[assoc]") {
  const LogSequence m = make_gevrey(1.0, 512);
  const auto grid = default_grid(m);
  REQUIRE(grid.size() == 64);
  CHECK(grid.front() == Approx(0.5));           // mu_1 / 2
  CHECK(grid.back() == Approx(0.9 * 512.0));    // headroom * t_max
  CHECK(std::is_sorted(grid.begin(), grid.end()));

  const CurveSample curve = omega_curve(m, 0.5, 100.0, 16);
  REQUIRE(curve.t.size() == 16);
  REQUIRE(curve.value.size() == 16);
  CHECK_THROWS_AS(omega_curve(m, 0.5, 1e9, 16), Error);
}
