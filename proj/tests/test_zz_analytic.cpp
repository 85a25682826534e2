#include <doctest.h>

#include <numbers>

#include "collide/fisher.hpp"
#include "collide/optimize.hpp"
#include "collide/zz_analytic.hpp"
#include "test_util.hpp"

using namespace collide;
using std::numbers::pi;

namespace {

double delta_with(double nbar, double gt, double d_gg, double d_eg) {
  const ZzProbabilities p = zz_probs(nbar, gt);
  return p.p_g / (p.p_gg * (1.0 - p.p_gg)) * d_gg * d_gg + p.p_e / (p.p_eg * (1.0 - p.p_eg)) * d_eg * d_eg;
}

}  // namespace

TEST_CASE("transition probabilities") {
  const ZzProbabilities frozen = zz_probs(2.0, 0.0);
  CHECK(frozen.p_gg == 1.0);
  CHECK(frozen.p_eg == 0.0);

  const ZzProbabilities reset = zz_probs(2.0, 1e6);
  CHECK(reset.p_gg == doctest::Approx(reset.p_g).epsilon(1e-14));
  CHECK(reset.p_eg == doctest::Approx(reset.p_g).epsilon(1e-14));

  const ZzProbabilities p = zz_probs(1.0, 0.5);
  CHECK(p.big_gamma == doctest::Approx(1.5));
  CHECK(p.p_g == doctest::Approx(2.0 / 3.0));
  CHECK(p.p_eg == doctest::Approx(2.0 / 3.0 * (1.0 - std::exp(-1.5))));

  for (int t = 0; t < 50; ++t) {
    const ZzProbabilities q = zz_probs(testutil::uniform(0.0, 20.0), testutil::uniform(0.0, 5.0));
    CHECK(q.p_g + q.p_e == doctest::Approx(1.0));
    for (double v : {q.p_g, q.p_e, q.p_gg, q.p_eg}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
  CHECK_THROWS_AS(zz_probs(-1.0, 0.5), std::invalid_argument);
}

TEST_CASE("single-ancilla ZZ information") {
  const double fth = thermal_fi_nbar(1.7);
  CHECK(zz_f1(1.7, pi / 2) == doctest::Approx(fth).epsilon(1e-14));
  CHECK(zz_f1(1.7, 0.0) == 0.0);
  CHECK(zz_f1(1.7, pi / 4) == doctest::Approx(fth / 2.0).epsilon(1e-14));

  double best = -1.0, arg = 0.0;
  for (int k = 0; k <= 180; ++k) {
    const double g = pi * k / 180.0;
    const double v = zz_f1(1.7, g);
    if (v > best) {
      best = v;
      arg = g;
    }
  }
  CHECK(arg == doctest::Approx(pi / 2));
}

TEST_CASE("Delta") {
  CHECK_THROWS_AS(zz_delta(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(zz_delta(0.0, 1.0), std::invalid_argument);

  CHECK(zz_delta(2.0, 0.5) / thermal_fi_nbar(2.0) > 1.0);

  // analytic slopes against central differences
  for (double nbar : {0.2, 1.0, 5.0, 10.0}) {
    for (double gt : {0.01, 0.1, 1.0}) {
      const double h = 1e-5 * nbar;
      const ZzTransitionSlopes s = zz_transition_slopes(nbar, gt);
      const double d_gg = (zz_probs(nbar + h, gt).p_gg - zz_probs(nbar - h, gt).p_gg) / (2 * h);
      const double d_eg = (zz_probs(nbar + h, gt).p_eg - zz_probs(nbar - h, gt).p_eg) / (2 * h);
      CHECK(s.d_p_gg == doctest::Approx(d_gg).epsilon(1e-7));
      CHECK(s.d_p_eg == doctest::Approx(d_eg).epsilon(1e-7));
      const double fd = delta_with(nbar, gt, d_gg, d_eg);
      CHECK(std::abs(zz_delta(nbar, gt) - fd) / zz_delta(nbar, gt) < 1e-8);
    }
  }

  for (int t = 0; t < 50; ++t) {
    CHECK(zz_delta(testutil::uniform(0.01, 20.0), testutil::uniform(1e-3, 5.0)) >= 0.0);
  }

  // ratio to the thermal FI approaches one for fast thermalization
  for (double nbar : {0.3, 1.0, 10.0}) {
    CHECK(zz_delta(nbar, 50.0) / thermal_fi_nbar(nbar) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("progression") {
  CHECK(zz_fn(1.0, 0.5, 1) == thermal_fi_nbar(1.0));
  CHECK(zz_fn(1.0, 0.0, 1) == thermal_fi_nbar(1.0));
  CHECK_THROWS_AS(zz_fn(1.0, 0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(zz_fn(1.0, 0.5, 0), std::invalid_argument);

  ModelParams p;
  p.interaction = Interaction::ZZ;
  p.nbar = 1.0;
  p.gamma_tau_se = 0.5;
  const double numeric = fisher_for(p, AncillaBlock(bloch_state({pi / 2, 0.0})), 4).value_nbar;
  CHECK(std::abs(numeric - zz_fn(1.0, 0.5, 4)) / zz_fn(1.0, 0.5, 4) < 1e-5);

  const double delta = zz_delta(1.0, 0.5);
  CHECK(std::abs(zz_fn(1.0, 0.5, 64) / 64.0 - delta) < delta / 50.0);
}

TEST_CASE("probability-tree helpers f and g") {
  CHECK(appendix_f(0.3, 0.0) == 0.0);
  CHECK(appendix_f(0.5, 1.0) == doctest::Approx(2.0));
  CHECK(appendix_g(0.5, 1.0, 0.5, 0.0) == doctest::Approx(2.0));

  for (int t = 0; t < 200; ++t) {
    const double x = testutil::uniform(0.01, 0.99), y = testutil::uniform(0.01, 0.99);
    const double dx = testutil::uniform(-2.0, 2.0), dy = testutil::uniform(-2.0, 2.0);
    const double identity = appendix_f(x, dx) + x / (y * (1.0 - y)) * dy * dy;
    CHECK(std::abs(appendix_g(x, dx, y, dy) - identity) < 1e-12 * std::max(1.0, identity));
  }

  CHECK_THROWS_AS(appendix_f(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(appendix_f(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(appendix_g(0.5, 1.0, 1.2, 0.0), std::invalid_argument);
}
