#include <cmath>

#include "doctest.h"
#include "gittins/bayes2.hpp"
#include "gittins/errors.hpp"
#include "gittins/index_engine.hpp"

using namespace gittins;

TEST_CASE("trivial horizons") {
  CHECK(bayes_value({{0.3, 1.0}, {0.7, 2.0}, 0}) == 0.0);
  CHECK(bayes_value({{0.3, 1.0}, {0.7, 2.0}, 1}) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(bayes_select({{0.3, 1.0}, {0.7, 2.0}, 1}) == 1);
  CHECK(bayes_select({{0.3, 1.0}, {0.3, 2.0}, 1}) == 0);
  CHECK_THROWS_AS(bayes_select({{0.3, 1.0}, {0.7, 2.0}, 0}), InputError);
  CHECK_THROWS_AS(bayes_value({{0.3, 1.0}, {0.7, 2.0}, -1}), InputError);
}

TEST_CASE("two rounds with equal priors") {
  // Pull either arm, then take the better posterior mean: E[max(0, N(0, 1/2))].
  CHECK(bayes_value({{0.0, 1.0}, {0.0, 1.0}, 2}) ==
        doctest::Approx(0.28209479177387814).epsilon(1e-8));
}

TEST_CASE("closed form for two rounds") {
  const double b = bayes_threshold_n2();
  CHECK(b == doctest::Approx(0.116462282354).epsilon(1e-10));
  const BranchValues at = closed_form_n2(b);
  CHECK(at.pull1 == doctest::Approx(0.344143489).epsilon(1e-8));
  CHECK(at.pull2 == doctest::Approx(0.344143489).epsilon(1e-8));
  CHECK(closed_form_n2(0.0).pull1 > closed_form_n2(0.0).pull2);
  CHECK(closed_form_n2(0.3).pull2 > closed_form_n2(0.3).pull1);

  const BayesPlan plan(1.0, 0.5, 2);
  for (double nu2 = -1.0; nu2 <= 1.0; nu2 += 0.05) {
    const BranchValues cf = closed_form_n2(nu2);
    CHECK(std::abs(plan.branch1(nu2) - cf.pull1) <= 1e-5);
    CHECK(std::abs(plan.branch2(nu2) - cf.pull2) <= 1e-5);
  }
  CHECK(plan.threshold(0, 0) == doctest::Approx(b).epsilon(1e-8));
  CHECK(bayes_select({{0.0, 1.0}, {0.10, 0.5}, 2}) == 0);
  CHECK(bayes_select({{0.0, 1.0}, {0.13, 0.5}, 2}) == 1);
}

TEST_CASE("Gittins and Bayes disagree just below the Bayes threshold") {
  IndexEngine engine;
  const double g = gittins_threshold_n2(engine);
  CHECK(std::abs(g - 0.082493850856) <= 2e-4);
  const double b = bayes_threshold_n2();
  CHECK(g < b);
  const double nu2 = 0.5 * (g + b);
  CHECK(engine.index({nu2, 0.5, 2}) > engine.index({0.0, 1.0, 2}));
  CHECK(bayes_select({{0.0, 1.0}, {nu2, 0.5}, 2}) == 0);
}

TEST_CASE("shift covariance and monotonicity") {
  for (int r = 1; r <= 5; ++r) {
    const BayesState s{{0.2, 0.8}, {-0.1, 0.6}, r};
    const double v = bayes_value(s);
    const BayesState shifted{{0.2 + 1.5, 0.8}, {-0.1 + 1.5, 0.6}, r};
    CHECK(bayes_value(shifted) == doctest::Approx(v + 1.5 * r).epsilon(1e-7));
    CHECK(bayes_select(shifted) == bayes_select(s));
    CHECK(bayes_value({{0.3, 0.8}, {-0.1, 0.6}, r}) >= v - 1e-9);
    CHECK(bayes_value({{0.2, 0.8}, {0.0, 0.6}, r}) >= v - 1e-9);
    // Never below committing to one arm.
    CHECK(v >= r * 0.2 - 1e-9);
  }
}

TEST_CASE("plan thresholds") {
  const BayesPlan plan(1.0, 1.0, 6);
  CHECK(plan.rounds() == 6);
  // Symmetric priors: the root state is indifferent at delta = 0.
  CHECK(std::abs(plan.threshold(0, 0)) <= 1e-6);
  // After extra pulls of arm 1, arm 2 carries more information and is preferred even
  // at a small negative gap.
  CHECK(plan.threshold(2, 0) < 0.0);
  CHECK(plan.threshold(0, 2) == doctest::Approx(-plan.threshold(2, 0)).epsilon(1e-6));
  CHECK(plan.select(0, 0, 0.01) == 1);
  CHECK(plan.select(0, 0, -0.01) == 0);
  CHECK_THROWS_AS(plan.threshold(6, 0), RangeError);
  CHECK_THROWS_AS(plan.threshold(-1, 0), RangeError);
  CHECK_THROWS_AS(plan.threshold(3, 3), RangeError);
  CHECK_NOTHROW(plan.threshold(3, 2));
}

TEST_CASE("plan limits") {
  BayesOptions opts;
  opts.max_horizon = 10;
  CHECK_THROWS_AS(BayesPlan(1.0, 1.0, 11, opts), InputError);
  CHECK_THROWS_AS(BayesPlan(1.0, 1.0, 0), InputError);
  CHECK_THROWS_AS(BayesPlan(-1.0, 1.0, 3), InputError);
}

TEST_CASE("parallel layers match the serial solve") {
  BayesOptions serial;
  serial.jobs = 1;
  BayesOptions par;
  par.jobs = 4;
  const BayesPlan a(1.0, 1.0, 20, serial);
  const BayesPlan b(1.0, 1.0, 20, par);
  for (int k1 = 0; k1 < 20; ++k1)
    for (int k2 = 0; k1 + k2 < 20; ++k2) CHECK(a.threshold(k1, k2) == b.threshold(k1, k2));
  CHECK(a.value_gap(0.3) == b.value_gap(0.3));
}
