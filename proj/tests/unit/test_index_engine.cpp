#include <omp.h>

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "gittins/errors.hpp"
#include "gittins/index_engine.hpp"
#include "gittins/posterior.hpp"
#include "grid_oracle.hpp"

using namespace gittins;

TEST_CASE("bellman backup") {
  const ValueFunction none;
  SUBCASE("first stage is the identity") {
    const StageValue v1(none, 0.0);
    for (double x : {-3.0, -0.2, 0.0, 1.7}) CHECK(v1(x) == x);
    const ValueFunction w1 = bellman_backup(none, 0.5, 0.0);
    CHECK(w1.stage() == 1);
    CHECK(w1.lo() == 0.0);
    for (double x : {0.0, 0.3, 2.0, 50.0}) CHECK(w1(x) == doctest::Approx(x).epsilon(1e-12));
    CHECK(w1(-1.0) == 0.0);
  }
  SUBCASE("second stage at zero is a half-normal mean") {
    // sigma^2 = 1, m = 2: stage 1 variance 1/2, step noise 1/2.
    const ValueFunction w1 = bellman_backup(none, 0.5, 0.0);
    const StageValue v2(w1, noise_variance(1.0, 1));
    CHECK(v2(0.0) == doctest::Approx(0.28209479177387814).epsilon(1e-9));
  }
  SUBCASE("output is nonnegative, nondecreasing and convex") {
    ValueFunction w = bellman_backup(none, 1.0 / 8.0, 0.0);
    for (int k = 2; k <= 8; ++k) w = bellman_backup(w, 1.0 / (9 - k), noise_variance(1.0, 9 - k));
    double prev = -1.0;
    double prev_slope = -1.0;
    const double h = 1e-3;
    for (double x = w.lo() - 0.5; x < w.hi() + 1.0; x += 0.01) {
      const double y = w(x);
      CHECK(y >= 0.0);
      CHECK(y >= prev - 1e-12);
      const double slope = (w(x + h) - y) / h;
      CHECK(slope >= prev_slope - 2e-4);
      prev = y;
      prev_slope = slope;
    }
    CHECK(w.tail_slope() == 8.0);
  }
  SUBCASE("knot budget exhaustion reports the achieved tolerance") {
    const ValueFunction w1 = bellman_backup(none, 0.5, 0.0);
    EngineOptions tight;
    tight.tol = 1e-14;
    tight.max_segments = 8;
    try {
      bellman_backup(w1, 0.5, 0.5, tight);
      FAIL("expected AccuracyError");
    } catch (const AccuracyError& e) {
      CHECK(e.achieved_tolerance() > 0.0);
    }
  }
}

TEST_CASE("index values") {
  IndexEngine engine;
  CHECK(engine.zero_index(1.0, 1) == 0.0);
  CHECK(std::abs(engine.zero_index(1.0, 2) - 0.195183) <= 1e-4);
  CHECK(std::abs(engine.zero_index(0.5, 2) - 0.112689) <= 1e-4);
  // High-precision references for the same quantities.
  CHECK(engine.zero_index(1.0, 2) == doctest::Approx(0.195182546782).epsilon(1e-8));
  CHECK(engine.zero_index(0.5, 2) == doctest::Approx(0.112688695926).epsilon(1e-8));
  CHECK(std::abs(gittins_index({0.3, 1.0, 2}) - 0.495183) <= 1e-4);
  CHECK(gittins_index({-2.5, 0.0, 40}) == -2.5);
  CHECK(gittins_index({1.25, 3.0, 1}) == 1.25);
  CHECK_THROWS_AS(gittins_index({0.0, 1.0, 0}), InputError);
  CHECK_THROWS_AS(gittins_index({0.0, -1.0, 3}), InputError);
  CHECK_THROWS_AS(gittins_index({NAN, 1.0, 3}), InputError);
}

TEST_CASE("index properties") {
  IndexEngine engine;
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> mean(-5.0, 5.0);
  std::uniform_real_distribution<double> logvar(-4.0, 1.5);
  std::uniform_int_distribution<int> horizon(1, 40);
  for (int trial = 0; trial < 30; ++trial) {
    const double nu = mean(gen);
    const double s2 = std::exp(logvar(gen));
    const int m = horizon(gen);
    const double g = engine.index({nu, s2, m});
    CHECK(g >= nu);
    const double c = mean(gen);
    CHECK(std::abs(engine.index({nu + c, s2, m}) - (nu + c) - (g - nu)) <= 1e-12);
    CHECK(engine.index({nu, s2, 1}) == nu);
  }
  for (double s2 : {1.0, 0.25, 0.02}) {
    double prev = 0.0;
    for (int m = 1; m <= 60; ++m) {
      const double g = engine.zero_index(s2, m);
      CHECK(g >= prev - 1e-6);
      prev = g;
      if (m >= 2) {
        const double beta = std::exp(g * g / (2.0 * s2));
        const double lm = std::log(double(m));
        CHECK(beta <= m / (lm * std::sqrt(lm)));
      }
    }
  }
}

TEST_CASE("beta of the two-round index") {
  IndexEngine engine;
  const double g = engine.zero_index(1.0, 2);
  CHECK(std::exp(g * g / 2.0) == doctest::Approx(1.01923069).epsilon(1e-6));
  CHECK(2.0 / std::pow(std::log(2.0), 1.5) == doctest::Approx(3.46570669).epsilon(1e-8));
}

TEST_CASE("memo stores every stage of a solve") {
  IndexEngine engine;
  const double g = engine.zero_index(1.0, 30);
  CHECK(engine.cache_size() == 30);
  // Stage k of that solve has variance 1/(1 + 30 - k).
  const std::size_t before = engine.cache_size();
  const double inner = engine.zero_index(1.0 / 11.0, 20);
  CHECK(engine.cache_size() == before);
  IndexEngine fresh;
  CHECK(std::abs(fresh.zero_index(1.0 / 11.0, 20) - inner) <= 1e-7);
  CHECK(engine.zero_index(1.0, 30) == g);
}

TEST_CASE("concurrent queries agree with serial ones") {
  std::vector<double> vars;
  for (int i = 1; i <= 16; ++i) vars.push_back(1.0 / i);
  IndexEngine serial;
  std::vector<double> expected;
  for (double v : vars) expected.push_back(serial.zero_index(v, 25));
  IndexEngine shared;
  std::vector<double> got(vars.size());
#pragma omp parallel for num_threads(4)
  for (int i = 0; i < int(vars.size()); ++i) got[i] = shared.zero_index(vars[i], 25);
  for (std::size_t i = 0; i < vars.size(); ++i) CHECK(got[i] == expected[i]);
}

TEST_CASE("spline engine agrees with the grid quadrature oracle") {
  IndexEngine engine;
  for (double s2 : {1.0, 0.02}) {
    for (int m : {2, 3, 5, 8, 12}) {
      CAPTURE(s2);
      CAPTURE(m);
      CHECK(std::abs(engine.zero_index(s2, m) - oracle::grid_zero_index(s2, m)) <= 1e-5);
    }
  }
}

TEST_CASE("diagnostic: dependence on the variance") {
  // Not an invariant; reported only.
  IndexEngine engine;
  int drops = 0;
  double prev = 0.0;
  for (int i = 1; i <= 40; ++i) {
    const double g = engine.zero_index(0.05 * i, 20);
    if (g < prev) ++drops;
    prev = g;
  }
  MESSAGE("gamma(0, s2, 20) decreased " << drops << " times over s2 in (0, 2]");
}
