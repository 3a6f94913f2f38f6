#include <cmath>

#include "doctest.h"
#include "gittins/approx_index.hpp"
#include "gittins/errors.hpp"

using namespace gittins;

TEST_CASE("log_plus") {
  CHECK(log_plus(0.5) == 1.0);
  CHECK(log_plus(std::exp(1.0)) == 1.0);
  CHECK(log_plus(100.0) == doctest::Approx(std::log(100.0)));
}

TEST_CASE("beta examples") {
  // c = 1/4, s2 = 1, m = 1e4: the first term of the min is active.
  CHECK(beta(1.0, 10000) == doctest::Approx(89.4389081).epsilon(1e-8));
  CHECK(beta(1.0, 1) == 1.0);
  CHECK(beta(1e6, 10000) == beta(1.0, 10000));
  // Small variance: the second term is active.
  const double ms = 10000 * 1e-3;
  CHECK(beta(1e-3, 10000) == doctest::Approx(0.25 * ms / std::sqrt(std::log(ms))).epsilon(1e-12));
  CHECK(beta(1.0, 10000, {0.5}) == doctest::Approx(2 * 89.4389081).epsilon(1e-8));
}

TEST_CASE("approximate index") {
  CHECK(approx_gittins(0.0, 1.0, 10000) == doctest::Approx(2.99785116).epsilon(1e-8));
  CHECK(approx_gittins(1.5, 0.0, 10000) == 1.5);
  CHECK(approx_gittins(-0.7, 1.0, 1) == -0.7);
  for (double nu : {-3.0, 0.0, 2.5}) {
    for (double s2 : {0.01, 1.0, 4.0}) {
      for (int m : {1, 10, 1000}) {
        const double g = approx_gittins(nu, s2, m);
        CHECK(g >= nu);
        CHECK(g - nu == doctest::Approx(approx_gittins(0.0, s2, m)).epsilon(1e-12));
      }
    }
  }
  double prev = 0.0;
  for (int m = 3; m <= 5000; m += 7) {
    const double g = approx_gittins(0.0, 1.0, m);
    CHECK(g >= prev);
    prev = g;
  }
}

TEST_CASE("approximate index input errors") {
  CHECK_THROWS_AS(beta(-1.0, 5), InputError);
  CHECK_THROWS_AS(beta(1.0, 0), InputError);
  CHECK_THROWS_AS(beta(1.0, 5, {0.0}), InputError);
  CHECK_THROWS_AS(approx_gittins(0.0, -0.1, 5), InputError);
  CHECK_THROWS_AS(approx_gittins(NAN, 1.0, 5), InputError);
}
