#pragma once

#include <functional>

// Reference implementations for tests. They share no code with the library.
namespace oracle {

struct GridOptions {
  int points = 801;       // uniform grid size per stage
  double width_sd = 12.0;  // grid is [-w sigma, w sigma]
  double quad_tol = 1e-9;
};

// gamma(0, variance, m) by backward induction: the signed stage value is stored on a
// uniform grid, interpolated with a cubic B-spline (linear beyond the grid), and the
// Gaussian expectation of its positive part is integrated by adaptive Gauss-Kronrod
// quadrature from the positive-part kink outwards.
double grid_zero_index(double variance, int m, const GridOptions& opts = {});

// Same induction, returning the signed stage-m value at x.
double grid_stage_value(double variance, int m, double x, const GridOptions& opts = {});

// int_lo^hi f(y) N(y; mean, var) dy by adaptive Gauss-Kronrod quadrature.
double gauss_integral(const std::function<double(double)>& f, double lo, double hi, double mean,
                      double var, double tol = 1e-14);

}  // namespace oracle
