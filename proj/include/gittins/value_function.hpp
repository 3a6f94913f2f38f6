#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gittins {

// One quadratic piece on [lo, hi]. Coefficients are local to the left knot:
//   q(x) = a u^2 + b u + c,  u = x - lo.
// Local coordinates keep short pieces far from the origin well conditioned.
struct QuadSegment {
  double lo = 0.0;
  double hi = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator()(double x) const {
    const double u = x - lo;
    return (a * u + b) * u + c;
  }
};

// Piecewise-quadratic function with contiguous knots, zero to the left of the first
// knot and affine (slope * x + intercept) to the right of the last one. A function
// with no segments is identically zero.
//
// Used for the positive part max{0, V_t} of a backward-induction stage, where the
// first knot is the largest root of V_t, and for the two-armed Bayes value in the
// gap coordinate.
class ValueFunction {
 public:
  ValueFunction() = default;
  ValueFunction(int stage, std::vector<QuadSegment> segments, double tail_slope,
                double tail_intercept);

  int stage() const { return stage_; }
  bool empty() const { return segments_.empty(); }
  std::span<const QuadSegment> segments() const { return segments_; }
  std::span<const double> knots() const { return knots_; }
  double lo() const { return knots_.empty() ? 0.0 : knots_.front(); }
  double hi() const { return knots_.empty() ? 0.0 : knots_.back(); }
  double tail_slope() const { return tail_slope_; }
  double tail_intercept() const { return tail_intercept_; }

  double operator()(double x) const;

 private:
  int stage_ = 0;
  std::vector<QuadSegment> segments_;
  std::vector<double> knots_;
  double tail_slope_ = 0.0;
  double tail_intercept_ = 0.0;
};

// E[f(Y)], Y ~ N(mean, var), for the piecewise function f represented by `v`.
// Each piece is integrated in closed form from truncated Gaussian moments. Pieces
// further than 12 standard deviations from the mean are skipped (their weight is
// below 1e-32). Throws InputError when var <= 0.
double gauss_expect_positive_spline(const ValueFunction& v, double mean, double var);

struct FitOptions {
  double tol = 1e-6;
  std::size_t max_segments = 1u << 16;
  int initial_pieces = 4;
};

struct FitStats {
  std::size_t evaluations = 0;
  double max_error = 0.0;  // largest quarter-point deviation among accepted pieces
};

}  // namespace gittins
