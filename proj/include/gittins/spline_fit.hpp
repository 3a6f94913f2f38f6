#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "gittins/errors.hpp"
#include "gittins/value_function.hpp"

namespace gittins {

// Adaptive quadratic spline fit of a function that is smooth between consecutive
// `breakpoints`. Each candidate piece interpolates f at its ends and midpoint; it is
// accepted when the interpolant is within `tol` of f at both quarter points, and split
// at the midpoint otherwise. Children reuse the parent's quarter points as their
// midpoints, so every split costs two new evaluations.
//
// Throws AccuracyError once more than opts.max_segments pieces would be needed.
template <class F>
std::vector<QuadSegment> fit_quadratic_spline(F&& f, std::span<const double> breakpoints,
                                              const FitOptions& opts, FitStats* stats = nullptr) {
  struct Piece {
    double a, b, fa, fm, fb;
  };
  std::vector<QuadSegment> out;
  std::vector<Piece> stack;
  std::size_t evals = 0;
  double max_err = 0.0;
  auto eval = [&](double x) {
    ++evals;
    return f(x);
  };

  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    const double left = breakpoints[k];
    const double right = breakpoints[k + 1];
    if (!(right > left)) continue;
    const int pieces = std::max(1, opts.initial_pieces);
    std::vector<double> xs(2 * pieces + 1);
    std::vector<double> fs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      xs[i] = i + 1 == xs.size() ? right : left + (right - left) * double(i) / double(2 * pieces);
      fs[i] = eval(xs[i]);
    }
    // Push right-to-left so pieces are emitted in increasing order.
    for (int p = pieces - 1; p >= 0; --p) {
      stack.push_back({xs[2 * p], xs[2 * p + 2], fs[2 * p], fs[2 * p + 1], fs[2 * p + 2]});
    }

    while (!stack.empty()) {
      const Piece pc = stack.back();
      stack.pop_back();
      const double h = pc.b - pc.a;
      const double m = pc.a + 0.5 * h;
      // Interpolant in u = x - a through (0, fa), (h/2, fm), (h, fb).
      const double qa = 2.0 * (pc.fb - 2.0 * pc.fm + pc.fa) / (h * h);
      const double qb = (4.0 * pc.fm - 3.0 * pc.fa - pc.fb) / h;
      const QuadSegment seg{pc.a, pc.b, qa, qb, pc.fa};

      const double x1 = pc.a + 0.25 * h;
      const double x3 = pc.a + 0.75 * h;
      const double f1 = eval(x1);
      const double f3 = eval(x3);
      const double err = std::max(std::abs(seg(x1) - f1), std::abs(seg(x3) - f3));
      // Pieces narrower than a few ulps cannot be refined further.
      const bool at_resolution = h <= 64.0 * std::numeric_limits<double>::epsilon() *
                                          std::max({1.0, std::abs(pc.a), std::abs(pc.b)});
      if (err <= opts.tol || at_resolution) {
        max_err = std::max(max_err, err);
        out.push_back(seg);
        continue;
      }
      if (out.size() + stack.size() + 2 > opts.max_segments) {
        throw AccuracyError("spline refinement exceeded " + std::to_string(opts.max_segments) +
                                " pieces; achieved tolerance " + std::to_string(err),
                            err);
      }
      stack.push_back({m, pc.b, pc.fm, f3, pc.fb});
      stack.push_back({pc.a, m, pc.fa, f1, pc.fm});
    }
  }
  if (stats) {
    stats->evaluations += evals;
    stats->max_error = std::max(stats->max_error, max_err);
  }
  return out;
}

}  // namespace gittins
