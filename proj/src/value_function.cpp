#include "gittins/value_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gittins/errors.hpp"
#include "gittins/gaussian.hpp"

namespace gittins {

ValueFunction::ValueFunction(int stage, std::vector<QuadSegment> segments, double tail_slope,
                             double tail_intercept)
    : stage_(stage),
      segments_(std::move(segments)),
      tail_slope_(tail_slope),
      tail_intercept_(tail_intercept) {
  if (!std::isfinite(tail_slope_) || !std::isfinite(tail_intercept_))
    throw InputError("ValueFunction: non-finite tail");
  knots_.reserve(segments_.size() + 1);
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const QuadSegment& s = segments_[i];
    if (!(s.lo < s.hi) || !std::isfinite(s.a) || !std::isfinite(s.b) || !std::isfinite(s.c))
      throw InputError("ValueFunction: malformed segment " + std::to_string(i));
    if (i > 0 && s.lo != segments_[i - 1].hi)
      throw InputError("ValueFunction: knots not contiguous at segment " + std::to_string(i));
    knots_.push_back(s.lo);
  }
  if (!segments_.empty()) knots_.push_back(segments_.back().hi);
}

double ValueFunction::operator()(double x) const {
  if (segments_.empty() || x < knots_.front()) return 0.0;
  if (x >= knots_.back()) return tail_slope_ * x + tail_intercept_;
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  return segments_[std::size_t(it - knots_.begin()) - 1](x);
}

namespace {

struct KnotMass {
  double z, lower, upper, pdf;
};

KnotMass knot_mass(double knot, double mean, double sd) {
  const double z = (knot - mean) / sd;
  const NormalMass m = normal_mass(z);
  return {z, m.lower, m.upper, normal_pdf(z)};
}

}  // namespace

double gauss_expect_positive_spline(const ValueFunction& v, double mean, double var) {
  if (!(var > 0.0) || !std::isfinite(var) || !std::isfinite(mean))
    throw InputError("gauss_expect_positive_spline: need finite mean and var > 0");
  if (v.empty()) return 0.0;

  const double sd = std::sqrt(var);
  const double window_lo = mean - 12.0 * sd;
  const double window_hi = mean + 12.0 * sd;
  const auto knots = v.knots();
  const auto segs = v.segments();
  if (knots.back() < window_lo) return v.tail_slope() * mean + v.tail_intercept();

  // First segment whose right knot lies inside the window.
  std::size_t i = std::size_t(std::upper_bound(knots.begin(), knots.end(), window_lo) -
                              knots.begin());
  i = i == 0 ? 0 : i - 1;

  double total = 0.0;
  KnotMass left = knot_mass(knots[i], mean, sd);
  for (; i < segs.size() && segs[i].lo < window_hi; ++i) {
    const QuadSegment& s = segs[i];
    const KnotMass right = knot_mass(s.hi, mean, sd);
    const double mass = left.z >= 0.0 ? left.upper - right.upper : right.lower - left.lower;
    const double m1 = left.pdf - right.pdf;
    const double zpdf = left.z * left.pdf - right.z * right.pdf;
    const double d = mean - s.lo;
    const double qa = s.a * var;
    const double qb = (2.0 * s.a * d + s.b) * sd;
    const double qc = (s.a * d + s.b) * d + s.c;
    total += (qa + qc) * mass + qb * m1 + qa * zpdf;
    left = right;
  }

  if (knots.back() < window_hi) {
    const KnotMass k = knot_mass(knots.back(), mean, sd);
    const double slope = v.tail_slope();
    total += (slope * mean + v.tail_intercept()) * k.upper + slope * sd * k.pdf;
  }
  return total;
}

}  // namespace gittins
