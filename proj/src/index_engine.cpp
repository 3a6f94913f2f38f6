#include "gittins/index_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "gittins/errors.hpp"
#include "gittins/posterior.hpp"
#include "gittins/spline_fit.hpp"

namespace gittins {

StageValue::StageValue(const ValueFunction& previous, double noise_var)
    : previous_(&previous), noise_var_(noise_var) {
  if (!previous.empty() && !(noise_var > 0.0))
    throw InputError("StageValue: noise variance must be positive");
}

double StageValue::operator()(double x) const {
  if (previous_->empty()) return x;
  return x + gauss_expect_positive_spline(*previous_, x, noise_var_);
}

double largest_root(const StageValue& v, double scale, double xtol) {
  double b = 0.0;
  double fb = v(b);
  if (fb == 0.0) return 0.0;
  if (fb < 0.0) throw DomainError("largest_root: V(0) < 0, value function is not admissible");

  double a = -8.0 * scale;
  double fa = v(a);
  if (fa >= 0.0) {
    a = -64.0 * scale;
    fa = v(a);
    if (fa >= 0.0)
      throw DomainError("largest_root: no sign change on [" + std::to_string(a) + ", 0]");
  }

  // Illinois variant of regula falsi; falls back to bisection if the update leaves
  // the bracket.
  int side = 0;
  for (int iter = 0; iter < 200 && b - a > xtol; ++iter) {
    double x = (a * fb - b * fa) / (fb - fa);
    if (!(x > a && x < b)) x = 0.5 * (a + b);
    const double fx = v(x);
    if (fx == 0.0) return x;
    if (fx < 0.0) {
      a = x;
      fa = fx;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = x;
      fb = fx;
      if (side == 1) fa *= 0.5;
      side = 1;
    }
  }
  return 0.5 * (a + b);
}

double index_zero_root(const StageValue& v, double scale) { return -largest_root(v, scale); }

ValueFunction bellman_backup(const ValueFunction& previous, double stage_variance,
                             double noise_var, const EngineOptions& opts, FitStats* stats) {
  if (!(stage_variance > 0.0) || !(opts.tol > 0.0))
    throw InputError("bellman_backup: need stage variance > 0 and tol > 0");
  const StageValue value(previous, noise_var);
  const int stage = value.stage();
  const double scale = std::sqrt(stage_variance);
  const double root = largest_root(value, scale, opts.root_tol);
  const double x_hi = opts.domain_sd * scale;

  const double breaks[] = {root, x_hi};
  // V_t is of order t * sqrt(s) over the working domain; the fit tolerance is relative
  // to that scale.
  FitOptions fit{opts.tol * stage * scale, opts.max_segments, 4};
  auto positive = [&](double x) { return x == root ? 0.0 : std::max(0.0, value(x)); };
  std::vector<QuadSegment> segs = fit_quadratic_spline(positive, breaks, fit, stats);
  const double slope = double(stage);
  const double at_hi = segs.back()(x_hi);
  return ValueFunction(stage, std::move(segs), slope, at_hi - slope * x_hi);
}

DiagonalSolve solve_diagonal(double variance, int m, const EngineOptions& opts) {
  if (m < 1) throw InputError("solve_diagonal: m must be >= 1");
  if (!(variance > 0.0) || !std::isfinite(variance))
    throw InputError("solve_diagonal: variance must be positive and finite");

  DiagonalSolve out;
  out.zero_index.reserve(std::size_t(m));
  FitStats stats;
  ValueFunction current;  // W_0 = 0
  for (int k = 1; k <= m; ++k) {
    const double stage_variance = variance / (1.0 + (m - k) * variance);
    // Walk step t = m - k + 1 counted from the prior; unused at k = 1.
    const double noise = k == 1 ? 0.0 : noise_variance(variance, m - k + 1);
    ValueFunction next;
    try {
      next = bellman_backup(current, stage_variance, noise, opts, &stats);
    } catch (const AccuracyError& e) {
      throw AccuracyError(std::string(e.what()) + " (stage " + std::to_string(k) + ")",
                          e.achieved_tolerance(), k);
    }
    out.zero_index.push_back(0.0 - next.lo());
    out.max_segments = std::max(out.max_segments, next.segments().size());
    current = std::move(next);
  }
  out.evaluations = stats.evaluations;
  out.max_fit_error = stats.max_error;
  return out;
}

std::size_t IndexEngine::KeyHash::operator()(const Key& k) const noexcept {
  return std::hash<double>{}(k.variance) * 31u ^ std::hash<int>{}(k.m);
}

IndexEngine::Key IndexEngine::make_key(double variance, int m) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", variance);
  return {std::strtod(buf, nullptr), m};
}

double IndexEngine::zero_index(double variance, int m) const {
  if (m < 1) throw InputError("zero_index: remaining rounds m must be >= 1");
  if (!(variance >= 0.0) || !std::isfinite(variance))
    throw InputError("zero_index: variance must be finite and >= 0");
  if (variance == 0.0 || m == 1) return 0.0;

  const Key key = make_key(variance, m);
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const DiagonalSolve solve = solve_diagonal(variance, m, opts_);
  std::unique_lock lock(mutex_);
  for (int k = 1; k <= m; ++k) {
    const double s = variance / (1.0 + (m - k) * variance);
    cache_.try_emplace(make_key(s, k), solve.zero_index[std::size_t(k - 1)]);
  }
  return solve.zero_index.back();
}

std::size_t IndexEngine::cache_size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

double gittins_index(const IndexQuery& q, double tol) {
  if (!std::isfinite(q.mean)) throw InputError("gittins_index: non-finite mean");
  EngineOptions opts;
  opts.tol = tol;
  return IndexEngine(opts).index(q);
}

}  // namespace gittins
