#include "gittins/bayes2.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <string>

#include "gittins/errors.hpp"
#include "gittins/gaussian.hpp"
#include "gittins/spline_fit.hpp"

namespace gittins {

namespace {

double variance_after(double var, int k) { return var == 0.0 ? 0.0 : var / (1.0 + k * var); }

double step_noise(double var, int k) {
  const double v = variance_after(var, k);
  return v * v / (1.0 + v);
}

double expect(const ValueFunction& u, double mean, double noise) {
  return noise > 0.0 ? gauss_expect_positive_spline(u, mean, noise) : u(mean);
}

struct Branches {
  const ValueFunction* next1;  // U_{k1+1,k2}
  const ValueFunction* next2;  // U_{k1,k2+1}
  double q1;
  double q2;

  double pull1(double d) const { return expect(*next1, d, q1); }
  double pull2(double d) const { return d + expect(*next2, d, q2); }
};

// sup{d in [lo, hi] : pull2(d) <= pull1(d)}, assuming a single crossing.
double switch_point(const Branches& br, double lo, double hi, std::size_t* extra) {
  constexpr int kScan = 32;
  auto diff = [&](double d) { return br.pull2(d) - br.pull1(d); };
  double prev_x = lo;
  double prev = diff(lo);
  if (prev > 0.0) return lo;
  double a = 0.0;
  double b = 0.0;
  int crossings = 0;
  for (int i = 1; i <= kScan; ++i) {
    const double x = i == kScan ? hi : lo + (hi - lo) * i / kScan;
    const double cur = diff(x);
    if ((prev <= 0.0) != (cur <= 0.0)) {
      if (crossings == 0) {
        a = prev_x;
        b = x;
      }
      ++crossings;
    }
    prev_x = x;
    prev = cur;
  }
  if (crossings == 0) return hi;
  if (crossings > 1 && extra) ++*extra;
  const double xtol = 1e-13 * (hi - lo);
  while (b - a > xtol) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    if (diff(mid) <= 0.0)
      a = mid;
    else
      b = mid;
  }
  return a;
}

}  // namespace

BayesPlan::BayesPlan(double var1, double var2, int rounds, const BayesOptions& opts)
    : rounds_(rounds), var1_(var1), var2_(var2) {
  if (rounds < 1) throw InputError("BayesPlan: rounds must be >= 1");
  if (rounds > opts.max_horizon)
    throw InputError("BayesPlan: horizon " + std::to_string(rounds) + " exceeds the maximum " +
                     std::to_string(opts.max_horizon));
  if (!(var1 >= 0.0) || !(var2 >= 0.0) || !std::isfinite(var1) || !std::isfinite(var2))
    throw InputError("BayesPlan: prior variances must be finite and >= 0");
  if (!(opts.tol > 0.0)) throw InputError("BayesPlan: tol must be > 0");

  const auto start = std::chrono::steady_clock::now();
  const int threads = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
  thresholds_.assign(std::size_t(rounds) * std::size_t(rounds + 1) / 2, 0.0);

  // next[k1] = U_{k1, s+1-k1}; all zero past the last round.
  std::vector<ValueFunction> next(std::size_t(rounds) + 1);
  std::vector<ValueFunction> cur;
  std::size_t max_segments = 0;
  std::size_t extra = 0;

  for (int s = rounds - 1; s >= 0; --s) {
    const int r = rounds - s;
    cur.assign(std::size_t(s) + 1, ValueFunction());
    std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 4) num_threads(threads) if (s > 16) \
    reduction(max : max_segments) reduction(+ : extra)
    for (int k1 = 0; k1 <= s; ++k1) {
      try {
        const int k2 = s - k1;
        const Branches br{&next[std::size_t(k1) + 1], &next[std::size_t(k1)],
                          step_noise(var1, k1), step_noise(var2, k2)};
        double scale = std::sqrt(variance_after(var1, k1) + variance_after(var2, k2));
        if (scale == 0.0) scale = 1.0;
        const double lo = -opts.domain_sd * scale;
        const double hi = opts.domain_sd * scale;
        std::size_t local_extra = 0;
        const double theta = switch_point(br, lo, hi, &local_extra);
        extra += local_extra;
        thresholds_[std::size_t(s) * std::size_t(s + 1) / 2 + std::size_t(k1)] = theta;
        if (s == 0) continue;

        std::vector<double> breaks{lo};
        if (theta > lo && theta < hi) breaks.push_back(theta);
        breaks.push_back(hi);
        FitOptions fit{opts.tol * r * scale, opts.max_segments, 4};
        auto value = [&](double d) { return std::max(br.pull1(d), br.pull2(d)); };
        std::vector<QuadSegment> segs = fit_quadratic_spline(value, breaks, fit);
        max_segments = std::max(max_segments, segs.size());
        const double at_hi = segs.back()(hi);
        cur[std::size_t(k1)] = ValueFunction(r, std::move(segs), double(r), at_hi - r * hi);
      } catch (...) {
#pragma omp critical(gittins_bayes_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) {
      try {
        std::rethrow_exception(failure);
      } catch (const AccuracyError& e) {
        throw AccuracyError(std::string(e.what()) + " (bayes layer " + std::to_string(s) + ")",
                            e.achieved_tolerance(), s);
      }
    }
    if (s == 1) {
      after1_ = cur[1];
      after2_ = cur[0];
    }
    next.swap(cur);
  }

  stats_.max_segments = max_segments;
  stats_.extra_crossings = extra;
  stats_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double BayesPlan::branch1(double delta) const {
  return expect(after1_, delta, step_noise(var1_, 0));
}

double BayesPlan::branch2(double delta) const {
  return delta + expect(after2_, delta, step_noise(var2_, 0));
}

double BayesPlan::value_gap(double delta) const {
  return std::max(branch1(delta), branch2(delta));
}

double BayesPlan::threshold(int k1, int k2) const {
  if (k1 < 0 || k2 < 0 || k1 + k2 >= rounds_)
    throw RangeError("BayesPlan::threshold: (k1=" + std::to_string(k1) + ", k2=" +
                     std::to_string(k2) + ") outside k1 + k2 < " + std::to_string(rounds_));
  const std::size_t s = std::size_t(k1 + k2);
  return thresholds_[s * (s + 1) / 2 + std::size_t(k1)];
}

double bayes_value(const BayesState& state, const BayesOptions& opts) {
  if (state.remaining < 0) throw InputError("bayes_value: remaining must be >= 0");
  if (state.remaining == 0) return 0.0;
  const BayesPlan plan(state.arm1.variance, state.arm2.variance, state.remaining, opts);
  return state.remaining * state.arm1.mean +
         plan.value_gap(state.arm2.mean - state.arm1.mean);
}

int bayes_select(const BayesState& state, const BayesOptions& opts) {
  if (state.remaining < 1) throw InputError("bayes_select: no rounds remaining");
  const BayesPlan plan(state.arm1.variance, state.arm2.variance, state.remaining, opts);
  const double delta = state.arm2.mean - state.arm1.mean;
  return plan.branch2(delta) > plan.branch1(delta) ? 1 : 0;
}

BranchValues closed_form_n2(double nu2) {
  const double pull1 = std::exp(-nu2 * nu2) / (2.0 * std::sqrt(kPi)) +
                       0.5 * (nu2 + nu2 * std::erf(nu2));
  const double pull2 = nu2 + std::exp(-3.0 * nu2 * nu2) / std::sqrt(12.0 * kPi) +
                       0.5 * (nu2 + nu2 * std::erf(std::sqrt(3.0) * nu2));
  return {pull1, pull2};
}

double bayes_threshold_n2() {
  double a = 0.0;
  double b = 1.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const BranchValues v = closed_form_n2(mid);
    if (v.pull2 > v.pull1)
      b = mid;
    else
      a = mid;
  }
  return 0.5 * (a + b);
}

double gittins_threshold_n2(const IndexEngine& engine) {
  return engine.zero_index(1.0, 2) - engine.zero_index(0.5, 2);
}

}  // namespace gittins
