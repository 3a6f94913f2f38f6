#pragma once

namespace gittins {

// Gaussian belief N(mean, variance) over an arm's mean reward. Rewards have unit noise.
struct Posterior {
  double mean = 0.0;
  double variance = 1.0;

  friend bool operator==(const Posterior&, const Posterior&) = default;
};

// Conjugate update after observing one unit-variance reward `x`.
// A zero-variance posterior is absorbing. Throws InputError on non-finite x or fields.
Posterior posterior_update(const Posterior& p, double x);

// Variance of the posterior-mean increment at the t-th observation (t >= 1) when the
// walk starts from prior variance `variance`:
//   variance / (1 + (t-1) variance) * variance / (1 + t variance).
// Partial sums telescope to k variance^2 / (1 + k variance).
double noise_variance(double variance, int t);

}  // namespace gittins
