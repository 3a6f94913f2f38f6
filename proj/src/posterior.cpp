#include "gittins/posterior.hpp"

#include <cmath>

#include "gittins/errors.hpp"

namespace gittins {

Posterior posterior_update(const Posterior& p, double x) {
  if (!std::isfinite(x)) throw InputError("posterior_update: non-finite observation");
  if (!std::isfinite(p.mean) || !std::isfinite(p.variance) || p.variance < 0.0)
    throw InputError("posterior_update: invalid posterior");
  if (p.variance == 0.0) return p;
  const double precision = 1.0 / p.variance + 1.0;
  return {(p.mean / p.variance + x) / precision, 1.0 / precision};
}

double noise_variance(double variance, int t) {
  if (!(variance > 0.0) || !std::isfinite(variance) || t < 1)
    throw InputError("noise_variance: need variance > 0 and t >= 1");
  const double before = variance / (1.0 + (t - 1) * variance);
  const double after = variance / (1.0 + t * variance);
  return before * after;
}

}  // namespace gittins
