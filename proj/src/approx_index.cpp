#include "gittins/approx_index.hpp"

#include <algorithm>
#include <cmath>

#include "gittins/errors.hpp"

namespace gittins {

double log_plus(double x) { return x > std::exp(1.0) ? std::log(x) : 1.0; }

double beta(double variance, int m, const ApproxParams& params) {
  if (!(variance > 0.0) || m < 1 || !(params.c > 0.0))
    throw InputError("beta: need variance > 0, m >= 1 and c > 0");
  const double dm = double(m);
  const double lm = log_plus(dm);
  const double first = dm / (lm * std::sqrt(lm));
  const double ms = dm * variance;
  const double second = std::isinf(ms) ? first : ms / std::sqrt(log_plus(ms));
  return std::max(1.0, params.c * std::min(first, second));
}

double approx_gittins(double mean, double variance, int m, const ApproxParams& params) {
  if (m < 1) throw InputError("approx_gittins: m must be >= 1");
  if (!std::isfinite(mean)) throw InputError("approx_gittins: non-finite mean");
  if (!(variance >= 0.0)) throw InputError("approx_gittins: variance must be >= 0");
  if (variance == 0.0) return mean;
  const double b = beta(variance, m, params);
  if (b == 1.0) return mean;
  return mean + std::sqrt(2.0 * variance * std::log(b));
}

}  // namespace gittins
