#pragma once

namespace gittins {

struct ApproxParams {
  double c = 0.25;
};

// log_+(x) = max{1, log x}.
double log_plus(double x);

// beta(s2, m) = max{1, c min{m / log_+^{3/2}(m), m s2 / log_+^{1/2}(m s2)}}.
// Throws InputError unless s2 > 0, m >= 1 and c > 0.
double beta(double variance, int m, const ApproxParams& params = {});

// nu + sqrt(2 s2 log beta(s2, m)); exactly nu when s2 = 0 or beta = 1.
double approx_gittins(double mean, double variance, int m, const ApproxParams& params = {});

}  // namespace gittins
