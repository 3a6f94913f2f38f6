#pragma once

#include <cmath>

namespace gittins {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;
inline constexpr double kInvSqrt2 = 0.70710678118654752440;

inline double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

// Lower and upper standard-normal tail masses, each accurate in its own tail.
struct NormalMass {
  double lower;  // P(Z <= z)
  double upper;  // P(Z > z)
};

inline NormalMass normal_mass(double z) {
  if (z < 0.0) {
    const double lo = 0.5 * std::erfc(-z * kInvSqrt2);
    return {lo, 1.0 - lo};
  }
  const double up = 0.5 * std::erfc(z * kInvSqrt2);
  return {1.0 - up, up};
}

inline double normal_cdf(double z) { return normal_mass(z).lower; }

// E[max(0, X)] for X ~ N(mean, sd^2), sd > 0.
double positive_part_mean(double mean, double sd);

}  // namespace gittins
