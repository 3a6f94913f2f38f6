#include "gittins/gaussian.hpp"

namespace gittins {

double positive_part_mean(double mean, double sd) {
  const double z = mean / sd;
  return mean * normal_mass(-z).upper + sd * normal_pdf(z);
}

}  // namespace gittins
