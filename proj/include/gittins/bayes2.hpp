#pragma once

#include <cstddef>
#include <vector>

#include "gittins/index_engine.hpp"
#include "gittins/posterior.hpp"
#include "gittins/value_function.hpp"

namespace gittins {

// Two-armed Bayesian problem: independent Gaussian priors on the two arm means, unit
// reward noise, `remaining` rounds left.
struct BayesState {
  Posterior arm1;
  Posterior arm2;
  int remaining = 0;
};

struct BayesOptions {
  double tol = 1e-6;       // fit tolerance, relative to r * S (S = sd of the gap)
  std::size_t max_segments = 1u << 16;
  double domain_sd = 12.0;  // gap domain is [-domain_sd * S, domain_sd * S]
  int max_horizon = 2000;
  int jobs = 0;             // threads per layer; 1 runs serially, 0 = runtime default
};

struct BayesStats {
  std::size_t max_segments = 0;
  std::size_t extra_crossings = 0;  // layers whose branch difference changed sign twice
  double seconds = 0.0;
};

// Backward induction in the gap coordinate delta = nu2 - nu1. The value of a state
// after k1, k2 further pulls with r rounds left is r * nu1 + U_{k1,k2}(delta) where
//   U_{k1,k2}(d) = max{ E[U_{k1+1,k2}(d - eta1)], d + E[U_{k1,k2+1}(d + eta2)] },
// eta_i ~ N(0, noise of arm i at its next pull), and U = 0 with no rounds left.
// Each U is a piecewise quadratic in the gap with the switch point as a knot.
// Only two layers are kept; the switch points of every (k1, k2) are stored.
class BayesPlan {
 public:
  BayesPlan() = default;
  BayesPlan(double var1, double var2, int rounds, const BayesOptions& opts = {});

  int rounds() const { return rounds_; }
  double var1() const { return var1_; }
  double var2() const { return var2_; }
  const BayesStats& stats() const { return stats_; }

  // U_{0,0}(delta), the larger of the two branches.
  double value_gap(double delta) const;
  // The two terms of the max at the root state.
  double branch1(double delta) const;
  double branch2(double delta) const;

  // Arm 2 (index 1) is optimal after k1, k2 further pulls iff delta > threshold(k1, k2).
  // Requires k1, k2 >= 0 and k1 + k2 < rounds.
  double threshold(int k1, int k2) const;
  int select(int k1, int k2, double delta) const { return delta > threshold(k1, k2) ? 1 : 0; }

 private:
  int rounds_ = 0;
  double var1_ = 0.0;
  double var2_ = 0.0;
  ValueFunction after1_;  // U_{1,0}
  ValueFunction after2_;  // U_{0,1}
  std::vector<double> thresholds_;  // layer s = k1 + k2 at offset s (s + 1) / 2 + k1
  BayesStats stats_;
};

// Bayes-optimal expected total reward of the state.
double bayes_value(const BayesState& state, const BayesOptions& opts = {});

// Bayes-optimal arm (0 or 1); ties go to arm 0. Requires remaining >= 1.
int bayes_select(const BayesState& state, const BayesOptions& opts = {});

// n = 2, nu1 = 0, sigma1^2 = 1, sigma2^2 = 1/2: closed-form value of pulling each arm
// first.
struct BranchValues {
  double pull1;
  double pull2;
};
BranchValues closed_form_n2(double nu2);

// nu2 at which the two closed-form branches are equal.
double bayes_threshold_n2();

// gamma(0, 1, 2) - gamma(0, 1/2, 2): the nu2 above which the Gittins rule pulls arm 2
// first in the same setup.
double gittins_threshold_n2(const IndexEngine& engine);

}  // namespace gittins
