#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "gittins/policies.hpp"

namespace gittins {

struct BanditInstance {
  std::vector<double> means;
  int horizon = 1;
};

// Arm 0 has mean 0, every other arm mean -gap.
BanditInstance gap_instance(int arms, double gap, int horizon);

// Plays one episode; returns pull counts per arm. The j-th pull of arm i receives
// mean_i + normal_at(arm_key(seed, i), j), so the noise a policy sees depends only on
// (seed, arm, pull number).
std::vector<int> run_episode(const BanditInstance& instance, const PolicySpec& spec,
                             const PolicyContext& ctx, std::uint64_t seed);

std::uint64_t arm_key(std::uint64_t seed, int arm);

// sum_i Delta_i T_i.
double episode_regret(const BanditInstance& instance, std::span<const int> counts);

struct RegretEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // 0 when reps < 2
  int reps = 0;
};

// Mean and standard error of per-episode regrets, compensated sums in the given order.
RegretEstimate summarize(std::span<const double> regrets);
RegretEstimate estimate_regret(std::span<const std::vector<int>> counts,
                               const BanditInstance& instance);

// `reps` episodes with seeds derive_seed(base, point, policy_index, rep). Episodes run
// in parallel; the reduction order is fixed, so results do not depend on `jobs`.
RegretEstimate simulate_regret(const BanditInstance& instance, const PolicySpec& spec,
                               const PolicyContext& ctx, int reps, std::uint64_t base,
                               int point, int policy_index, int jobs = 0);
RegretEstimate simulate_regret_serial(const BanditInstance& instance, const PolicySpec& spec,
                                      const PolicyContext& ctx, int reps, std::uint64_t base,
                                      int point, int policy_index);

struct SweepConfig {
  int horizon = 1000;
  int arms = 2;
  std::vector<double> gaps;
  std::vector<PolicyKind> policies;
  int reps = 1;
  std::uint64_t seed = 1;
  Posterior prior{0.0, 1.0};  // per-arm prior for gittins-prior
};

struct SweepResult {
  SweepConfig config;
  std::vector<std::vector<RegretEstimate>> rows;  // rows[gap][policy]
};

// Throws ConfigError before simulating if a policy's resources are missing.
SweepResult run_sweep(const SweepConfig& config, const PolicyContext& ctx, int jobs = 0);
SweepResult run_sweep_serial(const SweepConfig& config, const PolicyContext& ctx);

// '%'-commented header, then one row per gap: gap, one mean column per policy, one
// standard-error column per policy.
void write_sweep(std::ostream& out, const SweepResult& result);

}  // namespace gittins
