#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gittins/approx_index.hpp"
#include "gittins/posterior.hpp"
#include "gittins/random.hpp"

namespace gittins {

class IndexTable;
class IndexEngine;
class BayesPlan;

enum class PolicyKind { GittinsFlat, GittinsPrior, GittinsApprox, UCB, OCUCB, Thompson, BayesTwoArm };

// Short names used in config files and data-file headers: gittins, gittins-prior,
// gittins-approx, ucb, ocucb, thompson, bayes.
std::string_view policy_name(PolicyKind kind);
std::optional<PolicyKind> parse_policy(std::string_view name);

struct PolicySpec {
  PolicyKind kind = PolicyKind::GittinsFlat;
  int horizon = 1;
  int arms = 1;
  std::vector<Posterior> prior;  // GittinsPrior only, one per arm, variance > 0
};

// Throws InputError when the spec is inconsistent.
void validate(const PolicySpec& spec);

// Read-only resources a policy may need. GittinsFlat needs `table` (horizon >= n),
// GittinsPrior needs `engine`, BayesTwoArm needs `bayes` solved for variances (1, 1)
// over n - 2 rounds.
struct PolicyContext {
  const IndexTable* table = nullptr;
  const IndexEngine* engine = nullptr;
  const BayesPlan* bayes = nullptr;
  ApproxParams approx;
};

// Throws ConfigError when `ctx` lacks what `spec` needs.
void check_context(const PolicySpec& spec, const PolicyContext& ctx);

struct PolicyState {
  int t = 1;          // round about to be played
  int pending = -1;   // arm selected this round, -1 before select_arm
  std::vector<int> counts;
  std::vector<double> sums;
  std::vector<Posterior> posteriors;  // GittinsPrior only
  CounterRng rng;                     // Thompson only

  double empirical_mean(int arm) const { return sums[arm] / counts[arm]; }
};

PolicyState make_state(const PolicySpec& spec, std::uint64_t seed);

// Arm (0-based) to play in round state.t. Every policy plays each unpulled arm once,
// lowest index first, except GittinsPrior which starts from proper posteriors.
// Thompson samples N(mean, 1/(T+1)) for every arm, in arm order, each round.
// Ties go to the lowest index. Throws ProtocolError past the horizon or when the
// previous selection was not observed.
int select_arm(const PolicySpec& spec, PolicyState& state, const PolicyContext& ctx);

// Records the reward of the selected arm and advances the round. Throws ProtocolError
// for any other arm or a second observe, InputError for a non-finite reward.
void observe(const PolicySpec& spec, PolicyState& state, int arm, double reward);

// Exploration bonuses of the index policies, exposed for tests.
double ucb_bonus(int pulls, double t);
double ocucb_bonus(int pulls, int t, int horizon);

}  // namespace gittins
