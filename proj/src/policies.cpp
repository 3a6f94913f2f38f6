#include "gittins/policies.hpp"

#include <cmath>
#include <limits>

#include "gittins/bayes2.hpp"
#include "gittins/errors.hpp"
#include "gittins/index_engine.hpp"
#include "gittins/index_table.hpp"

namespace gittins {

namespace {

constexpr std::string_view kNames[] = {"gittins", "gittins-prior", "gittins-approx", "ucb",
                                       "ocucb",   "thompson",      "bayes"};

constexpr std::uint64_t kThompsonTag = 0x7468'6f6d'7073'6f6eULL;

}  // namespace

std::string_view policy_name(PolicyKind kind) { return kNames[int(kind)]; }

std::optional<PolicyKind> parse_policy(std::string_view name) {
  for (int i = 0; i < int(std::size(kNames)); ++i)
    if (kNames[i] == name) return PolicyKind(i);
  return std::nullopt;
}

void validate(const PolicySpec& spec) {
  if (spec.horizon < 1) throw InputError("policy: horizon must be >= 1");
  if (spec.arms < 1) throw InputError("policy: need at least one arm");
  if (spec.kind == PolicyKind::GittinsPrior) {
    if (int(spec.prior.size()) != spec.arms)
      throw InputError("gittins-prior: need one prior per arm");
    for (const Posterior& p : spec.prior)
      if (!(p.variance > 0.0) || !std::isfinite(p.variance) || !std::isfinite(p.mean))
        throw InputError("gittins-prior: prior variances must be positive and finite");
  }
  if (spec.kind == PolicyKind::BayesTwoArm && spec.arms != 2)
    throw InputError("bayes: the Bayes-optimal policy needs exactly two arms");
}

void check_context(const PolicySpec& spec, const PolicyContext& ctx) {
  switch (spec.kind) {
    case PolicyKind::GittinsFlat:
      if (!ctx.table) throw ConfigError("gittins: no index table loaded");
      if (spec.horizon > ctx.table->horizon())
        throw ConfigError("gittins: index table horizon " + std::to_string(ctx.table->horizon()) +
                          " is below the required horizon " + std::to_string(spec.horizon));
      break;
    case PolicyKind::GittinsPrior:
      if (!ctx.engine) throw ConfigError("gittins-prior: no index engine");
      break;
    case PolicyKind::BayesTwoArm:
      if (spec.horizon > 2) {
        if (!ctx.bayes) throw ConfigError("bayes: no Bayes plan");
        if (ctx.bayes->rounds() != spec.horizon - 2 || ctx.bayes->var1() != 1.0 ||
            ctx.bayes->var2() != 1.0)
          throw ConfigError("bayes: plan must be solved for variances (1, 1) over horizon - 2 = " +
                            std::to_string(spec.horizon - 2) + " rounds");
      }
      break;
    default:
      break;
  }
}

PolicyState make_state(const PolicySpec& spec, std::uint64_t seed) {
  validate(spec);
  PolicyState s;
  s.counts.assign(std::size_t(spec.arms), 0);
  s.sums.assign(std::size_t(spec.arms), 0.0);
  if (spec.kind == PolicyKind::GittinsPrior) s.posteriors = spec.prior;
  s.rng = CounterRng(mix64(seed ^ kThompsonTag));
  return s;
}

double ucb_bonus(int pulls, double t) { return std::sqrt(2.0 * std::log(t) / pulls); }

double ocucb_bonus(int pulls, int t, int horizon) {
  return std::sqrt(3.0 / pulls * std::log(2.0 * horizon / t));
}

int select_arm(const PolicySpec& spec, PolicyState& state, const PolicyContext& ctx) {
  if (state.t > spec.horizon)
    throw ProtocolError("select_arm: sequence exhausted (round " + std::to_string(state.t) +
                        " > horizon " + std::to_string(spec.horizon) + ")");
  if (state.pending >= 0) throw ProtocolError("select_arm: previous selection not observed");

  const int d = spec.arms;
  const int m = spec.horizon - state.t + 1;
  int best = 0;

  if (spec.kind == PolicyKind::GittinsPrior) {
    double best_index = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < d; ++i) {
      const Posterior& p = state.posteriors[i];
      const double g = ctx.engine->index({p.mean, p.variance, m});
      if (i == 0 || g > best_index) {
        best = i;
        best_index = g;
      }
    }
    state.pending = best;
    return best;
  }

  for (int i = 0; i < d; ++i) {
    if (state.counts[i] == 0) {
      state.pending = i;
      return i;
    }
  }

  if (spec.kind == PolicyKind::BayesTwoArm) {
    const double delta = state.empirical_mean(1) - state.empirical_mean(0);
    best = ctx.bayes->select(state.counts[0] - 1, state.counts[1] - 1, delta);
    state.pending = best;
    return best;
  }

  double best_index = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < d; ++i) {
    const int T = state.counts[i];
    double g = 0.0;
    switch (spec.kind) {
      case PolicyKind::GittinsFlat:
        g = state.empirical_mean(i) + ctx.table->lookup(T, m);
        break;
      case PolicyKind::GittinsApprox:
        g = state.empirical_mean(i) + approx_gittins(0.0, 1.0 / T, m, ctx.approx);
        break;
      case PolicyKind::UCB:
        g = state.empirical_mean(i) + ucb_bonus(T, state.t);
        break;
      case PolicyKind::OCUCB:
        g = state.empirical_mean(i) + ocucb_bonus(T, state.t, spec.horizon);
        break;
      case PolicyKind::Thompson: {
        g = state.empirical_mean(i) + state.rng.normal() / std::sqrt(T + 1.0);
        break;
      }
      default:
        break;
    }
    if (i == 0 || g > best_index) {
      best = i;
      best_index = g;
    }
  }
  state.pending = best;
  return best;
}

void observe(const PolicySpec& spec, PolicyState& state, int arm, double reward) {
  if (state.pending < 0) throw ProtocolError("observe: no arm selected this round");
  if (arm != state.pending)
    throw ProtocolError("observe: arm " + std::to_string(arm) + " was not selected (expected " +
                        std::to_string(state.pending) + ")");
  if (!std::isfinite(reward)) throw InputError("observe: non-finite reward");
  ++state.counts[arm];
  state.sums[arm] += reward;
  if (spec.kind == PolicyKind::GittinsPrior)
    state.posteriors[arm] = posterior_update(state.posteriors[arm], reward);
  ++state.t;
  state.pending = -1;
}

}  // namespace gittins
