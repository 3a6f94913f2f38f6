#include "gittins/simulator.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <ostream>

#include "gittins/errors.hpp"
#include "gittins/report.hpp"

namespace gittins {

BanditInstance gap_instance(int arms, double gap, int horizon) {
  if (arms < 1 || horizon < 1) throw InputError("gap_instance: need arms >= 1 and horizon >= 1");
  if (!(gap >= 0.0) || !std::isfinite(gap)) throw InputError("gap_instance: gap must be >= 0");
  BanditInstance inst;
  inst.means.assign(std::size_t(arms), -gap);
  inst.means[0] = 0.0;
  inst.horizon = horizon;
  return inst;
}

std::uint64_t arm_key(std::uint64_t seed, int arm) {
  return mix64(seed ^ (std::uint64_t(arm) + 1) * 0xd6e8feb86659fd93ULL);
}

std::vector<int> run_episode(const BanditInstance& instance, const PolicySpec& spec,
                             const PolicyContext& ctx, std::uint64_t seed) {
  if (int(instance.means.size()) != spec.arms || instance.horizon != spec.horizon)
    throw InputError("run_episode: instance and policy disagree on arms or horizon");
  PolicyState state = make_state(spec, seed);
  std::vector<std::uint64_t> keys(instance.means.size());
  for (std::size_t i = 0; i < keys.size(); ++i) keys[i] = arm_key(seed, int(i));
  for (int t = 1; t <= spec.horizon; ++t) {
    const int arm = select_arm(spec, state, ctx);
    const double noise = CounterRng::normal_at(keys[arm], std::uint64_t(state.counts[arm]));
    observe(spec, state, arm, instance.means[arm] + noise);
  }
  return state.counts;
}

double episode_regret(const BanditInstance& instance, std::span<const int> counts) {
  const double best = *std::max_element(instance.means.begin(), instance.means.end());
  double r = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) r += (best - instance.means[i]) * counts[i];
  return r;
}

RegretEstimate summarize(std::span<const double> regrets) {
  RegretEstimate est;
  est.reps = int(regrets.size());
  if (regrets.empty()) return est;
  KahanSum sum;
  for (double r : regrets) sum.add(r);
  est.mean = sum.value() / double(regrets.size());
  if (regrets.size() < 2) return est;
  KahanSum sq;
  for (double r : regrets) sq.add((r - est.mean) * (r - est.mean));
  const double var = sq.value() / double(regrets.size() - 1);
  est.std_error = std::sqrt(var / double(regrets.size()));
  return est;
}

RegretEstimate estimate_regret(std::span<const std::vector<int>> counts,
                               const BanditInstance& instance) {
  std::vector<double> regrets;
  regrets.reserve(counts.size());
  for (const auto& c : counts) regrets.push_back(episode_regret(instance, c));
  return summarize(regrets);
}

RegretEstimate simulate_regret(const BanditInstance& instance, const PolicySpec& spec,
                               const PolicyContext& ctx, int reps, std::uint64_t base, int point,
                               int policy_index, int jobs) {
  if (reps < 1) throw InputError("simulate_regret: reps must be >= 1");
  check_context(spec, ctx);
  std::vector<double> regrets(std::size_t(reps), 0.0);
  std::exception_ptr failure;
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
  for (int k = 0; k < reps; ++k) {
    try {
      const auto counts =
          run_episode(instance, spec, ctx, derive_seed(base, point, policy_index, k));
      regrets[k] = episode_regret(instance, counts);
    } catch (...) {
#pragma omp critical(gittins_sim_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return summarize(regrets);
}

RegretEstimate simulate_regret_serial(const BanditInstance& instance, const PolicySpec& spec,
                                      const PolicyContext& ctx, int reps, std::uint64_t base,
                                      int point, int policy_index) {
  if (reps < 1) throw InputError("simulate_regret: reps must be >= 1");
  check_context(spec, ctx);
  std::vector<double> regrets;
  regrets.reserve(std::size_t(reps));
  for (int k = 0; k < reps; ++k)
    regrets.push_back(episode_regret(
        instance, run_episode(instance, spec, ctx, derive_seed(base, point, policy_index, k))));
  return summarize(regrets);
}

namespace {

PolicySpec sweep_spec(const SweepConfig& config, PolicyKind kind) {
  PolicySpec spec{kind, config.horizon, config.arms, {}};
  if (kind == PolicyKind::GittinsPrior) spec.prior.assign(std::size_t(config.arms), config.prior);
  return spec;
}

template <class Sim>
SweepResult sweep_with(const SweepConfig& config, const PolicyContext& ctx, Sim&& sim) {
  if (config.reps < 1) throw ConfigError("sweep: reps must be >= 1");
  if (config.policies.empty()) throw ConfigError("sweep: no policies");
  for (PolicyKind kind : config.policies) {
    const PolicySpec spec = sweep_spec(config, kind);
    validate(spec);
    check_context(spec, ctx);
  }
  SweepResult result{config, {}};
  for (std::size_t g = 0; g < config.gaps.size(); ++g) {
    const BanditInstance inst = gap_instance(config.arms, config.gaps[g], config.horizon);
    std::vector<RegretEstimate> row;
    for (std::size_t p = 0; p < config.policies.size(); ++p)
      row.push_back(sim(inst, sweep_spec(config, config.policies[p]), int(g), int(p)));
    result.rows.push_back(std::move(row));
  }
  return result;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config, const PolicyContext& ctx, int jobs) {
  return sweep_with(config, ctx, [&](const BanditInstance& inst, const PolicySpec& spec, int g,
                                     int p) {
    return simulate_regret(inst, spec, ctx, config.reps, config.seed, g, p, jobs);
  });
}

SweepResult run_sweep_serial(const SweepConfig& config, const PolicyContext& ctx) {
  return sweep_with(config, ctx, [&](const BanditInstance& inst, const PolicySpec& spec, int g,
                                     int p) {
    return simulate_regret_serial(inst, spec, ctx, config.reps, config.seed, g, p);
  });
}

void write_sweep(std::ostream& out, const SweepResult& result) {
  const SweepConfig& c = result.config;
  DataTable table;
  table.comments.push_back("worst-case regret sweep");
  table.comments.push_back("n=" + std::to_string(c.horizon) + " d=" + std::to_string(c.arms) +
                           " reps=" + std::to_string(c.reps) + " seed=" + std::to_string(c.seed));
  table.comments.push_back("instance: mu_1 = 0, mu_i = -gap for i >= 2");
  table.columns.push_back("gap");
  for (PolicyKind k : c.policies) table.columns.push_back(std::string(policy_name(k)));
  for (PolicyKind k : c.policies) table.columns.push_back(std::string(policy_name(k)) + "_se");
  for (std::size_t g = 0; g < result.rows.size(); ++g) {
    std::vector<double> row{c.gaps[g]};
    for (const RegretEstimate& e : result.rows[g]) row.push_back(e.mean);
    for (const RegretEstimate& e : result.rows[g]) row.push_back(e.std_error);
    table.rows.push_back(std::move(row));
  }
  write_data(out, table);
}

}  // namespace gittins
