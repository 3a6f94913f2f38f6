#include "gittins/verification.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "gittins/approx_index.hpp"
#include "gittins/errors.hpp"
#include "gittins/gaussian.hpp"
#include "gittins/index_table.hpp"
#include "gittins/random.hpp"
#include "gittins/report.hpp"

namespace gittins {

namespace {

void check_rule(const StoppingRule& rule) {
  if (!(rule.nu < 0.0) || !std::isfinite(rule.nu)) throw InputError("stopping rule: need nu < 0");
  if (rule.m < 1) throw InputError("stopping rule: need m >= 1");
}

int first_tested(const StoppingRule& rule) {
  return std::max(1, int(std::ceil(1.0 / (rule.nu * rule.nu))));
}

// Runs the rule on a stream of rewards drawn by `next`.
template <class Next>
int run_rule(const StoppingRule& rule, Next&& next) {
  const double nu2 = rule.nu * rule.nu;
  const int start = first_tested(rule);
  double sum = 0.0;
  for (int t = 1; t <= rule.m; ++t) {
    sum += next(t);
    if (t == rule.m) return t;
    if (t < start) continue;
    const double mean = sum / t;
    if (mean + std::sqrt(4.0 / t * std::log(4.0 * t * nu2)) <= 0.0) return t;
  }
  return rule.m;
}

// Mean and standard error of `reps` draws of sample(k), summed in index order.
template <class Sample>
void mc_mean(long reps, int jobs, Sample&& sample, double& mean, double& se) {
  std::vector<double> xs(static_cast<std::size_t>(reps));
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
  for (long k = 0; k < reps; ++k) xs[std::size_t(k)] = sample(k);
  KahanSum s;
  for (double x : xs) s.add(x);
  mean = s.value() / double(reps);
  KahanSum q;
  for (double x : xs) q.add((x - mean) * (x - mean));
  se = reps > 1 ? std::sqrt(q.value() / double(reps - 1) / double(reps)) : 0.0;
}

Verdict stat_verdict(bool holds, long reps) {
  if (reps < kMinStatReps) return Verdict::Report;
  return holds ? Verdict::Pass : Verdict::Fail;
}

}  // namespace

int stopping_time(const StoppingRule& rule, std::span<const double> path) {
  check_rule(rule);
  if (path.size() < std::size_t(rule.m)) throw InputError("stopping_time: path shorter than m");
  return run_rule(rule, [&](int t) { return path[std::size_t(t - 1)]; });
}

CheckRow mc_expected_tau(const StoppingRule& rule, double theta, long reps, std::uint64_t seed,
                         int jobs) {
  check_rule(rule);
  if (reps < 1) throw InputError("mc_expected_tau: reps must be >= 1");
  CheckRow row;
  char name[96];
  std::snprintf(name, sizeof name, "tau[theta=%g,nu=%g,m=%d]", theta, rule.nu, rule.m);
  row.name = name;
  row.reps = reps;
  mc_mean(
      reps, jobs,
      [&](long k) {
        const std::uint64_t key = derive_seed(seed, 0, 0, std::uint64_t(k));
        return double(run_rule(rule, [&](int t) {
          return theta + CounterRng::normal_at(key, std::uint64_t(t - 1));
        }));
      },
      row.estimate, row.std_error);
  if (theta >= 0.0) {
    row.bound = 0.5 * rule.m;
    row.margin = row.estimate - row.bound + 3.0 * row.std_error;
    row.verdict = stat_verdict(row.margin >= 0.0, reps);
  } else {
    row.bound = (row.estimate - 1.0) * rule.nu * rule.nu;
    row.margin = 0.0;
    row.verdict = Verdict::Report;
  }
  return row;
}

BracketReport check_index_bracket(const IndexTable& table) {
  BracketReport rep;
  rep.fitted_c = std::numeric_limits<double>::infinity();
  for (int T = 1; T < table.horizon(); ++T) {
    for (int m = 2; T + m <= table.horizon(); ++m) {
      const double g = table.lookup(T, m);
      const double b = std::exp(T * g * g / 2.0);
      const double lm = std::log(double(m));
      const double upper = m / (lm * std::sqrt(lm));
      ++rep.checked;
      if (!(b <= upper)) rep.violations.push_back({T, m, b, upper});
      const double lp = log_plus(double(m));
      const double ms = double(m) / T;
      const double lower = std::min(m / (lp * std::sqrt(lp)), ms / std::sqrt(log_plus(ms)));
      if (b / lower < rep.fitted_c) {
        rep.fitted_c = b / lower;
        rep.fitted_T = T;
        rep.fitted_m = m;
      }
    }
  }
  if (rep.checked == 0) rep.fitted_c = 0.0;
  return rep;
}

std::vector<CheckRow> check_table_entries(const IndexTable& table, double slack) {
  long count = 0;
  double worst_m1 = 0.0;
  double lowest = std::numeric_limits<double>::infinity();
  double worst_drop = 0.0;
  for (int T = 1; T < table.horizon(); ++T) {
    worst_m1 = std::max(worst_m1, std::abs(table.lookup(T, 1)));
    for (int m = 1; T + m <= table.horizon(); ++m) {
      ++count;
      lowest = std::min(lowest, table.lookup(T, m));
      if (m > 1) worst_drop = std::max(worst_drop, table.lookup(T, m - 1) - table.lookup(T, m));
    }
  }
  std::vector<CheckRow> rows;
  rows.push_back({"table_m1_zero", worst_m1, 0.0, 0.0, 0.0 - worst_m1, count,
                  worst_m1 == 0.0 ? Verdict::Pass : Verdict::Fail});
  rows.push_back({"table_nonnegative", lowest, 0.0, 0.0, lowest, count,
                  lowest >= 0.0 ? Verdict::Pass : Verdict::Fail});
  rows.push_back({"table_monotone_in_m", worst_drop, 0.0, slack, slack - worst_drop, count,
                  worst_drop <= slack ? Verdict::Pass : Verdict::Fail});
  return rows;
}

double f_beta(double beta) {
  if (!(beta >= 1.0)) throw InputError("f_beta: need beta >= 1");
  const double L = std::log(beta);
  return kInvSqrt2Pi / beta - std::sqrt(L / 2.0) * std::erfc(std::sqrt(L));
}

std::vector<CheckRow> check_f_beta(std::span<const double> grid, double limit_rel_tol) {
  std::vector<CheckRow> rows;
  char name[96];
  for (double beta : grid) {
    const double f = f_beta(beta);
    const double bl = beta * std::log(beta);
    if (beta >= 3.0) {
      std::snprintf(name, sizeof name, "f_beta_lower[beta=%g]", beta);
      const double lower = 1.0 / (10.0 * bl);
      rows.push_back({name, f, 0.0, lower, f - lower, 0, f >= lower ? Verdict::Pass : Verdict::Fail});
    }
    if (beta > 1.0) {
      std::snprintf(name, sizeof name, "f_beta_upper[beta=%g]", beta);
      const double upper = kLimitFBeta / bl;
      rows.push_back({name, f, 0.0, upper, upper - f, 0, f <= upper ? Verdict::Pass : Verdict::Fail});
    }
  }
  if (!grid.empty()) {
    const double beta = *std::max_element(grid.begin(), grid.end());
    const double scaled = f_beta(beta) * beta * std::log(beta);
    std::snprintf(name, sizeof name, "f_beta_limit[beta=%g]", beta);
    rows.push_back({name, scaled, 0.0, kLimitFBeta, limit_rel_tol * kLimitFBeta - std::abs(scaled - kLimitFBeta),
                    0, Verdict::Report});
  }
  return rows;
}

std::vector<CheckRow> mc_gaussian_tails(long reps, std::uint64_t seed, int jobs) {
  if (reps < 1) throw InputError("mc_gaussian_tails: reps must be >= 1");
  std::vector<CheckRow> rows;
  char name[96];
  std::uint64_t point = 0;

  struct Tail {
    double nu, sd, x;
  };
  for (const Tail& c : {Tail{0.0, 1.0, 2.0}, Tail{0.0, 1.0, 0.0}, Tail{-1.0, 1.0, 0.5},
                        Tail{-0.5, 2.0, 1.0}}) {
    CheckRow row;
    std::snprintf(name, sizeof name, "gauss_tail[nu=%g,sd=%g,x=%g]", c.nu, c.sd, c.x);
    row.name = name;
    row.reps = reps;
    const std::uint64_t key = derive_seed(seed, ++point, 0, 0);
    mc_mean(
        reps, jobs,
        [&](long k) {
          return c.nu + c.sd * CounterRng::normal_at(key, std::uint64_t(k)) >= c.x ? 1.0 : 0.0;
        },
        row.estimate, row.std_error);
    row.bound = std::exp(-(c.nu - c.x) * (c.nu - c.x) / (2.0 * c.sd * c.sd));
    row.margin = row.bound + 3.0 * row.std_error - row.estimate;
    row.verdict = stat_verdict(row.margin >= 0.0, reps);
    rows.push_back(row);
  }

  for (const Tail& c : {Tail{-0.5, 1.0, 0.0}, Tail{-2.0, 3.0, 0.0}}) {
    CheckRow row;
    std::snprintf(name, sizeof name, "gauss_neg_mean[nu=%g,sd=%g]", c.nu, c.sd);
    row.name = name;
    row.reps = reps;
    const std::uint64_t key = derive_seed(seed, ++point, 0, 0);
    mc_mean(
        reps, jobs,
        [&](long k) {
          const double x = c.nu + c.sd * CounterRng::normal_at(key, std::uint64_t(k));
          return x <= 0.0 ? x : 0.0;
        },
        row.estimate, row.std_error);
    row.bound = c.nu - c.sd * kInvSqrt2Pi;
    row.margin = row.estimate + 3.0 * row.std_error - row.bound;
    row.verdict = stat_verdict(row.margin >= 0.0, reps);
    rows.push_back(row);
  }

  struct Walk {
    int n;
    double gap, delta;
  };
  for (const Walk& c : {Walk{100, 0.0, 0.1}, Walk{100, 0.1, 0.1}, Walk{50, 0.0, 0.01}}) {
    CheckRow row;
    std::snprintf(name, sizeof name, "maximal[n=%d,gap=%g,delta=%g]", c.n, c.gap, c.delta);
    row.name = name;
    row.reps = reps;
    const double level = c.n * c.gap + std::sqrt(2.0 * c.n * std::log(1.0 / c.delta));
    const std::uint64_t base = derive_seed(seed, ++point, 0, 0);
    mc_mean(
        reps, jobs,
        [&](long k) {
          const std::uint64_t key = mix64(base ^ std::uint64_t(k) * kGolden);
          double s = 0.0;
          for (int t = 0; t < c.n; ++t) {
            s += CounterRng::normal_at(key, std::uint64_t(t));
            if (s >= level) return 1.0;
          }
          return 0.0;
        },
        row.estimate, row.std_error);
    const double ld = std::log(1.0 / c.delta);
    row.bound = c.delta / std::sqrt(kPi * ld) * std::exp(-c.n * c.gap * c.gap / 2.0);
    row.margin = row.bound + 3.0 * row.std_error - row.estimate;
    row.verdict = stat_verdict(row.margin >= 0.0, reps);
    rows.push_back(row);
  }
  return rows;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    default:
      return "report";
  }
}

void write_checks(std::ostream& out, std::span<const CheckRow> rows) {
  out << "% verification report\n% columns: name estimate bound margin verdict\n";
  char buf[256];
  for (const CheckRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%s %.10g %.10g %.10g %s\n", r.name.c_str(), r.estimate, r.bound,
                  r.margin, verdict_name(r.verdict));
    out << buf;
  }
}

}  // namespace gittins
