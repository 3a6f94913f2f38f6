#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gittins/approx_index.hpp"
#include "gittins/bayes2.hpp"
#include "gittins/config.hpp"
#include "gittins/errors.hpp"
#include "gittins/index_engine.hpp"
#include "gittins/index_table.hpp"
#include "gittins/report.hpp"
#include "gittins/simulator.hpp"
#include "gittins/verification.hpp"

namespace fs = std::filesystem;
using namespace gittins;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheck = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---- build-table

struct BuildTableArgs {
  int horizon = 0;
  double tol = 1e-6;
  std::string out;
  int jobs = 0;
  double max_memory_mb = 4096;
};

int cmd_build_table(const BuildTableArgs& a) {
  if (a.horizon < 2) throw UsageError("build-table: --horizon must be >= 2");
  if (!(a.tol > 0.0)) throw UsageError("build-table: --tol must be > 0");
  const double mb = double(table_bytes(a.horizon)) / (1024.0 * 1024.0);
  if (mb > a.max_memory_mb)
    throw UsageError("build-table: a table for n=" + std::to_string(a.horizon) + " needs about " +
                     fmt("%.1f", mb) + " MiB, above --max-memory-mb " + fmt("%.0f", a.max_memory_mb));
  {
    std::ofstream probe(a.out, std::ios::app);
    if (!probe) throw UsageError("build-table: cannot write " + a.out);
  }
  EngineOptions opts;
  opts.tol = a.tol;
  TableBuildStats stats;
  const IndexTable table = build_table(a.horizon, opts, a.jobs, &stats);
  save_table(table, a.out);
  std::printf("entries %zu\nmax knots %zu\nwall time %.2f s\nwritten %s\n", table.size(),
              stats.max_segments + 1, stats.seconds, a.out.c_str());
  return kExitOk;
}

// ---- index

struct IndexArgs {
  double mean = 0.0;
  double variance = 1.0;
  int remaining = 1;
  bool approx = false;
  double tol = 1e-6;
};

int cmd_index(const IndexArgs& a) {
  if (a.remaining < 1) throw UsageError("index: --remaining must be >= 1");
  if (!(a.variance >= 0.0)) throw UsageError("index: --variance must be >= 0");
  const double g = a.approx ? approx_gittins(a.mean, a.variance, a.remaining)
                            : gittins_index({a.mean, a.variance, a.remaining}, a.tol);
  std::printf("%.6f\n", g);
  return kExitOk;
}

// ---- sweep

struct SweepArgs {
  std::string config;
  std::string table;
  std::string out;
  int jobs = 0;
};

bool uses(const SweepConfig& c, PolicyKind k) {
  return std::find(c.policies.begin(), c.policies.end(), k) != c.policies.end();
}

fs::path sweep_file(const fs::path& dir, const SweepConfig& c) {
  return dir / ("sweep_n" + std::to_string(c.horizon) + "_d" + std::to_string(c.arms) + ".dat");
}

int cmd_sweep(const SweepArgs& a) {
  const std::vector<SweepConfig> grids = load_sweep_config(a.config);

  int needed = 0;
  for (const SweepConfig& c : grids)
    if (uses(c, PolicyKind::GittinsFlat)) needed = std::max(needed, c.horizon);
  IndexTable table;
  if (needed > 0) {
    if (a.table.empty())
      throw ConfigError("sweep: policy gittins needs an index table with horizon >= " +
                        std::to_string(needed) + " (build-table --horizon " +
                        std::to_string(needed) + ")");
    table = load_table(a.table);
    if (table.horizon() < needed)
      throw ConfigError("sweep: index table " + a.table + " has horizon " +
                        std::to_string(table.horizon()) + ", needs horizon >= " +
                        std::to_string(needed));
  }
  fs::create_directories(a.out);

  IndexEngine engine;
  for (const SweepConfig& c : grids) {
    PolicyContext ctx;
    ctx.table = needed > 0 ? &table : nullptr;
    ctx.engine = &engine;
    BayesPlan plan;
    if (uses(c, PolicyKind::BayesTwoArm) && c.horizon > 2) {
      plan = BayesPlan(1.0, 1.0, c.horizon - 2, BayesOptions{.jobs = a.jobs});
      ctx.bayes = &plan;
    }
    const SweepResult result = run_sweep(c, ctx, a.jobs);
    const fs::path path = sweep_file(a.out, c);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("sweep: cannot write " + path.string());
    write_sweep(out, result);
    std::printf("written %s\n", path.string().c_str());
  }
  return kExitOk;
}

// ---- verify

struct VerifyArgs {
  std::string table;
  long reps = 10000;
  std::uint64_t seed = 1;
  int jobs = 0;
};

int cmd_verify(const VerifyArgs& a) {
  if (a.reps < 1) throw UsageError("verify: --reps must be >= 1");
  const IndexTable table = load_table(a.table);
  std::vector<CheckRow> rows;

  const BracketReport br = check_index_bracket(table);
  for (const Violation& v : br.violations)
    std::fprintf(stderr, "index upper bound violated at (T=%d, m=%d): beta %.10g > %.10g\n",
                 v.T, v.m, v.beta, v.bound);
  {
    CheckRow r;
    r.name = "index_upper_bound";
    r.estimate = double(br.violations.size());
    r.bound = 0.0;
    r.margin = 0.0 - double(br.violations.size());
    r.reps = long(br.checked);
    r.verdict = br.violations.empty() ? Verdict::Pass : Verdict::Fail;
    rows.push_back(r);
    CheckRow c;
    c.name = "index_fitted_lower_c[T=" + std::to_string(br.fitted_T) + ",m=" +
             std::to_string(br.fitted_m) + "]";
    c.estimate = br.fitted_c;
    c.reps = long(br.checked);
    rows.push_back(c);
  }
  for (const CheckRow& r : check_table_entries(table, 10.0 * table.tol())) rows.push_back(r);

  const double grid[] = {3, 10, 1e2, 1e3, 1e4, 1e6};
  for (const CheckRow& r : check_f_beta(grid)) rows.push_back(r);

  if (a.reps < kMinStatReps)
    std::fprintf(stderr,
                 "warning: --reps %ld is below %ld; Monte-Carlo checks are report-only\n", a.reps,
                 kMinStatReps);
  rows.push_back(mc_expected_tau({-0.5, 1000}, 0.0, a.reps, a.seed, a.jobs));
  rows.push_back(mc_expected_tau({-1.0, 1000}, -10.0, a.reps, a.seed + 1, a.jobs));
  for (const CheckRow& r : mc_gaussian_tails(std::max(a.reps, 1L), a.seed + 2, a.jobs))
    rows.push_back(r);

  write_checks(std::cout, rows);
  for (const CheckRow& r : rows)
    if (r.verdict == Verdict::Fail) return kExitCheck;
  return kExitOk;
}

// ---- bayes2

struct Bayes2Args {
  int horizon = 2;
  std::vector<double> nu2;
  std::vector<double> gaps;
  long reps = 1000;
  std::uint64_t seed = 1;
  std::string table;
  std::string out;
  int max_horizon = 2000;
  int jobs = 0;
};

const char* arm_name(int arm) { return arm == 0 ? "arm1" : "arm2"; }

int cmd_bayes2(const Bayes2Args& a) {
  if (a.horizon < 1) throw UsageError("bayes2: --horizon must be >= 1");
  if (a.horizon > a.max_horizon)
    throw UsageError("bayes2: --horizon " + std::to_string(a.horizon) + " exceeds --max-horizon " +
                     std::to_string(a.max_horizon));
  if (a.nu2.empty() && a.gaps.empty()) throw UsageError("bayes2: give --nu2 and/or --gaps");

  if (!a.nu2.empty()) {
    // Arm 1 ~ N(0, 1), arm 2 ~ N(nu2, 1/2).
    IndexEngine engine;
    const BayesPlan plan(1.0, 0.5, a.horizon, BayesOptions{.max_horizon = a.max_horizon, .jobs = a.jobs});
    const double g1 = engine.zero_index(1.0, a.horizon);
    const double g2 = engine.zero_index(0.5, a.horizon);
    for (double nu : a.nu2) {
      const int gittins = nu + g2 > g1 ? 1 : 0;
      const int bayes = plan.branch2(nu) > plan.branch1(nu) ? 1 : 0;
      std::printf("nu2=%g gittins: %s, bayes: %s\n", nu, arm_name(gittins), arm_name(bayes));
    }
  }

  if (!a.gaps.empty()) {
    if (a.table.empty())
      throw ConfigError("bayes2: regret columns need --table with horizon >= " +
                        std::to_string(a.horizon));
    const IndexTable table = load_table(a.table);
    if (table.horizon() < a.horizon)
      throw ConfigError("bayes2: index table horizon " + std::to_string(table.horizon()) +
                        " is below " + std::to_string(a.horizon));
    SweepConfig c;
    c.horizon = a.horizon;
    c.arms = 2;
    c.gaps = a.gaps;
    c.policies = {PolicyKind::OCUCB, PolicyKind::GittinsFlat, PolicyKind::BayesTwoArm};
    c.reps = int(a.reps);
    c.seed = a.seed;
    PolicyContext ctx;
    ctx.table = &table;
    BayesPlan plan;
    if (a.horizon > 2) {
      plan = BayesPlan(1.0, 1.0, a.horizon - 2, BayesOptions{.max_horizon = a.max_horizon, .jobs = a.jobs});
      ctx.bayes = &plan;
      std::fprintf(stderr, "bayes plan: %.1f s, max knots %zu\n", plan.stats().seconds,
                   plan.stats().max_segments + 1);
    }
    const SweepResult result = run_sweep(c, ctx, a.jobs);
    if (a.out.empty()) {
      write_sweep(std::cout, result);
    } else {
      std::ofstream out(a.out);
      if (!out) throw std::runtime_error("bayes2: cannot write " + a.out);
      write_sweep(out, result);
      std::printf("written %s\n", a.out.c_str());
    }
  }
  return kExitOk;
}

// ---- index-curve

struct CurveArgs {
  std::string out_dir;
  std::vector<int> m_values{100, 200, 500, 1000, 2000, 5000, 10000};
  int fixed_m = 1000;
  int max_T = 100;
  double tol = 1e-6;
};

int cmd_index_curve(const CurveArgs& a) {
  if (a.fixed_m < 1 || a.max_T < 1) throw UsageError("index-curve: need --fixed-m, --max-t >= 1");
  for (int m : a.m_values)
    if (m < 1) throw UsageError("index-curve: --m values must be >= 1");
  fs::create_directories(a.out_dir);
  EngineOptions opts;
  opts.tol = a.tol;
  const IndexEngine engine(opts);

  DataTable by_m;
  by_m.comments = {"gittins index against horizon, variance 1", "exact: backward induction; approx: closed form"};
  by_m.columns = {"m", "exact", "approx"};
  for (int m : a.m_values)
    by_m.rows.push_back({double(m), engine.zero_index(1.0, m), approx_gittins(0.0, 1.0, m)});
  std::ofstream f1(fs::path(a.out_dir) / "index_vs_m.dat");
  write_data(f1, by_m);

  DataTable by_T;
  by_T.comments = {"gittins index against pull count T, variance 1/T, m=" + std::to_string(a.fixed_m),
                   "exact: backward induction; approx: closed form"};
  by_T.columns = {"T", "exact", "approx"};
  for (int T = 1; T <= a.max_T; ++T)
    by_T.rows.push_back({double(T), engine.zero_index(1.0 / T, a.fixed_m),
                         approx_gittins(0.0, 1.0 / T, a.fixed_m)});
  std::ofstream f2(fs::path(a.out_dir) / "index_vs_T.dat");
  write_data(f2, by_T);
  if (!f1 || !f2) throw std::runtime_error("index-curve: write failed in " + a.out_dir);
  std::printf("written %s/index_vs_m.dat and %s/index_vs_T.dat\n", a.out_dir.c_str(),
              a.out_dir.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-horizon Gaussian Gittins index: tables, queries, sweeps, checks"};
  app.require_subcommand(1);
  app.fallthrough();
  int jobs = 0;
  app.add_option("--jobs", jobs, "worker threads (0 = runtime default)")
      ->envname("GITTINS_JOBS")
      ->check(CLI::NonNegativeNumber);

  BuildTableArgs bt;
  auto* build = app.add_subcommand("build-table", "build and save the flat-prior index table");
  build->add_option("--horizon", bt.horizon, "horizon n (>= 2)")->required();
  build->add_option("--tol", bt.tol, "per-stage fit tolerance");
  build->add_option("--out", bt.out, "output file")->required();
  build->add_option("--max-memory-mb", bt.max_memory_mb, "refuse tables above this size");

  IndexArgs ix;
  auto* index = app.add_subcommand("index", "print one Gittins index");
  index->add_option("--mean", ix.mean, "posterior mean");
  index->add_option("--variance", ix.variance, "posterior variance");
  index->add_option("--remaining", ix.remaining, "rounds remaining m")->required();
  index->add_flag("--approx", ix.approx, "closed-form approximation");
  index->add_option("--tol", ix.tol, "per-stage fit tolerance");

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "run a regret sweep from a config file");
  sweep->add_option("--config", sw.config, "sweep config (JSON)")->required()->check(CLI::ExistingFile);
  sweep->add_option("--table", sw.table, "index table file");
  sweep->add_option("--out", sw.out, "output directory")->required();

  VerifyArgs vf;
  auto* verify = app.add_subcommand("verify", "run the verification checks on a table");
  verify->add_option("--table", vf.table, "index table file")->required()->check(CLI::ExistingFile);
  verify->add_option("--reps", vf.reps, "Monte-Carlo replications");
  verify->add_option("--seed", vf.seed, "base seed");

  Bayes2Args b2;
  auto* bayes = app.add_subcommand("bayes2", "two-armed Gittins vs Bayes decisions and regret");
  bayes->add_option("--horizon", b2.horizon, "horizon n")->required();
  bayes->add_option("--nu2", b2.nu2, "arm-2 prior means (arm 1 ~ N(0,1), arm 2 ~ N(nu2,1/2))")->delimiter(',');
  bayes->add_option("--gaps", b2.gaps, "gaps for the regret comparison")->delimiter(',');
  bayes->add_option("--reps", b2.reps, "replications per gap");
  bayes->add_option("--seed", b2.seed, "base seed");
  bayes->add_option("--table", b2.table, "index table file");
  bayes->add_option("--out", b2.out, "regret data file (stdout if omitted)");
  bayes->add_option("--max-horizon", b2.max_horizon, "largest accepted horizon");

  CurveArgs cv;
  auto* curve = app.add_subcommand("index-curve", "export exact and approximate index curves");
  curve->add_option("--out", cv.out_dir, "output directory")->required();
  curve->add_option("--m", cv.m_values, "horizons for the variance-1 curve")->delimiter(',');
  curve->add_option("--fixed-m", cv.fixed_m, "horizon for the curve over T");
  curve->add_option("--max-t", cv.max_T, "largest T");
  curve->add_option("--tol", cv.tol, "per-stage fit tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*build) {
      bt.jobs = jobs;
      return cmd_build_table(bt);
    }
    if (*index) return cmd_index(ix);
    if (*sweep) {
      sw.jobs = jobs;
      return cmd_sweep(sw);
    }
    if (*verify) {
      vf.jobs = jobs;
      return cmd_verify(vf);
    }
    if (*bayes) {
      b2.jobs = jobs;
      return cmd_bayes2(b2);
    }
    if (*curve) return cmd_index_curve(cv);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitUsage;
  } catch (const FormatError& e) {
    std::fprintf(stderr, "format error: %s\n", e.what());
    return kExitUsage;
  } catch (const InputError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitUsage;
}
