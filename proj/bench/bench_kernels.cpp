// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "gittins/bayes2.hpp"
#include "gittins/index_table.hpp"
#include "gittins/simulator.hpp"

using namespace gittins;

namespace {

void BM_TableSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_table_serial(int(state.range(0))));
}
BENCHMARK(BM_TableSerial)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_TableParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_table(int(state.range(0))));
}
BENCHMARK(BM_TableParallel)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

const IndexTable& table200() {
  static const IndexTable t = build_table(200);
  return t;
}

void BM_RegretSerial(benchmark::State& state) {
  PolicyContext ctx;
  ctx.table = &table200();
  const BanditInstance inst = gap_instance(10, 0.5, 200);
  const PolicySpec spec{PolicyKind::GittinsFlat, 200, 10, {}};
  for (auto _ : state)
    benchmark::DoNotOptimize(simulate_regret_serial(inst, spec, ctx, int(state.range(0)), 1, 0, 0));
}
BENCHMARK(BM_RegretSerial)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_RegretParallel(benchmark::State& state) {
  PolicyContext ctx;
  ctx.table = &table200();
  const BanditInstance inst = gap_instance(10, 0.5, 200);
  const PolicySpec spec{PolicyKind::GittinsFlat, 200, 10, {}};
  for (auto _ : state)
    benchmark::DoNotOptimize(simulate_regret(inst, spec, ctx, int(state.range(0)), 1, 0, 0));
}
BENCHMARK(BM_RegretParallel)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_BayesPlan(benchmark::State& state) {
  BayesOptions opts;
  opts.jobs = int(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(BayesPlan(1.0, 1.0, int(state.range(0)), opts));
}
BENCHMARK(BM_BayesPlan)->Args({50, 1})->Args({50, 0})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
