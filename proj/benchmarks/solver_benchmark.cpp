#include <benchmark/benchmark.h>

#include "ellipcenters/baselines.hpp"
#include "ellipcenters/bench_harness.hpp"
#include "ellipcenters/ellipse_geometry.hpp"
#include "ellipcenters/levelset.hpp"
#include "ellipcenters/me_solver.hpp"

namespace ec = ellipcenters;

namespace {

void BM_LogSumExpEvaluate(benchmark::State& state) {
  const auto inst = ec::generate_instance(ec::ProblemKind::LogSumExp, state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(inst.objective().evaluate(inst.x0()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogSumExpEvaluate)->Arg(100)->Arg(1000)->Arg(100000);

void BM_QuadraticEvaluate(benchmark::State& state) {
  const auto inst = ec::generate_instance(ec::ProblemKind::Quadratic, state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(inst.objective().evaluate(inst.x0()));
}
BENCHMARK(BM_QuadraticEvaluate)->Arg(100)->Arg(1000);

void BM_FitConic(benchmark::State& state) {
  double m = 0.5;
  for (auto _ : state) {
    const auto k = ec::fit_conic(2.0, m, 0.7);
    benchmark::DoNotOptimize(ec::conic_center(k, 2.0));
    m = m < 1.0 ? m + 1e-9 : 0.5;
  }
}
BENCHMARK(BM_FitConic);

void BM_LevelStep(benchmark::State& state) {
  const auto inst = ec::generate_instance(ec::ProblemKind::LogSumExp, state.range(0), 2);
  const auto& f = inst.objective();
  const auto ev = f.evaluate(inst.x0());
  for (auto _ : state) {
    benchmark::DoNotOptimize(ec::find_level_step(f, inst.x0(), ev.value, ev.gradient));
  }
}
BENCHMARK(BM_LevelStep)->Arg(1000);

void BM_MeStep(benchmark::State& state) {
  const auto inst = ec::generate_instance(ec::ProblemKind::LogSumExp, state.range(0), 3);
  const auto& f = inst.objective();
  const auto ev = f.evaluate(inst.x0());
  const ec::SolverConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ec::me_step(f, inst.x0(), ev.value, ev.gradient, cfg));
  }
}
BENCHMARK(BM_MeStep)->Arg(1000);

void BM_Minimize(benchmark::State& state) {
  const auto kind = static_cast<ec::Method>(state.range(1));
  const auto inst = ec::generate_instance(ec::ProblemKind::LogSumExp, state.range(0), 4);
  ec::SolverConfig cfg;
  cfg.store_points = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ec::run_method(kind, inst.objective(), inst.x0(), cfg));
  }
  state.SetLabel(ec::to_string(kind));
}
BENCHMARK(BM_Minimize)
    ->Args({1000, static_cast<int>(ec::Method::ME)})
    ->Args({1000, static_cast<int>(ec::Method::BBLong)})
    ->Args({1000, static_cast<int>(ec::Method::BBShort)});

}  // namespace

BENCHMARK_MAIN();
