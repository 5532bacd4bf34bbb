#include <benchmark/benchmark.h>

#include <random>

#include "murspin/minimize.hpp"

using namespace murspin;

static void BM_DSquaredTable(benchmark::State& state) {
  const SpinValue s(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(DSquaredTable::build(s));
}
BENCHMARK(BM_DSquaredTable)->Arg(1)->Arg(3)->Arg(8)->Arg(16);

static void BM_QTableBuild(benchmark::State& state) {
  const SpinValue s(static_cast<int>(state.range(0)));
  const auto polys = DSquaredTable::build(s);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  std::vector<double> u(s.free_angle_count());
  for (double& v : u) v = unif(rng);
  std::sort(u.rbegin(), u.rend());
  const AngleGrid grid = AngleGrid::from_free_cosines(s, u);
  for (auto _ : state) benchmark::DoNotOptimize(QTable::build(polys, grid));
}
BENCHMARK(BM_QTableBuild)->Arg(3)->Arg(8)->Arg(16);

static void BM_InnerMaxMin(benchmark::State& state) {
  const SpinValue s(static_cast<int>(state.range(0)));
  const QTable table = QTable::build(s, AngleGrid::unbiased(s));
  for (auto _ : state) benchmark::DoNotOptimize(inner_max_min(table));
}
BENCHMARK(BM_InnerMaxMin)->Arg(1)->Arg(3)->Arg(8)->Arg(16);

static void BM_DeviceLossByStates(benchmark::State& state) {
  const SpinValue s(static_cast<int>(state.range(0)));
  const QTable table = QTable::build(s, AngleGrid::unbiased(s));
  const auto lambdas = LambdaWeights::uniform(s);
  const Vec3 n = Vec3(1.0, 2.0, -0.5).normalized();
  for (auto _ : state) benchmark::DoNotOptimize(device_loss_by_states(table, lambdas, n));
}
BENCHMARK(BM_DeviceLossByStates)->Arg(3)->Arg(8);

static void BM_OuterSearch(benchmark::State& state) {
  const SpinValue s(static_cast<int>(state.range(0)));
  OuterOptions options;
  options.tol = 1e-8;
  for (auto _ : state) benchmark::DoNotOptimize(outer_search(s, options));
}
BENCHMARK(BM_OuterSearch)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_RelativeEntropy(benchmark::State& state) {
  const ProbVector p({0.2, 0.3, 0.1, 0.4});
  const ProbVector q({0.25, 0.25, 0.25, 0.25});
  for (auto _ : state) benchmark::DoNotOptimize(relative_entropy(p, q));
}
BENCHMARK(BM_RelativeEntropy);

BENCHMARK_MAIN();
