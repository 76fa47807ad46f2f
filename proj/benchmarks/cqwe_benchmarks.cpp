#include <benchmark/benchmark.h>

#include "cqwe/experiments.hpp"
#include "cqwe/recovery.hpp"
#include "cqwe/sensor.hpp"
#include "cqwe/transform.hpp"

namespace {

using namespace cqwe;

void BM_ApplyDst(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DstMatrix dst(n);
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(n - 1, -1.0, 1.0);
  const Waveform wf(x, TimeGrid{n, reference::kTimeStep});
  for (auto _ : state) benchmark::DoNotOptimize(apply_dst(dst, wf));
}
BENCHMARK(BM_ApplyDst)->Arg(16)->Arg(100)->Arg(400);

void BM_FistaSolve(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Waveform truth = reference_one_pulse(PulsePlacement::kOffset);
  const DstMatrix dst(truth.grid.n_grid);
  const Eigen::MatrixXd rows = subsample_rows(dst, random_subsample(truth.grid.n_grid, m, 1));
  const LassoProblem problem{rows, rows * truth.samples, kDefaultLambdaHz};
  const FistaConfig config = FistaConfig::for_grid(truth.grid.n_grid);
  for (auto _ : state) benchmark::DoNotOptimize(fista_solve(problem, config));
}
BENCHMARK(BM_FistaSolve)->Arg(20)->Arg(60)->Arg(99)->Unit(benchmark::kMicrosecond);

void BM_SimulateShot(benchmark::State& state) {
  const Waveform wf = reference_one_pulse(PulsePlacement::kOffset);
  const NoiseModel noise = NoiseModel::reference(3);
  std::uint64_t shot = 0;
  for (auto _ : state) benchmark::DoNotOptimize(measure_sine_coefficient(wf, 51, noise, shot++));
}
BENCHMARK(BM_SimulateShot)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
