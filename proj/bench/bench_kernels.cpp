// Serial reference versus OpenMP kernels.

#include <vector>

#include <benchmark/benchmark.h>

#include "spinrsc/chain.hpp"
#include "spinrsc/kernels.hpp"
#include "spinrsc/optimize.hpp"
#include "spinrsc/oracle.hpp"
#include "spinrsc/rsc.hpp"

namespace {

using namespace spinrsc;

Execution exec_of(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_ScanObjective(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const AmplitudeEvaluator eval(decompose_chain({CouplingKind::AllNode, n}));
  const std::size_t count = static_cast<std::size_t>(4 * n / 0.05) + 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::scan_objective(eval, Objective::LamPlusSq, 0.05, count, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(count));
}
BENCHMARK(BM_ScanObjective)->ArgsProduct({{20, 109, 200}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  const std::vector<SweepModel> models{SweepModel::NN, SweepModel::AllNodeNoV, SweepModel::AllNodeWithV};
  TimeSearchOptions options;
  options.exec = exec_of(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep(4, static_cast<int>(state.range(0)), models, options));
  }
}
BENCHMARK(BM_Sweep)->ArgsProduct({{40}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_RegionGrid(benchmark::State& state) {
  const auto spec = decompose_chain({CouplingKind::AllNode, 109});
  const auto protocol = optimize_protocol(spec, CouplingKind::AllNode, true);
  const double step = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(region_grid(protocol, step, exec_of(state)));
  }
}
BENCHMARK(BM_RegionGrid)->ArgsProduct({{10, 100}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_SampleMaxTransfer(benchmark::State& state) {
  const auto p = amplitude_matrix(decompose_chain({CouplingKind::AllNode, 20}), 21.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        oracle::sample_max_transfer(p, oracle::SampleMode::ExtReceiverNorm, state.range(0), 7, exec_of(state)));
  }
}
BENCHMARK(BM_SampleMaxTransfer)->ArgsProduct({{100000}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
