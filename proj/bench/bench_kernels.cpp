// OpenMP kernels against their serial reference counterparts. The two paths
// are bit-identical (asserted in the unit tests); this target measures what
// the parallel versions buy.

#include <benchmark/benchmark.h>

#include <cstddef>

#include "linform/distributions.hpp"
#include "linform/ecf.hpp"
#include "linform/fixpoint.hpp"
#include "linform/grid.hpp"
#include "linform/linear_forms.hpp"

namespace {

using namespace linform;

void BM_SampleParallel(benchmark::State& state) {
  const DistributionSpec spec = sech_squared(1.0);
  const std::size_t n = std::size_t(state.range(0));
  for (auto _ : state) {
    SampleBatch batch = sample(spec, n, 7);
    benchmark::DoNotOptimize(batch.values.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(n));
}

void BM_SampleSerial(benchmark::State& state) {
  const DistributionSpec spec = sech_squared(1.0);
  const std::size_t n = std::size_t(state.range(0));
  for (auto _ : state) {
    SampleBatch batch = serial::sample(spec, n, 7);
    benchmark::DoNotOptimize(batch.values.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(n));
}

void BM_EcfParallel(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  const SampleBatch batch = sample(uniform_sym(1.0), n, 11);
  const Grid grid = Grid::make_dyadic(8.0, 8);
  for (auto _ : state) {
    ECFEstimate estimate = ecf(batch, grid, false);
    benchmark::DoNotOptimize(estimate.values.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(n * grid.size()));
}

void BM_EcfSerial(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  const SampleBatch batch = sample(uniform_sym(1.0), n, 11);
  const Grid grid = Grid::make_dyadic(8.0, 8);
  for (auto _ : state) {
    ECFEstimate estimate = serial::ecf(batch, grid, false);
    benchmark::DoNotOptimize(estimate.values.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(n * grid.size()));
}

void BM_JointEcfParallel(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  const PairBatch pairs = sample_independence_pair(two_point(1.0), n, 13);
  const Grid grid = Grid::make_dyadic(4.0, 5);
  for (auto _ : state) {
    JointEcf joint = joint_ecf(pairs, grid, grid);
    benchmark::DoNotOptimize(joint.values.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(n * grid.size() * grid.size()));
}

void BM_JointEcfSerial(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  const PairBatch pairs = sample_independence_pair(two_point(1.0), n, 13);
  const Grid grid = Grid::make_dyadic(4.0, 5);
  for (auto _ : state) {
    JointEcf joint = serial::joint_ecf(pairs, grid, grid);
    benchmark::DoNotOptimize(joint.values.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(n * grid.size() * grid.size()));
}

void BM_SolveParallel(benchmark::State& state) {
  FixpointConfig config;
  config.depth = int(state.range(0));
  for (auto _ : state) {
    GridFunction k = solve_by_doubling(config, -1.0);
    benchmark::DoNotOptimize(k.values.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * (int64_t(1) << config.depth));
}

void BM_SolveSerial(benchmark::State& state) {
  FixpointConfig config;
  config.depth = int(state.range(0));
  for (auto _ : state) {
    GridFunction k = serial::solve_by_doubling(config, -1.0);
    benchmark::DoNotOptimize(k.values.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * (int64_t(1) << config.depth));
}

BENCHMARK(BM_SampleParallel)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_SampleSerial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_EcfParallel)->Arg(1 << 14)->Arg(1 << 17);
BENCHMARK(BM_EcfSerial)->Arg(1 << 14)->Arg(1 << 17);
BENCHMARK(BM_JointEcfParallel)->Arg(1 << 14);
BENCHMARK(BM_JointEcfSerial)->Arg(1 << 14);
BENCHMARK(BM_SolveParallel)->Arg(16)->Arg(20);
BENCHMARK(BM_SolveSerial)->Arg(16)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
