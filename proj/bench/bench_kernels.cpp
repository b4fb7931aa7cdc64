// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cmath>

#include "subseries/kernels.hpp"
#include "subseries/series.hpp"
#include "subseries/subsequence.hpp"
#include "subseries/transforms.hpp"

using namespace subseries;

namespace {

const auto kHarmonic = MonotoneSeries::harmonic();
const auto kNoNine = Subsequence::digit_restricted({10, {9}});

void BM_SumSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::sum_range(kHarmonic, Index{1}, state.range(0)).value());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SumParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parallel::sum_range(kHarmonic, Index{1}, state.range(0)).value());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MonotoneSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::first_increase(kHarmonic, Index{1}, state.range(0)));
}

void BM_MonotoneParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parallel::first_increase(kHarmonic, Index{1}, state.range(0)));
}

void BM_CountingScanSerial(benchmark::State& state) {
  const auto f = [](Index n) { return static_cast<double>(kNoNine.counting(n)) / (double(n) * double(n)); };
  for (auto _ : state) benchmark::DoNotOptimize(serial::sum_range(f, Index{1}, state.range(0)).value());
}

void BM_CountingScanParallel(benchmark::State& state) {
  const auto f = [](Index n) { return static_cast<double>(kNoNine.counting(n)) / (double(n) * double(n)); };
  for (auto _ : state) benchmark::DoNotOptimize(parallel::sum_range(f, Index{1}, state.range(0)).value());
}

void BM_BlockSumsSerial(benchmark::State& state) {
  const auto blocks = block_partition(Subsequence::cubes(), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(serial::block_sums(kHarmonic, std::span<const Block>(blocks)));
}

void BM_BlockSumsParallel(benchmark::State& state) {
  const auto blocks = block_partition(Subsequence::cubes(), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(parallel::block_sums(kHarmonic, std::span<const Block>(blocks)));
}

}  // namespace

BENCHMARK(BM_SumSerial)->Arg(1 << 20)->Arg(1 << 24);
BENCHMARK(BM_SumParallel)->Arg(1 << 20)->Arg(1 << 24);
BENCHMARK(BM_MonotoneSerial)->Arg(1 << 22);
BENCHMARK(BM_MonotoneParallel)->Arg(1 << 22);
BENCHMARK(BM_CountingScanSerial)->Arg(1 << 20);
BENCHMARK(BM_CountingScanParallel)->Arg(1 << 20);
BENCHMARK(BM_BlockSumsSerial)->Arg(200);
BENCHMARK(BM_BlockSumsParallel)->Arg(200);

BENCHMARK_MAIN();
