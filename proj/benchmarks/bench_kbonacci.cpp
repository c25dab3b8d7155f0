#include <benchmark/benchmark.h>

#include "kbonacci/analysis.hpp"
#include "kbonacci/binet.hpp"
#include "kbonacci/charpoly.hpp"
#include "kbonacci/exact.hpp"

namespace {

void BM_Recurrence(benchmark::State& state) {
  const long k = 5;
  const long n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(kstep::kbonacci(k, n));
}
BENCHMARK(BM_Recurrence)->RangeMultiplier(4)->Range(64, 16384);

void BM_CompanionMatrix(benchmark::State& state) {
  const long k = 5;
  const long n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(kstep::kbonacci_matrix(k, n));
}
BENCHMARK(BM_CompanionMatrix)->RangeMultiplier(4)->Range(64, 16384);

void BM_BinetRound(benchmark::State& state) {
  const long k = 5;
  const long n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(kstep::binet_round(k, n));
}
BENCHMARK(BM_BinetRound)->RangeMultiplier(4)->Range(64, 16384);

void BM_DominantRoot(benchmark::State& state) {
  const long bits = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(kstep::dominant_root(8, bits));
}
BENCHMARK(BM_DominantRoot)->RangeMultiplier(4)->Range(64, 16384);

void BM_AllRoots(benchmark::State& state) {
  const long k = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(kstep::all_roots(k, 128));
}
BENCHMARK(BM_AllRoots)->RangeMultiplier(2)->Range(2, 64);

void BM_ErrorTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kstep::error_table(6, -4, state.range(0), 64));
}
BENCHMARK(BM_ErrorTable)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
