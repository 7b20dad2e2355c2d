#include <benchmark/benchmark.h>

#include "kempner/engine.hpp"
#include "kempner/oracle.hpp"
#include "kempner/transfer.hpp"

using namespace kempner;

static void BM_AkBase2(benchmark::State& state) {
  const auto N = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(engine::a_k_base2(6, N, {128, 1}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AkBase2)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

static void BM_DkAccelerated(benchmark::State& state) {
  const Word w = Word::parse("11");
  const auto N = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(engine::d_k_accelerated(w, 2, N, {128, 1}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DkAccelerated)->Arg(1 << 14)->Arg(1 << 18)->Unit(benchmark::kMillisecond);

static void BM_UkBase3(benchmark::State& state) {
  std::uint64_t N = 1;
  for (int j = 0; j < state.range(0); ++j) N *= 3;
  for (auto _ : state) benchmark::DoNotOptimize(engine::u_k_base_b(3, 5, N - 1, {128, 1}));
}
BENCHMARK(BM_UkBase3)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

// Exact rational sum, for comparison with the certified float path.
static void BM_OraclePartialSum(benchmark::State& state) {
  const oracle::ClassQuery q{StatisticSpec::digit_sum(2), 6, static_cast<std::uint64_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(oracle::partial_sum_exact(q));
}
BENCHMARK(BM_OraclePartialSum)->Arg(1 << 12)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

static void BM_FindRoots(benchmark::State& state) {
  const auto p = transfer::corollary_polynomial(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(transfer::find_roots(p));
}
BENCHMARK(BM_FindRoots)->DenseRange(4, 12, 4);

BENCHMARK_MAIN();
