#include <benchmark/benchmark.h>

#include "ballsat/covering_code.hpp"
#include "ballsat/csp.hpp"

using namespace ballsat;

namespace {

void BM_GreedyCode(benchmark::State& state) {
  const auto q = static_cast<unsigned>(state.range(0));
  const auto t = static_cast<unsigned>(state.range(1));
  const auto r = static_cast<unsigned>(state.range(2));
  std::size_t size = 0;
  for (auto _ : state) {
    auto c = greedy_code(q, t, r);
    size = c.size();
    benchmark::DoNotOptimize(c);
  }
  state.counters["size"] = static_cast<double>(size);
}

void BM_RandomCode(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(random_code(3, 6, 2, 81, seed++));
}

void BM_VerifyCover(benchmark::State& state) {
  CoveringCode c = greedy_code(3, 8, 3);
  for (auto _ : state) benchmark::DoNotOptimize(verify_cover(c));
}

void BM_TwoBoxCover(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(greedy_box_block(3, static_cast<unsigned>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_GreedyCode)->Args({3, 6, 2})->Args({2, 12, 3})->Args({4, 8, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RandomCode)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyCover)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TwoBoxCover)->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);
