#include <benchmark/benchmark.h>

#include "ballsat/ball_search.hpp"
#include "ballsat/bench.hpp"
#include "ballsat/sat_solver.hpp"

using namespace ballsat;

namespace {

// Planted 3-CNF at density 4.2 with the start r flips away.
PlantedInstance instance(unsigned r) { return gen_planted(3, 42, 176, 1000 + r, r); }

void BM_Searchball(benchmark::State& state) {
  const auto r = static_cast<unsigned>(state.range(0));
  const PlantedInstance inst = instance(r);
  BallSearcher s(inst.formula);
  std::uint64_t leaves = 0;
  for (auto _ : state) {
    auto o = s.searchball(inst.start, r);
    leaves = o.stats.leaves;
    benchmark::DoNotOptimize(o);
  }
  state.counters["leaves"] = static_cast<double>(leaves);
}

void BM_SearchballFast(benchmark::State& state) {
  const auto r = static_cast<unsigned>(state.range(0));
  const PlantedInstance inst = instance(r);
  const FastParams p = FastParams::make(3, 6);
  BallSearcher s(inst.formula);
  std::uint64_t leaves = 0;
  for (auto _ : state) {
    auto o = s.searchball_fast(inst.start, r, p);
    leaves = o.stats.leaves;
    benchmark::DoNotOptimize(o);
  }
  state.counters["leaves"] = static_cast<double>(leaves);
}

void BM_Walk(benchmark::State& state) {
  const auto r = static_cast<unsigned>(state.range(0));
  const PlantedInstance inst = instance(r);
  BallSearcher s(inst.formula);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto w = s.walk(inst.start, WalkParams::defaults_for(42, seed++));
    benchmark::DoNotOptimize(w);
  }
}

void BM_SolveDeterministic(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PlantedInstance inst = gen_planted(3, n, static_cast<std::size_t>(4.2 * n), 7);
  for (auto _ : state) benchmark::DoNotOptimize(solve_deterministic(inst.formula, {}));
}

}  // namespace

BENCHMARK(BM_Searchball)->DenseRange(4, 12, 4);
BENCHMARK(BM_SearchballFast)->DenseRange(4, 12, 4);
BENCHMARK(BM_Walk)->DenseRange(4, 12, 4);
BENCHMARK(BM_SolveDeterministic)->Arg(16)->Arg(24)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
