#include <benchmark/benchmark.h>

#include <random>

#include "xorsat/gf2.hpp"
#include "xorsat/grover.hpp"
#include "xorsat/instance.hpp"
#include "xorsat/reduction.hpp"
#include "xorsat/solvers.hpp"

namespace {

using namespace xorsat;

Instance locked(std::size_t n, double alpha, std::uint64_t seed) {
  return gen_locked_random(n, static_cast<std::size_t>(alpha * static_cast<double>(n)), 3, 1, 0.5, seed);
}

// First parity-feasible sample at or after `seed`.
std::pair<Instance, Reduction> feasible_locked(std::size_t n, double alpha, std::uint64_t seed) {
  for (;; ++seed) {
    Instance inst = locked(n, alpha, seed);
    ReduceResult rr = reduce(inst);
    if (auto* r = std::get_if<Reduction>(&rr)) {
      return {std::move(inst), std::move(*r)};
    }
  }
}

void BM_Rank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const LinearSystem sys = build_linear_system(locked(n, 1.0, 1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rank(sys.a));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Rank)->RangeMultiplier(2)->Range(32, 1024)->Complexity();

void BM_Reduce(benchmark::State& state) {
  const Instance inst = locked(static_cast<std::size_t>(state.range(0)), 0.9, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduce(inst));
  }
}
BENCHMARK(BM_Reduce)->RangeMultiplier(2)->Range(32, 512);

void BM_BacktrackCount(benchmark::State& state) {
  const auto [inst, r] = feasible_locked(static_cast<std::size_t>(state.range(0)), 0.789, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(backtrack_count(inst, r));
  }
}
BENCHMARK(BM_BacktrackCount)->DenseRange(15, 30, 3);

void BM_OptimizePermutation(benchmark::State& state) {
  const auto [inst, r] = feasible_locked(static_cast<std::size_t>(state.range(0)), 0.789, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_permutation(inst, r, 100, 1));
  }
}
BENCHMARK(BM_OptimizePermutation)->Arg(24)->Arg(48);

void BM_GroverIterate(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const std::vector<std::uint64_t> marked{1};
  const PhaseOracle oracle = PhaseOracle::from_marked(k, marked);
  StateVector s = StateVector::uniform(k);
  for (auto _ : state) {
    grover_iterate(oracle, s);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
}
BENCHMARK(BM_GroverIterate)->DenseRange(10, 20, 2);

}  // namespace

BENCHMARK_MAIN();
