// Serial reference against the OpenMP path for the hot kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "fairex/levels.hpp"
#include "fairex/solver_continuous.hpp"
#include "fairex/verifier.hpp"

using namespace fairex;

namespace {

// Three-segment concave curves with integer-ish breakpoints.
Instance synthetic(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> slope(1, 32), gap(1, 40), cost(1, 16);
  std::vector<AgentSpec> agents;
  agents.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t a = slope(rng), b = slope(rng);
    if (a < b) std::swap(a, b);
    if (a == b) ++a;
    const std::int64_t t1 = gap(rng), t2 = t1 + gap(rng);
    agents.push_back(AgentSpec{static_cast<std::int64_t>(i + 1), Rational(cost(rng), 4),
                               BenefitFunction({{Rational(0), Rational(a, 4)},
                                                {Rational(t1), Rational(b, 4)},
                                                {Rational(t2), Rational(0)}})});
  }
  return Instance(std::move(agents));
}

Execution mode(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::serial : Execution::parallel;
}

void BM_SolveMax(benchmark::State& state) {
  const Instance inst = synthetic(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(solve_max(inst, mode(state)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveMax)->ArgsProduct({{500, 1000, 2000, 4000}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_PeelOnly(benchmark::State& state) {
  const Instance inst = synthetic(static_cast<std::size_t>(state.range(0)), 2);
  const auto tables = level_tables(inst, LevelKind::max);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::peel_smallest_level(tables, mode(state)));
}
BENCHMARK(BM_PeelOnly)->ArgsProduct({{1000, 4000}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_DeviationOracle(benchmark::State& state) {
  const Instance inst = synthetic(static_cast<std::size_t>(state.range(0)), 3);
  const CollectionProfile x = solve_max(inst).x;
  for (auto _ : state) benchmark::DoNotOptimize(deviation_oracle(inst, x, Rational(1, 2), mode(state)));
}
BENCHMARK(BM_DeviationOracle)->ArgsProduct({{8, 16}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_ParetoScan(benchmark::State& state) {
  const Instance inst = synthetic(3, 4);
  const CollectionProfile x = solve_max(inst).x;
  for (auto _ : state) benchmark::DoNotOptimize(pareto_scan(inst, x, Rational(2), mode(state)));
}
BENCHMARK(BM_ParetoScan)->ArgsProduct({{3}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
