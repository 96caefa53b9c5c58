#include <benchmark/benchmark.h>

#include "hmmforge/metric.hpp"
#include "hmmforge/synthesis.hpp"

namespace {

using namespace hmmforge;

DeterministicHmm model(std::uint64_t seed) {
  SynthConfig c;
  c.states = 4;
  c.symbols = 3;
  c.seed = seed;
  return random_definite_model(c);
}

void BM_Equivalent(benchmark::State& state) {
  const auto a = model(1);
  EquivalenceOptions o;
  o.seed = 2;
  for (auto _ : state) benchmark::DoNotOptimize(equivalent(a, a, o));
}
BENCHMARK(BM_Equivalent)->Unit(benchmark::kMillisecond);

void BM_Distance(benchmark::State& state) {
  const auto a = model(1), b = model(2);
  EquivalenceOptions o;
  o.seed = 2;
  for (auto _ : state) benchmark::DoNotOptimize(distance(a, b, o));
}
BENCHMARK(BM_Distance)->Unit(benchmark::kMillisecond);

void BM_Prune(benchmark::State& state) {
  const auto a = model(1);
  for (auto _ : state) benchmark::DoNotOptimize(prune(a, 0.2));
}
BENCHMARK(BM_Prune);

}  // namespace
