#include <benchmark/benchmark.h>

#include "hmmforge/inference.hpp"
#include "hmmforge/sampling.hpp"
#include "hmmforge/synthesis.hpp"

namespace {

using namespace hmmforge;

SymbolSequence sample(std::size_t n) {
  SynthConfig c;
  c.states = 5;
  c.symbols = 3;
  c.seed = 3;
  return generate(random_definite_model(c), n, 11);
}

void BM_BuildCandidate(benchmark::State& state) {
  const auto seq = sample(100'000);
  const auto window = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_candidate(seq, window, 5));
}
BENCHMARK(BM_BuildCandidate)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_Merge(benchmark::State& state) {
  const auto cand = build_candidate(sample(100'000), static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(merge_equivalent_states(cand, 0.05));
}
BENCHMARK(BM_Merge)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_Infer(benchmark::State& state) {
  const auto seq = sample(static_cast<std::size_t>(state.range(0)));
  InferenceConfig cfg;
  cfg.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(infer(seq, cfg));
}
BENCHMARK(BM_Infer)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace
