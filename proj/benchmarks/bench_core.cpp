#include <benchmark/benchmark.h>

#include "hmmforge/detection.hpp"
#include "hmmforge/sampling.hpp"
#include "hmmforge/stationary.hpp"
#include "hmmforge/symbolizer.hpp"
#include "hmmforge/synthesis.hpp"

namespace {

using namespace hmmforge;

DeterministicHmm model(std::size_t states, std::size_t symbols) {
  SynthConfig c;
  c.states = states;
  c.symbols = symbols;
  c.min_separation = 0.0;
  c.seed = 1;
  return random_definite_model(c);
}

void BM_Stationary(benchmark::State& state) {
  const auto m = model(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(stationary_distribution(m));
}
BENCHMARK(BM_Stationary)->Arg(4)->Arg(16)->Arg(64)->Arg(128);

void BM_Generate(benchmark::State& state) {
  const auto m = model(5, 3);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate(m, n, 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Generate)->Arg(10'000)->Arg(1'000'000);

void BM_Trace(benchmark::State& state) {
  const auto m = model(5, 3);
  const auto seq = generate(m, static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(trace(m, seq));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Trace)->Arg(10'000)->Arg(1'000'000);

void BM_Detect(benchmark::State& state) {
  const auto m = model(5, 3);
  const auto seq = generate(m, 10'000, 7);
  DetectionConfig cfg;
  cfg.method = state.range(0) == 0 ? DetectionMethod::TransitionCI : DetectionMethod::StateCI;
  for (auto _ : state) benchmark::DoNotOptimize(detect(m, seq, cfg));
}
BENCHMARK(BM_Detect)->Arg(0)->Arg(1);

void BM_Symbolize(benchmark::State& state) {
  std::vector<double> raw(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = static_cast<double>((i * 2654435761u) % 1000);
  for (auto _ : state) {
    const auto spec = fit_quantile_bins(raw, 8);
    benchmark::DoNotOptimize(symbolize(spec, raw));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Symbolize)->Arg(100'000);

}  // namespace
