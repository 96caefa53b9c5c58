#pragma once

#include <cstdint>
#include <vector>

#include "hmmforge/hmm.hpp"
#include "hmmforge/symbolizer.hpp"

namespace hmmforge {

struct SynthConfig {
  std::size_t states = 3;
  std::size_t symbols = 2;
  double min_p = 0.05;
  /// Every pair of states differs by at least this much in some symbol's probability.
  double min_separation = 0.1;
  std::uint64_t seed = 0;
};

/// Throws InvalidArgument when the constraints cannot be met (including
/// symbols * min_p > 1: every state emits every symbol).
void check(const SynthConfig& cfg);

/// Symbols "a", "b", ... for small alphabets, "s0", "s1", ... beyond 26.
Alphabet synthetic_alphabet(std::size_t symbols);

/// Random irreducible model whose state is a function of the last k symbols
/// (k = smallest with symbols^k >= states), obtained by folding the order-k
/// de Bruijn graph. Deterministic in cfg.
DeterministicHmm random_definite_model(const SynthConfig& cfg);

/// Sets p(s, x) to `p` and rescales the state's other transitions so the row
/// still sums to 1. Throws InvalidArgument when impossible.
DeterministicHmm perturb_transition(const DeterministicHmm& model, StateId s, SymbolId x, double p);

/// Event times whose gaps encode the symbols: gap for symbol i is drawn
/// uniformly from [i + 0.1, i + 0.9) seconds. Starts at 0.
std::vector<double> symbol_timestamps(const SymbolSequence& seq, std::uint64_t seed);

/// Delta bins that map symbol_timestamps output back to the symbol ids
/// (edges at 1, 2, ..., k-1).
SymbolizerSpec symbol_timestamp_spec(std::size_t symbol_count);

}  // namespace hmmforge
