#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hmmforge/hmm.hpp"
#include "hmmforge/stationary.hpp"

namespace hmmforge {

/// Draws `length` symbols. Without a start state the first uniform draw picks
/// one from the stationary distribution (throws NotIrreducible if undefined).
SymbolSequence generate(const DeterministicHmm& model, std::size_t length, std::uint64_t seed,
                        std::optional<StateId> start = std::nullopt);

struct TraceCounts {
  /// Symbols consumed while in each state.
  std::vector<std::uint64_t> visits;
  /// Flattened (state, symbol) -> traversals; use count().
  std::vector<std::uint64_t> transition_counts;
  std::size_t alphabet_size = 0;
  /// Position of the first symbol the model could not follow.
  std::optional<std::size_t> broken_at;
  StateId start = 0;
  StateId end = 0;
  /// True when the start state was chosen by synchronization.
  bool synchronized = false;

  std::uint64_t count(StateId s, SymbolId x) const {
    return transition_counts[static_cast<std::size_t>(s) * alphabet_size + x];
  }
  std::uint64_t total_visits() const;
  /// Number of symbols successfully followed.
  std::size_t consumed() const;
};

/// Follows `seq` through the model. Without a start state every state is tried
/// and the first (in state order) that follows the longest prefix wins.
/// Throws AlphabetMismatch.
TraceCounts trace(const DeterministicHmm& model, const SymbolSequence& seq,
                  std::optional<StateId> start = std::nullopt);

/// Start state chosen by the longest-prefix synchronization rule, with the
/// length of that prefix.
std::pair<StateId, std::size_t> synchronize(const DeterministicHmm& model, const SymbolSequence& seq);

}  // namespace hmmforge
