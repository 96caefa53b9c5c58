#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hmmforge/alphabet.hpp"

namespace hmmforge {

/// Row-sum tolerance for the stochastic-matrix invariant.
inline constexpr double kRowSumTolerance = 1e-9;

struct Transition {
  StateId from = 0;
  SymbolId symbol = 0;
  StateId to = 0;
  double p = 0.0;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Deterministic HMM: a single random process over transitions, each labelled
/// with the emitted symbol. (state, symbol) determines the next state.
///
/// Immutable after construction. The constructor only enforces what the
/// representation needs (known alphabet, distinct state labels, source states in
/// range); the probabilistic invariants are checked by validate() so that
/// malformed models can be inspected rather than rejected outright.
class DeterministicHmm {
 public:
  DeterministicHmm() = default;
  DeterministicHmm(Alphabet alphabet, std::vector<std::string> states,
                   std::vector<Transition> transitions);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return states_.size(); }
  const std::vector<std::string>& states() const noexcept { return states_; }
  const std::string& state_label(StateId s) const { return states_.at(s); }
  std::optional<StateId> find_state(std::string_view label) const;

  /// All transitions ordered by (from, symbol), duplicates preserved.
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }
  std::span<const Transition> outgoing(StateId s) const;
  /// First transition on (s, x); nullptr when absent.
  const Transition* next(StateId s, SymbolId x) const;

 private:
  Alphabet alphabet_;
  std::vector<std::string> states_;
  std::vector<Transition> transitions_;
  std::vector<std::size_t> row_begin_;  // size states_+1, offsets into transitions_
  std::vector<int> table_;              // state * |alphabet| + symbol -> transition index or -1
};

enum class ViolationKind { RowSum, Determinism, ProbabilityRange, DanglingTarget, EmptyModel };

struct Violation {
  ViolationKind kind;
  std::optional<StateId> state;
  std::optional<SymbolId> symbol;
  std::string message;
};

std::string_view to_string(ViolationKind kind) noexcept;

/// Empty iff every model invariant holds.
std::vector<Violation> validate(const DeterministicHmm& model);
/// Throws InvalidModel carrying the first violation.
void require_valid(const DeterministicHmm& model);

/// Single strongly connected component covering every state, and every state
/// has at least one outgoing transition.
bool is_irreducible(const DeterministicHmm& model);
void require_irreducible(const DeterministicHmm& model);

}  // namespace hmmforge

#include "hmmforge/graph.hpp"

namespace hmmforge {

/// Successor lists over positive-probability transitions (dangling targets skipped).
graph::Adjacency transition_graph(const DeterministicHmm& model);

}  // namespace hmmforge
