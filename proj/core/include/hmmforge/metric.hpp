#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hmmforge/hmm.hpp"
#include "hmmforge/stats.hpp"

namespace hmmforge {

/// Smallest D such that every transition (s, p) expects at least 10
/// traversals (D pi_s p >= 10) and at least 10 non-traversals
/// (D pi_s (1 - p) >= 10, waived for p = 1). Throws NotIrreducible.
std::uint64_t required_length_clt(const DeterministicHmm& model, double alpha = 0.05);

inline constexpr double kCltMinExpected = 10.0;

inline constexpr std::size_t kMaxEquivalenceLength = 1'000'000;

enum class Correction {
  /// Per-state tests at alpha / (states of both models): family-wise level alpha.
  Bonferroni,
  /// Every per-state test at alpha.
  None,
};

struct EquivalenceOptions {
  double alpha = 0.05;
  std::uint64_t seed = 0;
  /// Lower bound on the generated length; the CLT requirement of both models
  /// applies regardless.
  std::optional<std::size_t> length;
  Correction correction = Correction::Bonferroni;
  /// Upper bound on the generated length; longer requirements are clamped and flagged.
  std::size_t max_length = kMaxEquivalenceLength;
};

struct StateTest {
  std::string state;
  std::uint64_t visits = 0;
  stats::ChiSquaredResult test;
};

/// One direction: sample from `source`, follow the sample through `target`,
/// test the target's outgoing distributions.
struct DirectionResult {
  std::optional<std::size_t> broken_at;
  std::vector<StateTest> tests;
  bool equivalent = false;
};

struct EquivalenceResult {
  bool equivalent = false;
  std::size_t length = 0;
  /// The CLT requirement exceeded max_length.
  bool length_capped = false;
  double per_test_alpha = 0.0;
  DirectionResult forward;   // generated by g1, traced through g2
  DirectionResult backward;  // generated by g2, traced through g1
};

/// Statistical equivalence, tested in both directions. Symmetric in (g1, g2)
/// and invariant to state relabeling: both models are canonicalised and each
/// direction's seed is derived from the options seed and the canonical digests.
/// Throws AlphabetMismatch, NotIrreducible.
EquivalenceResult equivalent(const DeterministicHmm& g1, const DeterministicHmm& g2,
                             const EquivalenceOptions& options = {});

struct PruneStages {
  DeterministicHmm removed;    // transitions with p <= pth dropped; probabilities untouched
  std::vector<std::vector<std::string>> absorbing;  // states dropped per removal round
  DeterministicHmm trimmed;    // absorbing states removed, restricted to the largest SCC
  std::optional<DeterministicHmm> result;  // renormalised; absent if nothing survives
};

/// Prunes every transition with p <= pth, repeatedly removes states left
/// without outgoing transitions, keeps the largest strongly connected
/// component, and renormalises each row.
std::optional<DeterministicHmm> prune(const DeterministicHmm& model, double pth);
PruneStages prune_staged(const DeterministicHmm& model, double pth);

struct PruneStep {
  double pth = 0.0;
  bool equivalent = false;
  bool first_present = false;
  bool second_present = false;
  std::size_t length = 0;
};

struct DistanceResult {
  double distance = 1.0;
  double alpha = 0.05;
  std::size_t sequence_length = 0;
  std::vector<PruneStep> steps;
  /// Both sub-models vanished at the same threshold.
  bool degenerate = false;
  /// No threshold produced equivalent sub-models.
  bool maximal = false;
};

/// Smallest pruning threshold, drawn from {0} and the transition probabilities
/// of both models, at which the pruned sub-models test equivalent.
DistanceResult distance(const DeterministicHmm& g1, const DeterministicHmm& g2,
                        const EquivalenceOptions& options = {});

}  // namespace hmmforge
