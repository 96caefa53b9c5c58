#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hmmforge/confidence.hpp"
#include "hmmforge/hmm.hpp"
#include "hmmforge/metric.hpp"

namespace hmmforge {

struct InferenceConfig {
  double alpha = 0.05;
  std::size_t max_l = 6;
  std::uint64_t min_count = 5;
  /// Seed of the equivalence tests between successive window lengths.
  std::uint64_t seed = 0;
  Correction correction = Correction::Bonferroni;
  /// When set, the returned model is assessed against the training data.
  std::optional<ConfidenceConfig> confidence;
};

void check(const InferenceConfig& cfg);

/// History-window model. States are labelled by their (representative)
/// length-L history; counts are kept so merging can re-estimate.
struct CandidateModel {
  std::size_t window = 0;
  DeterministicHmm model;
  /// count(h.*) for every length-L history observed, kept or not.
  std::map<std::string, std::uint64_t> history_counts;
  /// Kept transition counts, [state][symbol].
  std::vector<std::vector<std::uint64_t>> symbol_counts;
  /// Histories folded into each state.
  std::vector<std::vector<std::string>> members;
  std::size_t merges = 0;
};

/// Label of a history: tokens concatenated for single-character alphabets,
/// joined with '.' otherwise.
std::string history_label(const Alphabet& alphabet, std::span<const SymbolId> history);

/// States are the length-L histories seen at least `min_count` times (followed
/// by a symbol). On symbol x, history h moves to the length-L suffix of h.x
/// with probability count(h.x) / count(h.*), where transitions into dropped
/// histories are removed from the denominator. Only the largest strongly
/// connected component is retained. Throws InsufficientData.
CandidateModel build_candidate(const SymbolSequence& seq, std::size_t window, std::uint64_t min_count);

/// Greedy merging: scan pairs (i, j), i < j, in index order; merge the first
/// pair whose outgoing symbol counts pass the chi-squared homogeneity test at
/// `alpha` and whose successor pairs (same symbol strings) pass as well; fold;
/// restart. Ends when no pair is eligible.
CandidateModel merge_equivalent_states(CandidateModel cand, double alpha);

struct StabilizationOptions {
  double alpha = 0.05;
  std::uint64_t seed = 0;
  std::size_t length = 0;
  Correction correction = Correction::Bonferroni;
};

struct StabilizationResult {
  bool equivalent = false;
  bool isomorphic = false;
  double per_test_alpha = 0.0;
  std::size_t tests = 0;
  std::size_t rejections = 0;
  /// Generated symbols the other candidate could not follow (rare histories it dropped).
  std::size_t skipped = 0;
};

/// Whether two window levels describe the same process. Each candidate
/// generates `length` symbols that are traced through the other; per visited
/// state, the traced counts are compared with the counts that state was
/// estimated from (two-sample homogeneity), so estimation noise in either
/// model is accounted for. Exact isomorphism short-circuits.
StabilizationResult levels_equivalent(const CandidateModel& a, const CandidateModel& b,
                                      const StabilizationOptions& options);

struct WindowSummary {
  std::size_t window = 0;
  std::size_t candidate_states = 0;
  std::size_t merged_states = 0;
  std::size_t merges = 0;
  /// Whether this level tested equivalent to the next one (absent when the
  /// next level was not built).
  std::optional<bool> equivalent_to_next;
};

struct InferenceResult {
  DeterministicHmm model;
  std::size_t window = 0;
  bool stabilized = false;
  std::vector<WindowSummary> levels;
  std::optional<ConfidenceReport> confidence;
};

/// Grows the window from 1 until the merged models for L and L+1 are
/// equivalent and returns the model for L; at max_l the last model is returned
/// with `stabilized` false. Throws InsufficientData when no window-1 model can
/// be built.
InferenceResult infer(const SymbolSequence& seq, const InferenceConfig& cfg = {});

}  // namespace hmmforge
