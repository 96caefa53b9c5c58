#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hmmforge/hmm.hpp"

namespace hmmforge {

enum class DetectionMethod { TransitionCI, StateCI };
enum class IntervalKind { Wald, Wilson };

std::string_view to_string(DetectionMethod m) noexcept;
std::string_view to_string(IntervalKind k) noexcept;
/// Accepts "transition-ci" / "state-ci"; throws InvalidArgument.
DetectionMethod detection_method_from_string(std::string_view s);
/// Accepts "wald" / "wilson"; throws InvalidArgument.
IntervalKind interval_kind_from_string(std::string_view s);

struct DetectionConfig {
  DetectionMethod method = DetectionMethod::TransitionCI;
  double ci_alpha = 0.05;
  double threshold = 0.8;
  IntervalKind interval = IntervalKind::Wald;
  /// Known start state label; synchronization is used when absent.
  std::optional<std::string> start_state;
};

void check(const DetectionConfig& cfg);

/// Traces shorter than this before breaking are rejected outright.
inline constexpr std::size_t kMinTracedSymbols = 10;

struct DetectionItem {
  std::string item;
  double model_value = 0.0;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t trials = 0;
  bool matched = false;
};

struct DetectionReport {
  DetectionMethod method = DetectionMethod::TransitionCI;
  std::size_t matched = 0;
  std::size_t total = 0;
  double proportion = 0.0;
  double threshold = 0.0;
  bool accept = false;
  std::optional<std::size_t> broken_at;
  std::size_t traced_symbols = 0;
  bool synchronized = false;
  std::vector<DetectionItem> items;
};

/// Per model transition, p^ = traversals / visits of its source with a
/// two-sided CI; matched when the model probability lies inside.
DetectionReport detect_transition_ci(const DeterministicHmm& model, const SymbolSequence& seq,
                                     const DetectionConfig& cfg);
/// Per state, occupancy q^ = visits / total visits with a CI; matched when the
/// stationary probability lies inside.
DetectionReport detect_state_ci(const DeterministicHmm& model, const SymbolSequence& seq, const DetectionConfig& cfg);
/// Dispatches on cfg.method.
DetectionReport detect(const DeterministicHmm& model, const SymbolSequence& seq, const DetectionConfig& cfg);

struct RocPoint {
  double threshold = 0.0;
  double tpr = 0.0;
  double fpr = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;
  double optimal_threshold = 0.0;
  double optimal_distance = 0.0;
  std::vector<double> positive_scores;
  std::vector<double> negative_scores;
};

/// Thresholds k/100, k = 0..100.
inline constexpr int kRocSteps = 100;

/// Sweep over precomputed proportions. Throws EmptySet.
RocCurve roc_from_scores(std::vector<double> positives, std::vector<double> negatives);

RocCurve roc_optimal_threshold(const DeterministicHmm& model, const std::vector<SymbolSequence>& positives,
                               const std::vector<SymbolSequence>& negatives, const DetectionConfig& cfg);

}  // namespace hmmforge
