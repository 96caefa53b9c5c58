#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hmmforge/hmm.hpp"

namespace hmmforge {

struct ConfidenceConfig {
  double epsilon = 0.05;
  double alpha = 0.05;
  /// n* = ceil(ln alpha / ln(1 - gamma)) instead of the normal approximation.
  bool exact_binomial = false;
  /// States with epsilon / pi >= 1 cannot hide a transition of joint
  /// probability epsilon; when set they are reported as vacuously sufficient
  /// instead of raising GammaOutOfRange.
  bool allow_vacuous = false;
};

void check(const ConfidenceConfig& cfg);

enum class Verdict { Sufficient, NeedMoreData };
std::string_view to_string(Verdict v) noexcept;

struct StateConfidence {
  std::string state;
  double pi = 0.0;
  double gamma = 0.0;  // epsilon / pi
  std::optional<std::uint64_t> visits;
  std::optional<double> z_statistic;
  std::uint64_t required_visits = 0;
  bool sufficient = false;
  /// gamma >= 1 (only with allow_vacuous).
  bool vacuous = false;
};

/// Per-state test of H0: an unseen transition has probability gamma_s, against
/// H1: it is smaller. The unseen transition's sample mean is identically 0, so
/// the statistic is gamma_s standardised by sqrt(gamma_s (1 - gamma_s) / n_s);
/// rejecting H0 (statistic >= z_{1-alpha}) means enough data was seen.
struct ConfidenceReport {
  std::vector<StateConfidence> states;
  double x_bar_unobserved = 0.0;
  double z_critical = 0.0;
  std::uint64_t required_length = 0;
  Verdict verdict = Verdict::NeedMoreData;
  bool exact_binomial = false;
  std::optional<std::size_t> trace_broken_at;
  std::string note;
};

/// Smallest n with z(n) >= z_{1-alpha}: ceil(z^2 (1 - gamma) / gamma).
std::uint64_t required_visits_normal(double gamma, double alpha);
/// ceil(ln alpha / ln(1 - gamma)).
std::uint64_t required_visits_exact(double gamma, double alpha);

/// Prospective bounds (visits absent). Throws GammaOutOfRange naming every
/// state with epsilon / pi_s >= 1, NotIrreducible.
ConfidenceReport required_samples(const DeterministicHmm& model, const ConfidenceConfig& cfg);

/// Bounds plus per-state visit counts from tracing `seq` through `model`.
ConfidenceReport assess_confidence(const DeterministicHmm& model, const SymbolSequence& seq,
                                   const ConfidenceConfig& cfg);

struct InferenceConfig;

struct OnlineCheck {
  std::optional<DeterministicHmm> model;
  ConfidenceReport report;
};

/// Infers a model from `seq` and assesses it against the same data. Never
/// throws for data-dependent outcomes: failures become NeedMoreData.
OnlineCheck online_confidence_check(const SymbolSequence& seq, const ConfidenceConfig& cfg,
                                    const InferenceConfig& infer_cfg);

}  // namespace hmmforge
