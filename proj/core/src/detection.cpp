#include "hmmforge/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "hmmforge/canonical.hpp"
#include "hmmforge/error.hpp"
#include "hmmforge/sampling.hpp"
#include "hmmforge/stationary.hpp"
#include "hmmforge/stats.hpp"

namespace hmmforge {

std::string_view to_string(DetectionMethod m) noexcept {
  return m == DetectionMethod::TransitionCI ? "transition-ci" : "state-ci";
}

std::string_view to_string(IntervalKind k) noexcept { return k == IntervalKind::Wald ? "wald" : "wilson"; }

DetectionMethod detection_method_from_string(std::string_view s) {
  if (s == "transition-ci" || s == "transitionCI") return DetectionMethod::TransitionCI;
  if (s == "state-ci" || s == "stateCI") return DetectionMethod::StateCI;
  throw Error(ErrorKind::InvalidArgument, fmt::format("unknown detection method '{}'", s));
}

IntervalKind interval_kind_from_string(std::string_view s) {
  if (s == "wald") return IntervalKind::Wald;
  if (s == "wilson") return IntervalKind::Wilson;
  throw Error(ErrorKind::InvalidArgument, fmt::format("unknown interval '{}'", s));
}

void check(const DetectionConfig& cfg) {
  if (!(cfg.ci_alpha > 0.0 && cfg.ci_alpha < 1.0)) throw Error(ErrorKind::InvalidArgument, "CI alpha must lie in (0, 1)");
  if (!(cfg.threshold >= 0.0 && cfg.threshold <= 1.0)) throw Error(ErrorKind::InvalidArgument, "threshold must lie in [0, 1]");
}

namespace {

struct Prepared {
  DeterministicHmm model;
  TraceCounts trace;
};

Prepared prepare(const DeterministicHmm& model, const SymbolSequence& seq, const DetectionConfig& cfg) {
  check(cfg);
  require_valid(model);
  if (!(seq.alphabet() == model.alphabet())) {
    throw Error(ErrorKind::AlphabetMismatch, "sequence alphabet differs from the model alphabet");
  }
  // Canonical order makes synchronization, and so the report, label-independent.
  Prepared p{canonical_form(model), {}};
  std::optional<StateId> start;
  if (cfg.start_state) {
    start = p.model.find_state(*cfg.start_state);
    if (!start) throw Error(ErrorKind::InvalidArgument, fmt::format("unknown start state '{}'", *cfg.start_state));
  }
  p.trace = trace(p.model, seq, start);
  return p;
}

stats::Interval interval(const DetectionConfig& cfg, std::uint64_t successes, std::uint64_t trials) {
  return cfg.interval == IntervalKind::Wald ? stats::wald_interval(successes, trials, cfg.ci_alpha)
                                            : stats::wilson_interval(successes, trials, cfg.ci_alpha);
}

void finish(DetectionReport& r, const DetectionConfig& cfg, const TraceCounts& tc) {
  r.threshold = cfg.threshold;
  r.broken_at = tc.broken_at;
  r.traced_symbols = tc.consumed();
  r.synchronized = tc.synchronized;
  r.total = r.items.size();
  r.matched = static_cast<std::size_t>(std::count_if(r.items.begin(), r.items.end(), [](const auto& i) { return i.matched; }));
  if (tc.broken_at && r.traced_symbols < kMinTracedSymbols) {
    r.proportion = 0.0;
    r.accept = false;
    return;
  }
  r.proportion = r.total ? static_cast<double>(r.matched) / static_cast<double>(r.total) : 0.0;
  r.accept = r.proportion >= cfg.threshold;
}

}  // namespace

DetectionReport detect_transition_ci(const DeterministicHmm& model, const SymbolSequence& seq,
                                     const DetectionConfig& cfg) {
  const auto p = prepare(model, seq, cfg);
  const auto& tc = p.trace;
  DetectionReport r;
  r.method = DetectionMethod::TransitionCI;
  for (const auto& t : p.model.transitions()) {
    DetectionItem item;
    item.item = fmt::format("{} -{}-> {}", p.model.state_label(t.from), p.model.alphabet().symbol(t.symbol),
                            p.model.state_label(t.to));
    item.model_value = t.p;
    item.trials = tc.visits[t.from];
    if (item.trials > 0) {
      const auto hits = tc.count(t.from, t.symbol);
      item.estimate = static_cast<double>(hits) / static_cast<double>(item.trials);
      const auto ci = interval(cfg, hits, item.trials);
      item.ci_low = ci.low;
      item.ci_high = ci.high;
      item.matched = ci.contains(t.p);
    }
    r.items.push_back(std::move(item));
  }
  finish(r, cfg, tc);
  return r;
}

DetectionReport detect_state_ci(const DeterministicHmm& model, const SymbolSequence& seq, const DetectionConfig& cfg) {
  const auto p = prepare(model, seq, cfg);
  const auto& tc = p.trace;
  const auto pi = stationary_distribution(p.model);
  const auto total = tc.total_visits();
  DetectionReport r;
  r.method = DetectionMethod::StateCI;
  for (StateId s = 0; s < p.model.state_count(); ++s) {
    DetectionItem item;
    item.item = p.model.state_label(s);
    item.model_value = pi[s];
    item.trials = total;
    if (total > 0) {
      item.estimate = static_cast<double>(tc.visits[s]) / static_cast<double>(total);
      const auto ci = interval(cfg, tc.visits[s], total);
      item.ci_low = ci.low;
      item.ci_high = ci.high;
      item.matched = ci.contains(pi[s]);
    }
    r.items.push_back(std::move(item));
  }
  finish(r, cfg, tc);
  return r;
}

DetectionReport detect(const DeterministicHmm& model, const SymbolSequence& seq, const DetectionConfig& cfg) {
  return cfg.method == DetectionMethod::TransitionCI ? detect_transition_ci(model, seq, cfg)
                                                     : detect_state_ci(model, seq, cfg);
}

RocCurve roc_from_scores(std::vector<double> positives, std::vector<double> negatives) {
  if (positives.empty() || negatives.empty()) {
    throw Error(ErrorKind::EmptySet, "ROC needs at least one positive and one negative sequence");
  }
  RocCurve roc;
  auto rate = [](const std::vector<double>& scores, double th) {
    const auto n = std::count_if(scores.begin(), scores.end(), [&](double s) { return s >= th; });
    return static_cast<double>(n) / static_cast<double>(scores.size());
  };
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= kRocSteps; ++k) {
    const double th = static_cast<double>(k) / kRocSteps;
    RocPoint pt{th, rate(positives, th), rate(negatives, th)};
    const double d = std::hypot(pt.fpr, 1.0 - pt.tpr);
    if (d <= best) {  // later (larger) thresholds win ties
      best = d;
      roc.optimal_threshold = th;
    }
    roc.points.push_back(pt);
  }
  roc.optimal_distance = best;
  roc.positive_scores = std::move(positives);
  roc.negative_scores = std::move(negatives);
  return roc;
}

RocCurve roc_optimal_threshold(const DeterministicHmm& model, const std::vector<SymbolSequence>& positives,
                               const std::vector<SymbolSequence>& negatives, const DetectionConfig& cfg) {
  if (positives.empty() || negatives.empty()) {
    throw Error(ErrorKind::EmptySet, "ROC needs at least one positive and one negative sequence");
  }
  auto scores = [&](const std::vector<SymbolSequence>& set) {
    std::vector<double> out;
    out.reserve(set.size());
    for (const auto& s : set) out.push_back(detect(model, s, cfg).proportion);
    return out;
  };
  return roc_from_scores(scores(positives), scores(negatives));
}

}  // namespace hmmforge
