#include "hmmforge/confidence.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "hmmforge/error.hpp"
#include "hmmforge/inference.hpp"
#include "hmmforge/sampling.hpp"
#include "hmmforge/stationary.hpp"
#include "hmmforge/stats.hpp"

namespace hmmforge {

namespace {

std::uint64_t ceil_tolerant(double x) { return static_cast<std::uint64_t>(std::ceil(x - 1e-9)); }

void check_gamma(double gamma) {
  if (!(gamma > 0.0)) throw Error(ErrorKind::InvalidArgument, "gamma must be positive");
  if (gamma >= 1.0) throw Error(ErrorKind::GammaOutOfRange, fmt::format("gamma {} is not below 1", gamma));
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1)");
}

}  // namespace

void check(const ConfidenceConfig& cfg) {
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1)");
  check_alpha(cfg.alpha);
}

std::string_view to_string(Verdict v) noexcept {
  return v == Verdict::Sufficient ? "Sufficient" : "NeedMoreData";
}

std::uint64_t required_visits_normal(double gamma, double alpha) {
  check_gamma(gamma);
  check_alpha(alpha);
  const double z = stats::normal_quantile(1.0 - alpha);
  return std::max<std::uint64_t>(1, ceil_tolerant(z * z * (1.0 - gamma) / gamma));
}

std::uint64_t required_visits_exact(double gamma, double alpha) {
  check_gamma(gamma);
  check_alpha(alpha);
  return std::max<std::uint64_t>(1, ceil_tolerant(std::log(alpha) / std::log1p(-gamma)));
}

ConfidenceReport required_samples(const DeterministicHmm& model, const ConfidenceConfig& cfg) {
  check(cfg);
  const auto pi = stationary_distribution(model);

  std::vector<std::string> out_of_range;
  for (StateId s = 0; s < model.state_count(); ++s) {
    if (cfg.epsilon / pi[s] >= 1.0) out_of_range.push_back(model.state_label(s));
  }
  if (!out_of_range.empty() && !cfg.allow_vacuous) {
    throw Error(ErrorKind::GammaOutOfRange,
                fmt::format("epsilon {} is not below pi for states: {}", cfg.epsilon, fmt::join(out_of_range, ", ")));
  }

  ConfidenceReport r;
  r.exact_binomial = cfg.exact_binomial;
  r.z_critical = stats::normal_quantile(1.0 - cfg.alpha);
  for (StateId s = 0; s < model.state_count(); ++s) {
    StateConfidence sc;
    sc.state = model.state_label(s);
    sc.pi = pi[s];
    sc.gamma = cfg.epsilon / pi[s];
    if (sc.gamma >= 1.0) {
      sc.vacuous = true;
      sc.sufficient = true;
      r.states.push_back(std::move(sc));
      continue;
    }
    sc.required_visits = cfg.exact_binomial ? required_visits_exact(sc.gamma, cfg.alpha)
                                            : required_visits_normal(sc.gamma, cfg.alpha);
    r.required_length = std::max(r.required_length, ceil_tolerant(static_cast<double>(sc.required_visits) / sc.pi));
    r.states.push_back(std::move(sc));
  }
  r.verdict = Verdict::NeedMoreData;
  r.note = "prospective bound; no data assessed";
  return r;
}

ConfidenceReport assess_confidence(const DeterministicHmm& model, const SymbolSequence& seq,
                                   const ConfidenceConfig& cfg) {
  auto r = required_samples(model, cfg);
  r.note.clear();
  const auto tc = trace(model, seq);
  bool all = true;
  for (StateId s = 0; s < model.state_count(); ++s) {
    auto& sc = r.states[s];
    const auto n = tc.visits[s];
    sc.visits = n;
    if (sc.vacuous) continue;
    sc.z_statistic = std::sqrt(static_cast<double>(n) * sc.gamma / (1.0 - sc.gamma));
    sc.sufficient = n >= sc.required_visits;
    all = all && sc.sufficient;
  }
  if (tc.broken_at) {
    r.trace_broken_at = tc.broken_at;
    r.note = fmt::format("sequence leaves the model at position {}", *tc.broken_at);
    all = false;
  }
  r.verdict = all ? Verdict::Sufficient : Verdict::NeedMoreData;
  return r;
}

OnlineCheck online_confidence_check(const SymbolSequence& seq, const ConfidenceConfig& cfg,
                                    const InferenceConfig& infer_cfg) {
  check(cfg);
  OnlineCheck out;
  auto icfg = infer_cfg;
  icfg.confidence.reset();
  try {
    out.model = infer(seq, icfg).model;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidArgument) throw;
    out.report.note = fmt::format("no model could be built: {}", e.what());
    return out;
  }
  try {
    out.report = assess_confidence(*out.model, seq, cfg);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::GammaOutOfRange && e.kind() != ErrorKind::NotIrreducible) throw;
    out.report = ConfidenceReport{};
    out.report.exact_binomial = cfg.exact_binomial;
    out.report.note = e.what();
  }
  return out;
}

}  // namespace hmmforge
