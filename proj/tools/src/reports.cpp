#include "reports.hpp"

#include <fmt/format.h>

#include "hmmforge/digest.hpp"
#include "hmmforge/rng.hpp"

#ifndef HMMFORGE_VERSION
#define HMMFORGE_VERSION "unknown"
#endif

namespace hmmforge::cli {

std::string tool_version() { return std::string("hmmforge ") + HMMFORGE_VERSION; }

void Manifest::input(const std::filesystem::path& path, const std::string& bytes) {
  input_digest(path.string(), sha256_hex(bytes));
}

void Manifest::input_digest(const std::string& name, const std::string& sha256) {
  inputs_.push_back(Json{{"path", name}, {"sha256", sha256}});
}

Json Manifest::to_json() const {
  return Json{{"command", command_},
              {"configHash", sha256_hex(Json{{"command", command_}, {"params", params_}}.dump())},
              {"params", params_},
              {"inputDigests", inputs_},
              {"rngSeed", seed_},
              {"rngAlgorithm", std::string(Rng::kAlgorithm)},
              {"toolVersion", tool_version()}};
}

Json to_json(const SymbolizerSpec& spec) {
  return Json{{"mode", std::string(to_string(spec.mode))},
              {"binCount", spec.bin_count()},
              {"binEdges", spec.bin_edges},
              {"collapsed", spec.collapsed}};
}

Json to_json(const WindowSummary& w) {
  Json j{{"window", w.window},
         {"candidateStates", w.candidate_states},
         {"mergedStates", w.merged_states},
         {"merges", w.merges}};
  j["equivalentToNext"] = w.equivalent_to_next ? Json(*w.equivalent_to_next) : Json(nullptr);
  return j;
}

Json to_json(const InferenceResult& r) {
  Json levels = Json::array();
  for (const auto& w : r.levels) levels.push_back(to_json(w));
  Json j{{"window", r.window},
         {"stabilized", r.stabilized},
         {"states", r.model.state_count()},
         {"transitions", r.model.transitions().size()},
         {"merges", r.levels.empty() ? 0 : r.levels.back().merges},
         {"levels", levels}};
  if (r.confidence) j["confidence"] = to_json(*r.confidence);
  return j;
}

Json to_json(const ConfidenceReport& r) {
  Json states = Json::array();
  for (const auto& s : r.states) {
    Json js{{"state", s.state},
            {"pi", s.pi},
            {"gamma", s.gamma},
            {"requiredVisits", s.required_visits}};
    js["visits"] = s.visits ? Json(*s.visits) : Json(nullptr);
    js["zStatistic"] = s.z_statistic ? Json(*s.z_statistic) : Json(nullptr);
    js["sufficient"] = s.sufficient;
    js["vacuous"] = s.vacuous;
    states.push_back(std::move(js));
  }
  Json j{{"verdict", std::string(to_string(r.verdict))},
         {"xBarUnobserved", r.x_bar_unobserved},
         {"zCritical", r.z_critical},
         {"requiredLength", r.required_length},
         {"exactBinomial", r.exact_binomial},
         {"rejectionMeaning", "rejecting H0 (p_unseen = gamma) in favour of p_unseen < gamma means the state has enough data"},
         {"perState", states}};
  j["traceBrokenAt"] = r.trace_broken_at ? Json(*r.trace_broken_at) : Json(nullptr);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const DetectionReport& r) {
  Json items = Json::array();
  for (const auto& i : r.items) {
    items.push_back(Json{{"item", i.item},
                         {"modelValue", i.model_value},
                         {"estimate", i.estimate},
                         {"ciLow", i.ci_low},
                         {"ciHigh", i.ci_high},
                         {"trials", i.trials},
                         {"matched", i.matched}});
  }
  Json j{{"method", std::string(to_string(r.method))},
         {"matched", r.matched},
         {"total", r.total},
         {"proportion", r.proportion},
         {"threshold", r.threshold},
         {"accept", r.accept},
         {"tracedSymbols", r.traced_symbols},
         {"startSynchronized", r.synchronized}};
  j["brokenAt"] = r.broken_at ? Json(*r.broken_at) : Json(nullptr);
  j["perItem"] = std::move(items);
  return j;
}

Json to_json(const RocCurve& roc) {
  Json points = Json::array();
  for (const auto& p : roc.points) points.push_back(Json{{"threshold", p.threshold}, {"tpr", p.tpr}, {"fpr", p.fpr}});
  return Json{{"optimalThreshold", roc.optimal_threshold},
              {"optimalDistance", roc.optimal_distance},
              {"positiveScores", roc.positive_scores},
              {"negativeScores", roc.negative_scores},
              {"points", points}};
}

namespace {

Json direction_json(const DirectionResult& d) {
  Json tests = Json::array();
  for (const auto& t : d.tests) {
    tests.push_back(Json{{"state", t.state},
                         {"visits", t.visits},
                         {"statistic", t.test.statistic},
                         {"df", t.test.df},
                         {"pValue", t.test.p_value},
                         {"reject", t.test.reject},
                         {"fallback", t.test.fallback}});
  }
  Json j{{"equivalent", d.equivalent}};
  j["brokenAt"] = d.broken_at ? Json(*d.broken_at) : Json(nullptr);
  j["tests"] = std::move(tests);
  return j;
}

}  // namespace

Json to_json(const EquivalenceResult& r) {
  return Json{{"equivalent", r.equivalent},
              {"sequenceLength", r.length},
              {"lengthCapped", r.length_capped},
              {"perTestAlpha", r.per_test_alpha},
              {"forward", direction_json(r.forward)},
              {"backward", direction_json(r.backward)}};
}

Json to_json(const DistanceResult& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    steps.push_back(Json{{"pth", s.pth},
                         {"equivalent", s.equivalent},
                         {"firstPresent", s.first_present},
                         {"secondPresent", s.second_present},
                         {"sequenceLength", s.length}});
  }
  return Json{{"distance", r.distance},
              {"alpha", r.alpha},
              {"sequenceLength", r.sequence_length},
              {"degenerate", r.degenerate},
              {"maximal", r.maximal},
              {"prunedSteps", steps}};
}

std::string roc_csv(const RocCurve& roc) {
  std::string out = "threshold,tpr,fpr\n";
  for (const auto& p : roc.points) out += fmt::format("{:.2f},{},{}\n", p.threshold, p.tpr, p.fpr);
  return out;
}

}  // namespace hmmforge::cli
