#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hmmforge/confidence.hpp"
#include "hmmforge/detection.hpp"
#include "hmmforge/inference.hpp"
#include "hmmforge/metric.hpp"
#include "hmmforge/symbolizer.hpp"

namespace hmmforge::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

std::string tool_version();

/// Provenance of one invocation. No clocks, no hostnames: equal manifests
/// must describe byte-identical outputs.
class Manifest {
 public:
  Manifest(std::string command, std::uint64_t seed) : command_(std::move(command)), seed_(seed) {}

  void param(const std::string& key, Json value) { params_[key] = std::move(value); }
  /// Records the SHA-256 of an input file's bytes.
  void input(const std::filesystem::path& path, const std::string& bytes);
  void input_digest(const std::string& name, const std::string& sha256);

  std::uint64_t seed() const noexcept { return seed_; }
  Json to_json() const;

 private:
  std::string command_;
  std::uint64_t seed_;
  Json params_ = Json::object();
  Json inputs_ = Json::array();
};

Json to_json(const SymbolizerSpec& spec);
Json to_json(const WindowSummary& w);
Json to_json(const InferenceResult& r);
Json to_json(const ConfidenceReport& r);
Json to_json(const DetectionReport& r);
Json to_json(const RocCurve& roc);
Json to_json(const EquivalenceResult& r);
Json to_json(const DistanceResult& r);

std::string roc_csv(const RocCurve& roc);

}  // namespace hmmforge::cli
