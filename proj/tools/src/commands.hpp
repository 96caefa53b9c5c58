#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hmmforge/confidence.hpp"
#include "hmmforge/detection.hpp"
#include "hmmforge/inference.hpp"
#include "hmmforge/metric.hpp"
#include "hmmforge/synthesis.hpp"

namespace hmmforge::cli {

struct Common {
  std::uint64_t seed = 0;
  std::string report;  // optional extra copy of the report
};

struct SymbolizeOptions {
  std::string input;
  std::string column = "0";
  std::string mode = "deltas";
  std::size_t bins = 8;
  std::string spec_in;
  std::string spec_out;
  std::string output;
};

struct SynthOptions {
  SynthConfig model;
  std::size_t seqs = 1;
  std::size_t length = 10000;
  std::string out_dir;
  bool timestamps = false;
};

struct InferOptions {
  std::string input;
  std::string output;
  InferenceConfig cfg;
  std::optional<double> epsilon;
};

struct ConfidenceOptions {
  std::string model;
  std::string input;
  ConfidenceConfig cfg;
  InferenceConfig infer;
};

struct DetectOptions {
  std::string model;
  std::string input;
  DetectionConfig cfg;
};

struct RocOptions {
  std::string model;
  std::vector<std::string> positives;
  std::vector<std::string> negatives;
  DetectionConfig cfg;
  std::string output;
};

struct CompareOptions {
  std::string model_a;
  std::string model_b;
  EquivalenceOptions eq;
};

struct PipelineOptions {
  std::string input;
  std::string column = "0";
  std::string mode = "deltas";
  std::size_t bins = 8;
  std::string spec_in;
  double holdout = 0.3;
  std::size_t segments = 1;
  InferenceConfig infer;
  ConfidenceConfig confidence;
  DetectionConfig detect;
  std::vector<std::string> negatives;
  std::string out_dir;
};

int cmd_symbolize(const SymbolizeOptions& o, const Common& c, std::ostream& out);
int cmd_synth(const SynthOptions& o, const Common& c, std::ostream& out);
int cmd_infer(const InferOptions& o, const Common& c, std::ostream& out);
int cmd_confidence(const ConfidenceOptions& o, const Common& c, std::ostream& out);
int cmd_detect(const DetectOptions& o, const Common& c, std::ostream& out);
int cmd_roc(const RocOptions& o, const Common& c, std::ostream& out);
int cmd_distance(const CompareOptions& o, const Common& c, std::ostream& out);
int cmd_equiv(const CompareOptions& o, const Common& c, std::ostream& out);
int cmd_pipeline(const PipelineOptions& o, const Common& c, std::ostream& out);

}  // namespace hmmforge::cli
