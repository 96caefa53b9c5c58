#include "hmmforge/symbolizer.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "hmmforge/error.hpp"
#include "hmmforge/model_io.hpp"

namespace hmmforge {

std::string_view to_string(SymbolizerMode mode) noexcept {
  return mode == SymbolizerMode::InterEventDeltas ? "interEventDeltas" : "rawValues";
}

SymbolizerMode symbolizer_mode_from_string(std::string_view s) {
  if (s == "interEventDeltas" || s == "deltas") return SymbolizerMode::InterEventDeltas;
  if (s == "rawValues" || s == "values") return SymbolizerMode::RawValues;
  throw Error(ErrorKind::InvalidArgument, fmt::format("unknown symbolizer mode '{}'", s));
}

Alphabet SymbolizerSpec::alphabet() const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < bin_count(); ++i) names.push_back(fmt::format("b{}", i));
  return Alphabet(std::move(names));
}

std::size_t SymbolizerSpec::bin(double v) const {
  // First edge with v <= edge.
  return static_cast<std::size_t>(std::lower_bound(bin_edges.begin(), bin_edges.end(), v) - bin_edges.begin());
}

SymbolizerSpec fit_quantile_bins(std::span<const double> values, std::size_t bin_count, SymbolizerMode mode) {
  if (values.empty()) throw Error(ErrorKind::EmptyInput, "no values to fit bins on");
  if (bin_count < 2) throw Error(ErrorKind::InvalidArgument, "bin count must be at least 2");
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "non-finite value in input");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double top = sorted.back();

  SymbolizerSpec spec;
  spec.mode = mode;
  for (std::size_t k = 1; k < bin_count; ++k) {
    // Position h = k n / bins in 1-based order statistics, in exact integer arithmetic.
    const std::size_t num = k * n;
    double edge;
    if (num % bin_count == 0) {
      const std::size_t h = num / bin_count;
      edge = 0.5 * (sorted[h - 1] + sorted[h]);
    } else {
      edge = sorted[num / bin_count];
    }
    if (edge >= top || (!spec.bin_edges.empty() && edge <= spec.bin_edges.back())) {
      spec.collapsed = true;
      continue;
    }
    spec.bin_edges.push_back(edge);
  }
  if (spec.bin_edges.empty()) {
    throw Error(ErrorKind::DegenerateInput, "all values fall in one bin; cannot form two bins");
  }
  return spec;
}

std::vector<double> inter_event_deltas(std::span<const double> timestamps) {
  if (timestamps.size() < 2) throw Error(ErrorKind::InsufficientData, "need at least two timestamps");
  std::vector<double> d;
  d.reserve(timestamps.size() - 1);
  for (std::size_t i = 1; i < timestamps.size(); ++i) {
    if (!(timestamps[i] >= timestamps[i - 1])) {
      throw Error(ErrorKind::NonMonotonicTimestamps, fmt::format("timestamp {} decreases", i));
    }
    d.push_back(timestamps[i] - timestamps[i - 1]);
  }
  return d;
}

SymbolSequence symbolize(const SymbolizerSpec& spec, std::span<const double> raw) {
  if (!std::is_sorted(spec.bin_edges.begin(), spec.bin_edges.end()) ||
      std::adjacent_find(spec.bin_edges.begin(), spec.bin_edges.end()) != spec.bin_edges.end()) {
    throw Error(ErrorKind::InvalidArgument, "bin edges must be strictly increasing");
  }
  std::vector<double> deltas;
  std::span<const double> values = raw;
  if (spec.mode == SymbolizerMode::InterEventDeltas) {
    deltas = inter_event_deltas(raw);
    values = deltas;
  }
  std::vector<SymbolId> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(static_cast<SymbolId>(spec.bin(v)));
  return SymbolSequence(spec.alphabet(), std::move(out));
}

std::string spec_to_json(const SymbolizerSpec& spec, std::string_view manifest_json) {
  std::string out = fmt::format("{{\n  \"mode\": \"{}\",\n  \"binCount\": {},\n  \"binEdges\": [",
                                to_string(spec.mode), spec.bin_count());
  for (std::size_t i = 0; i < spec.bin_edges.size(); ++i) out += (i ? ", " : "") + format_real(spec.bin_edges[i]);
  out += fmt::format("],\n  \"collapsed\": {}", spec.collapsed ? "true" : "false");
  if (!manifest_json.empty()) out += fmt::format(",\n  \"manifest\": {}", manifest_json);
  out += "\n}\n";
  return out;
}

SymbolizerSpec spec_from_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    SymbolizerSpec spec;
    spec.mode = symbolizer_mode_from_string(doc.at("mode").get<std::string>());
    spec.bin_edges = doc.at("binEdges").get<std::vector<double>>();
    spec.collapsed = doc.value("collapsed", false);
    if (doc.at("binCount").get<std::size_t>() != spec.bin_count()) {
      throw Error(ErrorKind::ParseError, "binCount must equal number of edges + 1");
    }
    for (std::size_t i = 1; i < spec.bin_edges.size(); ++i) {
      if (!(spec.bin_edges[i - 1] < spec.bin_edges[i])) throw Error(ErrorKind::ParseError, "binEdges not strictly increasing");
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("symbolizer spec: ") + e.what());
  }
}

}  // namespace hmmforge
