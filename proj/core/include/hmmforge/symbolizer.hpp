#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hmmforge/alphabet.hpp"

namespace hmmforge {

enum class SymbolizerMode { InterEventDeltas, RawValues };

std::string_view to_string(SymbolizerMode mode) noexcept;
SymbolizerMode symbolizer_mode_from_string(std::string_view s);

inline constexpr std::size_t kDefaultBinCount = 8;

/// Bin layout. Value v lands in bin i when edges[i-1] < v <= edges[i]
/// (edges[-1] = -inf, edges[k-1] = +inf); symbols are "b0".."b{k-1}".
struct SymbolizerSpec {
  SymbolizerMode mode = SymbolizerMode::InterEventDeltas;
  std::vector<double> bin_edges;
  /// Set when duplicate quantiles were collapsed while fitting.
  bool collapsed = false;

  std::size_t bin_count() const noexcept { return bin_edges.size() + 1; }
  Alphabet alphabet() const;
  std::size_t bin(double v) const;

  friend bool operator==(const SymbolizerSpec&, const SymbolizerSpec&) = default;
};

/// Edges at the empirical k/binCount quantiles. At an integer position
/// h = k*n/binCount the edge is the midpoint of order statistics h and h+1;
/// otherwise it is order statistic ceil(h). Duplicate edges and edges at or
/// above the maximum are dropped (`collapsed`).
/// Throws EmptyInput, InvalidArgument (binCount < 2), DegenerateInput.
SymbolizerSpec fit_quantile_bins(std::span<const double> values, std::size_t bin_count,
                                 SymbolizerMode mode = SymbolizerMode::RawValues);

/// Successive differences; throws InsufficientData (< 2 stamps) or
/// NonMonotonicTimestamps.
std::vector<double> inter_event_deltas(std::span<const double> timestamps);

/// Applies the spec; in InterEventDeltas mode `raw` are timestamps.
SymbolSequence symbolize(const SymbolizerSpec& spec, std::span<const double> raw);

std::string spec_to_json(const SymbolizerSpec& spec, std::string_view manifest_json = {});
SymbolizerSpec spec_from_json(std::string_view text);

}  // namespace hmmforge
