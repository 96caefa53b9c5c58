#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace hmmforge::stats {

/// Standard normal quantile.
double normal_quantile(double p);
double chi_squared_quantile(double p, double df);
/// Upper-tail probability P(X >= x) for a chi-squared variable.
double chi_squared_sf(double x, double df);

/// Cells whose expected count falls below this are pooled.
inline constexpr double kMinExpectedCount = 5.0;
/// Tolerance of the low-count fallback rule for homogeneity.
inline constexpr double kFallbackProbabilityTolerance = 0.01;

struct ChiSquaredResult {
  double statistic = 0.0;
  std::size_t df = 0;
  double p_value = 1.0;
  bool reject = false;
  /// Fewer than two cells survived pooling; `reject` came from the fallback rule.
  bool fallback = false;
};

/// Homogeneity of two count vectors over the same categories (2 x k table).
/// Columns with an expected count < 5 in either row are pooled into one rare
/// column. With fewer than two usable columns, the rows are declared equal only
/// if their supports coincide and every proportion differs by at most 0.01.
ChiSquaredResult chi_squared_homogeneity(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                         double alpha);

/// Goodness of fit of observed counts to category probabilities. Same pooling;
/// an observation in a zero-probability cell rejects outright; with fewer than
/// two usable cells there is no evidence against the model (no rejection).
ChiSquaredResult chi_squared_goodness_of_fit(std::span<const std::uint64_t> observed,
                                             std::span<const double> probabilities, double alpha);

struct Interval {
  double low = 0.0;
  double high = 0.0;
  bool contains(double x) const noexcept { return low <= x && x <= high; }
};

/// Two-sided Wald interval p^ +/- z_{1-alpha/2} sqrt(p^(1-p^)/n), clipped to
/// [0, 1]. Degenerates to [p^, p^] at p^ in {0, 1}.
Interval wald_interval(std::uint64_t successes, std::uint64_t trials, double alpha);
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double alpha);

}  // namespace hmmforge::stats
