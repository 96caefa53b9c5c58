#pragma once

#include <vector>

#include "hmmforge/hmm.hpp"

namespace hmmforge {

struct StationaryDistribution {
  std::vector<double> probabilities;  // indexed by StateId

  double operator[](StateId s) const { return probabilities.at(s); }
  std::size_t size() const noexcept { return probabilities.size(); }
};

/// Dense state-to-state matrix P[i][j] = sum of p over transitions i -> j.
std::vector<std::vector<double>> state_matrix(const DeterministicHmm& model);

/// Solves pi P = pi, sum(pi) = 1. Dense LU up to kDenseStationaryLimit states,
/// power iteration on the lazy chain above. Throws NotIrreducible.
StationaryDistribution stationary_distribution(const DeterministicHmm& model);

inline constexpr std::size_t kDenseStationaryLimit = 64;

/// max_s |pi_s - sum_t pi_t P[t][s]|
double stationary_residual(const DeterministicHmm& model, const StationaryDistribution& pi);

namespace detail {
StationaryDistribution stationary_power_iteration(const DeterministicHmm& model, double tol = 1e-10,
                                                  std::size_t max_iters = 1'000'000);
}

}  // namespace hmmforge
