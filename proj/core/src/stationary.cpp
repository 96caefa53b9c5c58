#include "hmmforge/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "hmmforge/error.hpp"

namespace hmmforge {

std::vector<std::vector<double>> state_matrix(const DeterministicHmm& model) {
  const auto n = model.state_count();
  std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
  for (const auto& t : model.transitions()) {
    if (t.to < n) p[t.from][t.to] += t.p;
  }
  return p;
}

namespace {

void normalise(std::vector<double>& v) {
  for (double& x : v) x = std::max(x, 0.0);
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= total;
}

StationaryDistribution dense_solve(const DeterministicHmm& model) {
  const auto n = static_cast<Eigen::Index>(model.state_count());
  // (P^T - I) pi = 0 with the last balance equation replaced by sum(pi) = 1.
  Eigen::MatrixXd a = -Eigen::MatrixXd::Identity(n, n);
  for (const auto& t : model.transitions()) {
    a(static_cast<Eigen::Index>(t.to), static_cast<Eigen::Index>(t.from)) += t.p;
  }
  a.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;
  const Eigen::VectorXd x = a.fullPivLu().solve(b);
  std::vector<double> pi(x.data(), x.data() + n);
  normalise(pi);
  return {std::move(pi)};
}

}  // namespace

namespace detail {

StationaryDistribution stationary_power_iteration(const DeterministicHmm& model, double tol,
                                                  std::size_t max_iters) {
  const auto n = model.state_count();
  std::vector<double> pi(n, 1.0 / static_cast<double>(n)), next(n);
  for (std::size_t it = 0; it < max_iters; ++it) {
    // Lazy chain (P + I) / 2: same fixed point, aperiodic even when P is not.
    for (std::size_t i = 0; i < n; ++i) next[i] = 0.5 * pi[i];
    for (const auto& t : model.transitions()) next[t.to] += 0.5 * pi[t.from] * t.p;
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) delta = std::max(delta, std::abs(next[i] - pi[i]));
    pi.swap(next);
    if (delta < tol) break;
  }
  normalise(pi);
  return {std::move(pi)};
}

}  // namespace detail

StationaryDistribution stationary_distribution(const DeterministicHmm& model) {
  require_valid(model);
  require_irreducible(model);
  if (model.state_count() <= kDenseStationaryLimit) return dense_solve(model);
  return detail::stationary_power_iteration(model);
}

double stationary_residual(const DeterministicHmm& model, const StationaryDistribution& pi) {
  std::vector<double> flow(model.state_count(), 0.0);
  for (const auto& t : model.transitions()) flow[t.to] += pi[t.from] * t.p;
  double r = 0.0;
  for (std::size_t s = 0; s < flow.size(); ++s) r = std::max(r, std::abs(flow[s] - pi.probabilities[s]));
  return r;
}

}  // namespace hmmforge
