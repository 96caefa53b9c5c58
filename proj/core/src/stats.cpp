#include "hmmforge/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "hmmforge/error.hpp"

namespace hmmforge::stats {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidArgument, "significance must lie in (0, 1)");
}

// Column indices grouped into test cells: usable columns stand alone, the rare
// ones are pooled; a pooled cell that is itself still rare is folded into the
// smallest usable column.
std::vector<std::vector<std::size_t>> pool_cells(const std::vector<double>& min_expected,
                                                 const std::vector<double>& column_weight) {
  std::vector<std::vector<std::size_t>> cells;
  std::vector<std::size_t> rare;
  for (std::size_t j = 0; j < min_expected.size(); ++j) {
    if (column_weight[j] <= 0.0) continue;
    if (min_expected[j] < kMinExpectedCount) {
      rare.push_back(j);
    } else {
      cells.push_back({j});
    }
  }
  if (rare.empty()) return cells;
  double rare_expected = 0.0;
  for (auto j : rare) rare_expected += min_expected[j];
  if (rare_expected >= kMinExpectedCount || cells.empty()) {
    cells.push_back(std::move(rare));
    return cells;
  }
  auto smallest = std::min_element(cells.begin(), cells.end(), [&](const auto& x, const auto& y) {
    return column_weight[x.front()] < column_weight[y.front()];
  });
  smallest->insert(smallest->end(), rare.begin(), rare.end());
  return cells;
}

ChiSquaredResult finish(double statistic, std::size_t cells, double alpha) {
  ChiSquaredResult r;
  r.statistic = statistic;
  r.df = cells - 1;
  r.p_value = chi_squared_sf(statistic, static_cast<double>(r.df));
  r.reject = r.p_value < alpha;
  return r;
}

}  // namespace

double normal_quantile(double p) {
  return boost::math::quantile(boost::math::normal_distribution<double>(0.0, 1.0), p);
}

double chi_squared_quantile(double p, double df) {
  return boost::math::quantile(boost::math::chi_squared_distribution<double>(df), p);
}

double chi_squared_sf(double x, double df) {
  if (!(x > 0.0)) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::cdf(boost::math::complement(boost::math::chi_squared_distribution<double>(df), x));
}

ChiSquaredResult chi_squared_homogeneity(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                         double alpha) {
  check_alpha(alpha);
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidArgument, "homogeneity: category counts differ");
  double ra = 0.0, rb = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    ra += static_cast<double>(a[j]);
    rb += static_cast<double>(b[j]);
  }
  const double n = ra + rb;

  auto fallback = [&] {
    ChiSquaredResult r;
    r.fallback = true;
    bool same = ra > 0.0 && rb > 0.0;
    for (std::size_t j = 0; same && j < a.size(); ++j) {
      if ((a[j] > 0) != (b[j] > 0)) same = false;
      else if (std::abs(static_cast<double>(a[j]) / ra - static_cast<double>(b[j]) / rb) >
               kFallbackProbabilityTolerance) {
        same = false;
      }
    }
    r.reject = !same;
    r.p_value = same ? 1.0 : 0.0;
    return r;
  };
  if (ra == 0.0 || rb == 0.0) return fallback();

  std::vector<double> min_expected(a.size()), column(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    column[j] = static_cast<double>(a[j] + b[j]);
    min_expected[j] = std::min(ra, rb) * column[j] / n;
  }
  const auto cells = pool_cells(min_expected, column);
  if (cells.size() < 2) return fallback();

  double stat = 0.0;
  for (const auto& cell : cells) {
    double oa = 0.0, ob = 0.0;
    for (auto j : cell) {
      oa += static_cast<double>(a[j]);
      ob += static_cast<double>(b[j]);
    }
    const double c = oa + ob;
    const double ea = ra * c / n, eb = rb * c / n;
    stat += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
  }
  return finish(stat, cells.size(), alpha);
}

ChiSquaredResult chi_squared_goodness_of_fit(std::span<const std::uint64_t> observed,
                                             std::span<const double> probabilities, double alpha) {
  check_alpha(alpha);
  if (observed.size() != probabilities.size()) throw Error(ErrorKind::InvalidArgument, "goodness of fit: size mismatch");
  double n = 0.0;
  for (std::size_t j = 0; j < observed.size(); ++j) {
    n += static_cast<double>(observed[j]);
    if (observed[j] > 0 && !(probabilities[j] > 0.0)) {
      ChiSquaredResult r;
      r.statistic = std::numeric_limits<double>::infinity();
      r.df = observed.size() - 1;
      r.p_value = 0.0;
      r.reject = true;
      return r;
    }
  }
  ChiSquaredResult none;
  none.fallback = true;
  if (n == 0.0) return none;

  std::vector<double> expected(observed.size());
  for (std::size_t j = 0; j < observed.size(); ++j) expected[j] = n * probabilities[j];
  const auto cells = pool_cells(expected, expected);
  if (cells.size() < 2) return none;

  double stat = 0.0;
  for (const auto& cell : cells) {
    double o = 0.0, e = 0.0;
    for (auto j : cell) {
      o += static_cast<double>(observed[j]);
      e += expected[j];
    }
    stat += (o - e) * (o - e) / e;
  }
  return finish(stat, cells.size(), alpha);
}

Interval wald_interval(std::uint64_t successes, std::uint64_t trials, double alpha) {
  check_alpha(alpha);
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double half = normal_quantile(1.0 - alpha / 2.0) * std::sqrt(p * (1.0 - p) / n);
  return {std::max(0.0, p - half), std::min(1.0, p + half)};
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double alpha) {
  check_alpha(alpha);
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z = normal_quantile(1.0 - alpha / 2.0);
  const double z2 = z * z;
  const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z / (1.0 + z2 / n) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

}  // namespace hmmforge::stats
