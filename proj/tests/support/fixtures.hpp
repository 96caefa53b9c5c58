#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hmmforge/hmm.hpp"

namespace hmmforge::testing {

inline Alphabet ab() { return Alphabet({"a", "b"}); }

// s1 --a--> s2 --b--> s1, both p = 1.
inline DeterministicHmm two_cycle() {
  return DeterministicHmm(ab(), {"s1", "s2"}, {{0, 0, 1, 1.0}, {1, 1, 0, 1.0}});
}

// s1: a stays (0.9), b leaves (0.1); s2: a returns (0.5), b stays (0.5).
inline DeterministicHmm model_0901() {
  return DeterministicHmm(ab(), {"s1", "s2"},
                          {{0, 0, 0, 0.9}, {0, 1, 1, 0.1}, {1, 0, 0, 0.5}, {1, 1, 1, 0.5}});
}

// Symmetric two-state chain: each state emits its own symbol to stay (0.5)
// or the other symbol to switch (0.5). pi = (1/2, 1/2).
inline DeterministicHmm symmetric_pair() {
  return DeterministicHmm(ab(), {"s1", "s2"},
                          {{0, 0, 0, 0.5}, {0, 1, 1, 0.5}, {1, 0, 0, 0.5}, {1, 1, 1, 0.5}});
}

inline DeterministicHmm single_loop() {
  return DeterministicHmm(Alphabet({"a"}), {"s"}, {{0, 0, 0, 1.0}});
}

// Three states over {a, b, c}, every cell present, rows clearly apart.
inline DeterministicHmm model_a() {
  const Alphabet abc({"a", "b", "c"});
  return DeterministicHmm(abc, {"q0", "q1", "q2"},
                          {{0, 0, 0, 0.6}, {0, 1, 1, 0.3}, {0, 2, 2, 0.1},
                           {1, 0, 0, 0.2}, {1, 1, 1, 0.5}, {1, 2, 2, 0.3},
                           {2, 0, 0, 0.3}, {2, 1, 1, 0.2}, {2, 2, 2, 0.5}});
}

// Row sums of a model, keyed by state.
inline std::vector<double> row_sums(const DeterministicHmm& m) {
  std::vector<double> out(m.state_count(), 0.0);
  for (const auto& t : m.transitions()) out[t.from] += t.p;
  return out;
}

// Stationary distribution by plain Gaussian elimination on (P^T - I) with
// the last row replaced by the normalisation constraint.
inline std::vector<double> gauss_stationary(const DeterministicHmm& m) {
  const std::size_t n = m.state_count();
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (const auto& t : m.transitions()) a[t.to][t.from] += t.p;
  for (std::size_t i = 0; i < n; ++i) a[i][i] -= 1.0;
  for (std::size_t j = 0; j <= n; ++j) a[n - 1][j] = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t j = c; j <= n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<double> pi(n);
  for (std::size_t i = 0; i < n; ++i) pi[i] = a[i][n] / a[i][i];
  return pi;
}

// Brute-force substring counts over a token string. Counts every window of
// the given length by copying it out; no rolling codes.
inline std::map<std::vector<std::uint32_t>, std::uint64_t> count_windows(const std::vector<std::uint32_t>& s,
                                                                       std::size_t len) {
  std::map<std::vector<std::uint32_t>, std::uint64_t> out;
  if (s.size() < len) return out;
  for (std::size_t i = 0; i + len <= s.size(); ++i) {
    ++out[std::vector<std::uint32_t>(s.begin() + static_cast<std::ptrdiff_t>(i),
                                     s.begin() + static_cast<std::ptrdiff_t>(i + len))];
  }
  return out;
}

}  // namespace hmmforge::testing
