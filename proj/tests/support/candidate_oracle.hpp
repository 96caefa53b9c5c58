#pragma once

// Brute-force reference for build_candidate: substring counts from explicit
// windows, reachability by transitive closure, no shared code with core.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hmmforge/error.hpp"
#include "hmmforge/inference.hpp"
#include "support/fixtures.hpp"

namespace hmmforge::testing {

struct OracleEdge {
  std::uint64_t count = 0;   // count(h.x)
  std::uint64_t total = 0;   // sum of count(h.y) over retained edges y
  std::size_t target = 0;    // index into OracleCandidate::histories
};

struct OracleCandidate {
  std::vector<std::vector<std::uint32_t>> histories;  // lexicographic
  std::vector<std::map<std::uint32_t, OracleEdge>> edges;
};

inline std::optional<OracleCandidate> oracle_candidate(const std::vector<std::uint32_t>& s, std::size_t window,
                                                       std::uint64_t min_count) {
  const auto next = count_windows(s, window + 1);
  std::map<std::vector<std::uint32_t>, std::uint64_t> totals;
  for (const auto& [w, c] : next) totals[std::vector<std::uint32_t>(w.begin(), w.end() - 1)] += c;

  std::vector<std::vector<std::uint32_t>> kept;
  for (const auto& [h, c] : totals) {
    if (c >= min_count) kept.push_back(h);
  }
  const std::size_t n = kept.size();
  auto find = [&](const std::vector<std::uint32_t>& h) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < n; ++i) {
      if (kept[i] == h) return i;
    }
    return std::nullopt;
  };

  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  std::vector<std::map<std::uint32_t, std::pair<std::uint64_t, std::size_t>>> raw(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [w, c] : next) {
      if (!std::equal(kept[i].begin(), kept[i].end(), w.begin())) continue;
      const auto to = find(std::vector<std::uint32_t>(w.begin() + 1, w.end()));
      if (!to) continue;
      raw[i][w.back()] = {c, *to};
      reach[i][*to] = true;
    }
  }
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][m]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[m][j]) reach[i][j] = true;
      }
    }
  }

  // Cyclic classes: i is on a cycle iff it reaches itself.
  std::vector<std::size_t> best;
  for (std::size_t i = 0; i < n; ++i) {
    if (!reach[i][i]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t j = 0; j < n; ++j) {
      if (reach[i][j] && reach[j][i]) cls.push_back(j);
    }
    if (cls.size() > best.size()) best = cls;  // ties keep the earliest class
  }
  if (best.empty()) return std::nullopt;

  OracleCandidate out;
  std::map<std::size_t, std::size_t> remap;
  for (auto i : best) {
    remap[i] = out.histories.size();
    out.histories.push_back(kept[i]);
  }
  for (auto i : best) {
    std::map<std::uint32_t, OracleEdge> row;
    std::uint64_t total = 0;
    for (const auto& [x, e] : raw[i]) {
      if (!remap.count(e.second)) continue;
      row[x] = OracleEdge{e.first, 0, remap[e.second]};
      total += e.first;
    }
    for (auto& [x, e] : row) e.total = total;
    out.edges.push_back(std::move(row));
  }
  return out;
}

// Compares build_candidate against the oracle. Counts must agree as integers
// and each probability must be the correctly rounded count ratio. Returns an
// empty string on agreement, else the first difference.
inline std::string compare_with_oracle(const SymbolSequence& seq, std::size_t window, std::uint64_t min_count) {
  const auto expected = oracle_candidate(seq.data(), window, min_count);
  std::optional<CandidateModel> got;
  try {
    got = build_candidate(seq, window, min_count);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InsufficientData && !expected) return {};
    return std::string("build_candidate threw: ") + e.what();
  }
  if (!expected) return "oracle finds no recurrent histories but build_candidate succeeded";
  const auto& m = got->model;
  if (m.state_count() != expected->histories.size()) return "state count differs";
  for (StateId s = 0; s < m.state_count(); ++s) {
    if (m.state_label(s) != history_label(seq.alphabet(), expected->histories[s])) {
      return "state " + std::to_string(s) + " label differs";
    }
    const auto row = m.outgoing(s);
    const auto& want = expected->edges[s];
    if (row.size() != want.size()) return "edge count differs at " + m.state_label(s);
    for (const auto& t : row) {
      const auto it = want.find(t.symbol);
      if (it == want.end()) return "unexpected edge at " + m.state_label(s);
      const auto& e = it->second;
      if (t.to != e.target) return "edge target differs at " + m.state_label(s);
      if (got->symbol_counts[s][t.symbol] != e.count) return "count differs at " + m.state_label(s);
      if (t.p != static_cast<double>(e.count) / static_cast<double>(e.total)) {
        return "probability differs at " + m.state_label(s);
      }
    }
  }
  return {};
}

}  // namespace hmmforge::testing
