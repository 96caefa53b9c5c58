#include "hmmforge/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "hmmforge/error.hpp"
#include "hmmforge/rng.hpp"

namespace hmmforge {

namespace {

constexpr int kMaxAttempts = 1000;

struct Fold {
  std::vector<std::size_t> parent;
  std::vector<std::vector<std::size_t>> next;  // node x symbol -> node

  std::size_t find(std::size_t s) {
    while (parent[s] != s) s = parent[s] = parent[parent[s]];
    return s;
  }

  void merge(std::size_t a, std::size_t b) {
    std::vector<std::pair<std::size_t, std::size_t>> queue{{a, b}};
    while (!queue.empty()) {
      auto [u, v] = queue.back();
      queue.pop_back();
      u = find(u);
      v = find(v);
      if (u == v) continue;
      if (v < u) std::swap(u, v);
      parent[v] = u;
      for (std::size_t x = 0; x < next[u].size(); ++x) queue.emplace_back(next[u][x], next[v][x]);
    }
  }

  std::vector<std::size_t> roots() {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < parent.size(); ++s) {
      if (find(s) == s) out.push_back(s);
    }
    return out;
  }
};

Fold de_bruijn(std::size_t k, std::size_t order) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < order; ++i) n *= k;
  Fold f;
  f.parent.resize(n);
  std::iota(f.parent.begin(), f.parent.end(), 0);
  f.next.assign(n, std::vector<std::size_t>(k));
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t x = 0; x < k; ++x) f.next[w][x] = (w * k + x) % n;
  }
  return f;
}

// Returns the folded graph with exactly `target` classes, or nothing when this
// attempt collapsed too far.
std::optional<Fold> fold_to(Fold f, std::size_t target, Rng& rng) {
  for (auto roots = f.roots(); roots.size() > target; roots = f.roots()) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      for (std::size_t j = i + 1; j < roots.size(); ++j) pairs.emplace_back(roots[i], roots[j]);
    }
    for (std::size_t i = pairs.size(); i > 1; --i) std::swap(pairs[i - 1], pairs[rng.below(i)]);
    bool merged = false;
    for (const auto& [a, b] : pairs) {
      Fold trial = f;
      trial.merge(a, b);
      if (trial.roots().size() >= target) {
        f = std::move(trial);
        merged = true;
        break;
      }
    }
    if (!merged) return std::nullopt;
  }
  return f;
}

bool separated(const std::vector<std::vector<double>>& rows, double min_separation) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      double gap = 0.0;
      for (std::size_t x = 0; x < rows[i].size(); ++x) gap = std::max(gap, std::abs(rows[i][x] - rows[j][x]));
      if (gap < min_separation) return false;
    }
  }
  return true;
}

}  // namespace

void check(const SynthConfig& cfg) {
  if (cfg.states < 1) throw Error(ErrorKind::InvalidArgument, "need at least one state");
  if (cfg.symbols < 1) throw Error(ErrorKind::InvalidArgument, "need at least one symbol");
  if (cfg.symbols == 1 && cfg.states > 1) {
    throw Error(ErrorKind::InvalidArgument, "a single-symbol alphabet supports only one state");
  }
  if (!(cfg.min_p > 0.0 && cfg.min_p <= 1.0)) throw Error(ErrorKind::InvalidArgument, "min p must lie in (0, 1]");
  if (static_cast<double>(cfg.symbols) * cfg.min_p > 1.0 + 1e-12) {
    throw Error(ErrorKind::InvalidArgument,
                fmt::format("infeasible: {} outgoing transitions cannot each have p >= {}", cfg.symbols, cfg.min_p));
  }
  if (cfg.min_separation < 0.0 || cfg.min_separation >= 1.0) {
    throw Error(ErrorKind::InvalidArgument, "separation must lie in [0, 1)");
  }
}

Alphabet synthetic_alphabet(std::size_t symbols) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < symbols; ++i) {
    out.push_back(symbols <= 26 ? std::string(1, static_cast<char>('a' + i)) : fmt::format("s{}", i));
  }
  return Alphabet(std::move(out));
}

DeterministicHmm random_definite_model(const SynthConfig& cfg) {
  check(cfg);
  Rng rng(cfg.seed);
  const std::size_t k = cfg.symbols;
  std::size_t order = 0;
  for (std::size_t span = 1; span < cfg.states; span *= k) ++order;

  std::optional<Fold> folded;
  for (int attempt = 0; attempt < kMaxAttempts && !folded; ++attempt) folded = fold_to(de_bruijn(k, order), cfg.states, rng);
  if (!folded) throw Error(ErrorKind::InvalidArgument, "could not fold a graph with the requested state count");
  auto& f = *folded;
  const auto roots = f.roots();
  std::vector<std::size_t> index(f.parent.size());
  for (std::size_t i = 0; i < roots.size(); ++i) index[roots[i]] = i;

  const double spread = 1.0 - static_cast<double>(k) * cfg.min_p;
  std::vector<std::vector<double>> rows;
  bool ok = false;
  for (int attempt = 0; attempt < kMaxAttempts && !ok; ++attempt) {
    rows.assign(roots.size(), std::vector<double>(k));
    for (auto& row : rows) {
      double total = 0.0;
      for (auto& w : row) total += (w = -std::log1p(-rng.uniform()));
      for (auto& w : row) w = cfg.min_p + spread * (w / total);
    }
    ok = separated(rows, cfg.min_separation);
  }
  if (!ok) {
    throw Error(ErrorKind::InvalidArgument,
                fmt::format("cannot separate {} states by {} with min p {}", cfg.states, cfg.min_separation, cfg.min_p));
  }

  std::vector<std::string> labels;
  std::vector<Transition> ts;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    labels.push_back(fmt::format("q{}", i));
    for (std::size_t x = 0; x < k; ++x) {
      ts.push_back({static_cast<StateId>(i), static_cast<SymbolId>(x),
                    static_cast<StateId>(index[f.find(f.next[roots[i]][x])]), rows[i][x]});
    }
  }
  return DeterministicHmm(synthetic_alphabet(k), std::move(labels), std::move(ts));
}

DeterministicHmm perturb_transition(const DeterministicHmm& model, StateId s, SymbolId x, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidArgument, "probability must lie in (0, 1]");
  const auto* target = model.next(s, x);
  if (!target) throw Error(ErrorKind::InvalidArgument, "no such transition");
  const double rest = 1.0 - target->p;
  if (rest <= 0.0 && p < 1.0) throw Error(ErrorKind::InvalidArgument, "no other transition to rescale");
  auto ts = model.transitions();
  for (auto& t : ts) {
    if (t.from != s) continue;
    t.p = t.symbol == x ? p : t.p * (1.0 - p) / rest;
  }
  std::erase_if(ts, [](const Transition& t) { return t.p <= 0.0; });
  return DeterministicHmm(model.alphabet(), model.states(), std::move(ts));
}

std::vector<double> symbol_timestamps(const SymbolSequence& seq, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> out{0.0};
  out.reserve(seq.size() + 1);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    out.push_back(out.back() + static_cast<double>(seq[i]) + rng.uniform(0.1, 0.9));
  }
  return out;
}

SymbolizerSpec symbol_timestamp_spec(std::size_t symbol_count) {
  if (symbol_count < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 symbols");
  SymbolizerSpec spec;
  spec.mode = SymbolizerMode::InterEventDeltas;
  for (std::size_t i = 1; i < symbol_count; ++i) spec.bin_edges.push_back(static_cast<double>(i));
  return spec;
}

}  // namespace hmmforge
