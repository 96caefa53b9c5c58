#include "hmmforge/inference.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_map>

#include <fmt/format.h>

#include "hmmforge/canonical.hpp"
#include "hmmforge/error.hpp"
#include "hmmforge/graph.hpp"
#include "hmmforge/rng.hpp"
#include "hmmforge/sampling.hpp"
#include "hmmforge/stats.hpp"

namespace hmmforge {

void check(const InferenceConfig& cfg) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1)");
  if (cfg.max_l < 1) throw Error(ErrorKind::InvalidArgument, "max L must be at least 1");
  if (cfg.min_count < 1) throw Error(ErrorKind::InvalidArgument, "min count must be at least 1");
  if (cfg.confidence) check(*cfg.confidence);
}

std::string history_label(const Alphabet& alphabet, std::span<const SymbolId> history) {
  std::string out;
  for (std::size_t i = 0; i < history.size(); ++i) {
    if (i && !alphabet.single_char()) out += '.';
    out += alphabet.symbol(history[i]);
  }
  return out;
}

namespace {

std::uint64_t checked_power(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > (std::uint64_t{1} << 62) / base) throw Error(ErrorKind::InvalidArgument, "history window too large for alphabet");
    r *= base;
  }
  return r;
}

std::vector<SymbolId> decode(std::uint64_t code, std::size_t k, std::size_t len) {
  std::vector<SymbolId> out(len);
  for (std::size_t i = len; i-- > 0;) {
    out[i] = static_cast<SymbolId>(code % k);
    code /= k;
  }
  return out;
}

// Rebuilds the model of a candidate from its counts and successor table.
DeterministicHmm assemble(const Alphabet& alphabet, const std::vector<std::string>& labels,
                          const std::vector<std::vector<std::uint64_t>>& counts,
                          const std::vector<std::vector<long>>& targets) {
  std::vector<Transition> ts;
  for (std::size_t s = 0; s < labels.size(); ++s) {
    const double total = static_cast<double>(std::accumulate(counts[s].begin(), counts[s].end(), std::uint64_t{0}));
    for (std::size_t x = 0; x < alphabet.size(); ++x) {
      if (targets[s][x] < 0 || counts[s][x] == 0) continue;
      ts.push_back({static_cast<StateId>(s), static_cast<SymbolId>(x), static_cast<StateId>(targets[s][x]),
                    static_cast<double>(counts[s][x]) / total});
    }
  }
  return DeterministicHmm(alphabet, labels, std::move(ts));
}

}  // namespace

CandidateModel build_candidate(const SymbolSequence& seq, std::size_t window, std::uint64_t min_count) {
  if (window < 1) throw Error(ErrorKind::InvalidArgument, "window length must be at least 1");
  if (seq.size() < window + 1) {
    throw Error(ErrorKind::InsufficientData,
                fmt::format("sequence of length {} is too short for window {}", seq.size(), window));
  }
  const auto& alphabet = seq.alphabet();
  const std::uint64_t k = alphabet.size();
  const std::uint64_t span_l = checked_power(k, window);
  const std::uint64_t span_l1 = checked_power(k, window + 1);

  // count(h.x) keyed by the (L+1)-window code.
  std::unordered_map<std::uint64_t, std::uint64_t> window_counts;
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    code = (code * k + seq[i]) % span_l1;
    if (i >= window) ++window_counts[code];
  }
  std::unordered_map<std::uint64_t, std::uint64_t> history_total;
  for (const auto& [c, n] : window_counts) history_total[c / k] += n;

  CandidateModel cand;
  cand.window = window;
  std::vector<std::uint64_t> kept;
  for (const auto& [h, n] : history_total) {
    cand.history_counts[history_label(alphabet, decode(h, k, window))] = n;
    if (n >= min_count) kept.push_back(h);
  }
  if (kept.empty()) {
    throw Error(ErrorKind::InsufficientData, fmt::format("no history of length {} occurs {} times", window, min_count));
  }
  std::sort(kept.begin(), kept.end());
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < kept.size(); ++i) index.emplace(kept[i], i);

  const std::size_t n = kept.size();
  std::vector<std::vector<std::uint64_t>> counts(n, std::vector<std::uint64_t>(k, 0));
  std::vector<std::vector<long>> targets(n, std::vector<long>(k, -1));
  graph::Adjacency adj(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::uint64_t x = 0; x < k; ++x) {
      auto wc = window_counts.find(kept[s] * k + x);
      if (wc == window_counts.end()) continue;
      auto to = index.find((kept[s] * k + x) % span_l);
      if (to == index.end()) continue;  // successor history was dropped
      counts[s][x] = wc->second;
      targets[s][x] = static_cast<long>(to->second);
      adj[s].push_back(to->second);
    }
  }

  const auto component = graph::largest_cyclic_component(adj);
  if (component.empty()) {
    throw Error(ErrorKind::InsufficientData, fmt::format("window {} leaves no recurrent set of histories", window));
  }
  std::vector<long> remap(n, -1);
  for (std::size_t i = 0; i < component.size(); ++i) remap[component[i]] = static_cast<long>(i);

  std::vector<std::string> labels;
  std::vector<std::vector<std::uint64_t>> kept_counts;
  std::vector<std::vector<long>> kept_targets;
  for (auto s : component) {
    labels.push_back(history_label(alphabet, decode(kept[s], k, window)));
    std::vector<std::uint64_t> c(k, 0);
    std::vector<long> t(k, -1);
    for (std::size_t x = 0; x < k; ++x) {
      if (targets[s][x] >= 0 && remap[static_cast<std::size_t>(targets[s][x])] >= 0) {
        c[x] = counts[s][x];
        t[x] = remap[static_cast<std::size_t>(targets[s][x])];
      }
    }
    kept_counts.push_back(std::move(c));
    kept_targets.push_back(std::move(t));
  }
  cand.model = assemble(alphabet, labels, kept_counts, kept_targets);
  cand.symbol_counts = std::move(kept_counts);
  cand.members.reserve(labels.size());
  for (auto& l : labels) cand.members.push_back({l});
  return cand;
}

namespace {

// Union-find over candidate states with the fold operation that keeps the
// quotient deterministic.
class MergeState {
 public:
  MergeState(const CandidateModel& cand, double alpha) : alpha_(alpha) {
    const auto& m = cand.model;
    const std::size_t n = m.state_count();
    k_ = m.alphabet().size();
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), 0);
    counts_ = cand.symbol_counts;
    targets_.assign(n, std::vector<long>(k_, -1));
    for (const auto& t : m.transitions()) targets_[t.from][t.symbol] = t.to;
    members_ = cand.members;
    changed_at_.assign(n, 0);
    root_reject_.assign(n * n, kNever);
    row_clean_at_.assign(n, kNever);
  }

  std::size_t find(std::size_t s) {
    while (parent_[s] != s) {
      parent_[s] = parent_[parent_[s]];
      s = parent_[s];
    }
    return s;
  }

  // Returns true after merging the first eligible pair, false when none is left.
  bool merge_first_eligible() {
    std::vector<std::size_t> alive;
    for (std::size_t s = 0; s < parent_.size(); ++s) {
      if (parent_[s] == s) alive.push_back(s);
    }
    // Latest modification among alive states with index >= alive[i].
    std::vector<std::uint64_t> suffix_changed(alive.size() + 1, 0);
    for (std::size_t i = alive.size(); i-- > 0;) {
      suffix_changed[i] = std::max(suffix_changed[i + 1], changed_at_[alive[i]]);
    }
    for (std::size_t ia = 0; ia < alive.size(); ++ia) {
      const auto a = alive[ia];
      // A row whose pairs were all rejected at the root, with nothing touched
      // since, is still fully rejected.
      if (row_clean_at_[a] != kNever && row_clean_at_[a] >= suffix_changed[ia]) continue;
      bool clean = true;
      for (std::size_t ib = ia + 1; ib < alive.size(); ++ib) {
        const auto b = alive[ib];
        const std::uint64_t stamp = root_reject_[a * parent_.size() + b];
        if (stamp != kNever && stamp >= std::max(changed_at_[a], changed_at_[b])) continue;
        switch (compatible(a, b)) {
          case Outcome::Compatible:
            fold(a, b);
            return true;
          case Outcome::RootReject:
            root_reject_[a * parent_.size() + b] = clock_;
            break;
          case Outcome::DeepReject:
            clean = false;
            break;
        }
      }
      if (clean) row_clean_at_[a] = clock_;
    }
    return false;
  }

  CandidateModel finish(const CandidateModel& cand) {
    std::vector<long> remap(parent_.size(), -1);
    std::vector<std::size_t> reps;
    for (std::size_t s = 0; s < parent_.size(); ++s) {
      if (parent_[s] == s) {
        remap[s] = static_cast<long>(reps.size());
        reps.push_back(s);
      }
    }
    std::vector<std::string> labels;
    std::vector<std::vector<std::uint64_t>> counts;
    std::vector<std::vector<long>> targets;
    std::vector<std::vector<std::string>> members;
    for (auto s : reps) {
      labels.push_back(cand.model.state_label(static_cast<StateId>(s)));
      counts.push_back(counts_[s]);
      std::vector<long> t(k_, -1);
      for (std::size_t x = 0; x < k_; ++x) {
        if (targets_[s][x] >= 0) t[x] = remap[find(static_cast<std::size_t>(targets_[s][x]))];
      }
      targets.push_back(std::move(t));
      members.push_back(members_[s]);
    }
    CandidateModel out;
    out.window = cand.window;
    out.history_counts = cand.history_counts;
    out.model = assemble(cand.model.alphabet(), labels, counts, targets);
    out.symbol_counts = std::move(counts);
    out.members = std::move(members);
    out.merges = cand.merges + merges_;
    return out;
  }

 private:
  enum class Outcome { Compatible, RootReject, DeepReject };
  static constexpr std::uint64_t kNever = std::numeric_limits<std::uint64_t>::max();

  bool same_distribution(std::size_t a, std::size_t b) const {
    return !stats::chi_squared_homogeneity(counts_[a], counts_[b], alpha_).reject;
  }

  Outcome compatible(std::size_t a, std::size_t b) {
    if (!same_distribution(a, b)) return Outcome::RootReject;
    std::vector<std::pair<std::size_t, std::size_t>> stack;
    std::vector<std::pair<std::size_t, std::size_t>> seen{{std::min(a, b), std::max(a, b)}};
    auto push_successors = [&](std::size_t u, std::size_t v) {
      for (std::size_t x = 0; x < k_; ++x) {
        if (targets_[u][x] >= 0 && targets_[v][x] >= 0) {
          stack.emplace_back(static_cast<std::size_t>(targets_[u][x]), static_cast<std::size_t>(targets_[v][x]));
        }
      }
    };
    push_successors(a, b);
    while (!stack.empty()) {
      auto [u, v] = stack.back();
      stack.pop_back();
      u = find(u);
      v = find(v);
      if (u == v) continue;
      const std::pair key{std::min(u, v), std::max(u, v)};
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
      seen.push_back(key);
      // Successor pairs too sparse for the test carry no evidence either way.
      const auto deep = stats::chi_squared_homogeneity(counts_[u], counts_[v], alpha_);
      if (deep.reject && !deep.fallback) return Outcome::DeepReject;
      push_successors(u, v);
    }
    return Outcome::Compatible;
  }

  void fold(std::size_t a, std::size_t b) {
    ++clock_;
    ++merges_;
    std::vector<std::pair<std::size_t, std::size_t>> queue{{a, b}};
    while (!queue.empty()) {
      auto [u, v] = queue.back();
      queue.pop_back();
      u = find(u);
      v = find(v);
      if (u == v) continue;
      const auto keep = std::min(u, v), gone = std::max(u, v);
      parent_[gone] = keep;
      changed_at_[keep] = clock_;
      for (std::size_t x = 0; x < k_; ++x) {
        counts_[keep][x] += counts_[gone][x];
        if (targets_[gone][x] < 0) continue;
        if (targets_[keep][x] < 0) {
          targets_[keep][x] = targets_[gone][x];
        } else {
          queue.emplace_back(static_cast<std::size_t>(targets_[keep][x]), static_cast<std::size_t>(targets_[gone][x]));
        }
      }
      auto& mk = members_[keep];
      mk.insert(mk.end(), members_[gone].begin(), members_[gone].end());
      members_[gone].clear();
    }
  }

  double alpha_;
  std::size_t k_ = 0;
  std::vector<std::size_t> parent_;
  std::vector<std::vector<std::uint64_t>> counts_;
  std::vector<std::vector<long>> targets_;
  std::vector<std::vector<std::string>> members_;
  std::uint64_t clock_ = 1;
  std::size_t merges_ = 0;
  std::vector<std::uint64_t> changed_at_;
  std::vector<std::uint64_t> root_reject_;  // dense [a][b] stamp of last root rejection
  std::vector<std::uint64_t> row_clean_at_;
};

}  // namespace

CandidateModel merge_equivalent_states(CandidateModel cand, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1)");
  if (cand.model.state_count() < 2) return cand;
  MergeState state(cand, alpha);
  while (state.merge_first_eligible()) {
  }
  return state.finish(cand);
}

namespace {

struct Resynced {
  std::vector<std::uint64_t> counts;  // state x symbol
  std::vector<std::uint64_t> visits;
  std::size_t skipped = 0;
};

// Like trace(), but a symbol the model cannot follow is skipped and the rest
// of the sequence is synchronized again.
Resynced trace_resync(const DeterministicHmm& model, const SymbolSequence& seq) {
  const std::size_t k = model.alphabet().size();
  Resynced out{std::vector<std::uint64_t>(model.state_count() * k, 0), std::vector<std::uint64_t>(model.state_count(), 0), 0};
  const auto& data = seq.data();
  for (std::size_t pos = 0; pos < data.size();) {
    const SymbolSequence rest(seq.alphabet(), std::vector<SymbolId>(data.begin() + static_cast<std::ptrdiff_t>(pos), data.end()));
    const auto tc = trace(model, rest);
    for (std::size_t i = 0; i < out.counts.size(); ++i) out.counts[i] += tc.transition_counts[i];
    for (std::size_t s = 0; s < out.visits.size(); ++s) out.visits[s] += tc.visits[s];
    if (!tc.broken_at) break;
    pos += *tc.broken_at + 1;
    ++out.skipped;
  }
  return out;
}

void stabilization_direction(const CandidateModel& source, const CandidateModel& target, std::size_t length,
                             std::uint64_t seed, double per_test_alpha, StabilizationResult& r) {
  const auto seq = generate(source.model, length, seed);
  const auto rt = trace_resync(target.model, seq);
  r.skipped += rt.skipped;
  const std::size_t k = target.model.alphabet().size();
  for (std::size_t s = 0; s < target.model.state_count(); ++s) {
    if (rt.visits[s] == 0) continue;
    const std::span<const std::uint64_t> sample(rt.counts.data() + s * k, k);
    const auto t = stats::chi_squared_homogeneity(sample, target.symbol_counts[s], per_test_alpha);
    ++r.tests;
    // Sparse states carry no evidence either way.
    if (t.reject && !t.fallback) ++r.rejections;
  }
}

}  // namespace

StabilizationResult levels_equivalent(const CandidateModel& a, const CandidateModel& b, const StabilizationOptions& options) {
  StabilizationResult r;
  if (isomorphic(a.model, b.model)) {
    r.equivalent = true;
    r.isomorphic = true;
    return r;
  }
  const auto states = a.model.state_count() + b.model.state_count();
  r.per_test_alpha = options.correction == Correction::Bonferroni ? options.alpha / static_cast<double>(states)
                                                                   : options.alpha;
  stabilization_direction(a, b, options.length, mix_seed(options.seed, 1), r.per_test_alpha, r);
  stabilization_direction(b, a, options.length, mix_seed(options.seed, 2), r.per_test_alpha, r);
  r.equivalent = r.rejections == 0;
  return r;
}

InferenceResult infer(const SymbolSequence& seq, const InferenceConfig& cfg) {
  check(cfg);
  InferenceResult result;

  auto summarize = [](const CandidateModel& c, std::size_t candidate_states) {
    WindowSummary w;
    w.window = c.window;
    w.candidate_states = candidate_states;
    w.merged_states = c.model.state_count();
    w.merges = c.merges;
    return w;
  };
  auto level = [&](std::size_t window) {
    auto cand = build_candidate(seq, window, cfg.min_count);
    const auto before = cand.model.state_count();
    auto merged = merge_equivalent_states(std::move(cand), cfg.alpha);
    return std::pair{std::move(merged), before};
  };

  auto [current, current_states] = level(1);
  result.levels.push_back(summarize(current, current_states));
  std::size_t window = 1;
  bool stabilized = false;
  while (window < cfg.max_l) {
    std::optional<std::pair<CandidateModel, std::size_t>> next;
    try {
      next = level(window + 1);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InsufficientData) throw;
      break;
    }
    StabilizationOptions so;
    so.alpha = cfg.alpha;
    so.seed = mix_seed(cfg.seed, window);
    so.length = seq.size();
    so.correction = cfg.correction;
    const bool same = levels_equivalent(current, next->first, so).equivalent;
    result.levels.back().equivalent_to_next = same;
    if (same) {
      stabilized = true;
      break;
    }
    current = std::move(next->first);
    ++window;
    result.levels.push_back(summarize(current, next->second));
  }

  result.model = std::move(current.model);
  result.window = window;
  result.stabilized = stabilized;
  if (cfg.confidence) {
    try {
      result.confidence = assess_confidence(result.model, seq, *cfg.confidence);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::GammaOutOfRange) throw;
      ConfidenceReport r;
      r.note = e.what();
      result.confidence = std::move(r);
    }
  }
  return result;
}

}  // namespace hmmforge
