#include "hmmforge/sampling.hpp"

#include <map>
#include <numeric>

#include "hmmforge/error.hpp"
#include "hmmforge/rng.hpp"

namespace hmmforge {

namespace {

template <typename Range, typename Weight>
std::size_t pick(const Range& items, double u, Weight weight) {
  double cum = 0.0;
  std::size_t i = 0;
  for (const auto& item : items) {
    cum += weight(item);
    if (u < cum) return i;
    ++i;
  }
  return items.size() - 1;  // u landed in rounding slack at the top
}

}  // namespace

SymbolSequence generate(const DeterministicHmm& model, std::size_t length, std::uint64_t seed,
                        std::optional<StateId> start) {
  require_valid(model);
  Rng rng(seed);
  StateId state;
  if (start) {
    if (*start >= model.state_count()) throw Error(ErrorKind::InvalidArgument, "start state out of range");
    state = *start;
  } else {
    const auto pi = stationary_distribution(model);
    state = static_cast<StateId>(pick(pi.probabilities, rng.uniform(), [](double p) { return p; }));
  }

  std::vector<SymbolId> out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    const auto row = model.outgoing(state);
    if (row.empty()) {
      throw Error(ErrorKind::NotIrreducible, "generation reached state '" + model.state_label(state) +
                                                 "' with no outgoing transitions");
    }
    const auto& t = row[pick(row, rng.uniform(), [](const Transition& tr) { return tr.p; })];
    out.push_back(t.symbol);
    state = t.to;
  }
  return SymbolSequence(model.alphabet(), std::move(out));
}

std::uint64_t TraceCounts::total_visits() const {
  return std::accumulate(visits.begin(), visits.end(), std::uint64_t{0});
}

std::size_t TraceCounts::consumed() const { return static_cast<std::size_t>(total_visits()); }

std::pair<StateId, std::size_t> synchronize(const DeterministicHmm& model, const SymbolSequence& seq) {
  if (model.state_count() == 0) throw Error(ErrorKind::InvalidModel, "model has no states");
  // Lockstep over all candidate starts. Paths that meet stay together (the
  // model is deterministic), so each current state keeps only its smallest start.
  std::map<StateId, StateId> alive;  // current state -> smallest start reaching it
  for (StateId s = 0; s < model.state_count(); ++s) alive.emplace(s, s);

  StateId best = 0;
  std::size_t pos = 0;
  for (; pos < seq.size() && alive.size() > 1; ++pos) {
    std::map<StateId, StateId> next;
    for (const auto& [cur, origin] : alive) {
      const auto* t = model.next(cur, seq[pos]);
      if (!t || t->to >= model.state_count()) continue;
      auto [it, inserted] = next.emplace(t->to, origin);
      if (!inserted && origin < it->second) it->second = origin;
    }
    if (next.empty()) {
      // Everyone broke here; the longest prefix is pos, smallest origin wins.
      StateId smallest = alive.begin()->second;
      for (const auto& kv : alive) smallest = std::min(smallest, kv.second);
      return {smallest, pos};
    }
    alive.swap(next);
  }
  best = alive.begin()->second;
  for (const auto& kv : alive) best = std::min(best, kv.second);
  if (alive.size() == 1) {
    // Single surviving path: follow it to find how far it gets.
    StateId cur = alive.begin()->first;
    for (; pos < seq.size(); ++pos) {
      const auto* t = model.next(cur, seq[pos]);
      if (!t || t->to >= model.state_count()) break;
      cur = t->to;
    }
  }
  return {best, pos};
}

TraceCounts trace(const DeterministicHmm& model, const SymbolSequence& seq, std::optional<StateId> start) {
  if (!(seq.alphabet() == model.alphabet())) {
    throw Error(ErrorKind::AlphabetMismatch, "sequence alphabet differs from model alphabet");
  }
  TraceCounts out;
  out.alphabet_size = model.alphabet().size();
  out.visits.assign(model.state_count(), 0);
  out.transition_counts.assign(model.state_count() * out.alphabet_size, 0);
  if (start) {
    if (*start >= model.state_count()) throw Error(ErrorKind::InvalidArgument, "start state out of range");
    out.start = *start;
  } else {
    out.start = synchronize(model, seq).first;
    out.synchronized = true;
  }

  StateId state = out.start;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto* t = model.next(state, seq[i]);
    if (!t || t->to >= model.state_count()) {
      out.broken_at = i;
      break;
    }
    ++out.visits[state];
    ++out.transition_counts[static_cast<std::size_t>(state) * out.alphabet_size + seq[i]];
    state = t->to;
  }
  out.end = state;
  return out;
}

}  // namespace hmmforge
