#include "hmmforge/hmm.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include <fmt/format.h>

#include "hmmforge/error.hpp"

namespace hmmforge {

DeterministicHmm::DeterministicHmm(Alphabet alphabet, std::vector<std::string> states,
                                   std::vector<Transition> transitions)
    : alphabet_(std::move(alphabet)), states_(std::move(states)), transitions_(std::move(transitions)) {
  if (alphabet_.empty()) throw Error(ErrorKind::InvalidModel, "model alphabet is empty");
  std::unordered_set<std::string> seen;
  for (const auto& s : states_) {
    if (!seen.insert(s).second) throw Error(ErrorKind::InvalidModel, "duplicate state label '" + s + "'");
  }
  for (const auto& t : transitions_) {
    if (t.from >= states_.size()) throw Error(ErrorKind::InvalidModel, "transition source out of range");
    if (t.symbol >= alphabet_.size()) throw Error(ErrorKind::InvalidModel, "transition symbol out of range");
  }
  std::stable_sort(transitions_.begin(), transitions_.end(), [](const Transition& a, const Transition& b) {
    return a.from != b.from ? a.from < b.from : a.symbol < b.symbol;
  });

  const std::size_t n = states_.size();
  const std::size_t k = alphabet_.size();
  row_begin_.assign(n + 1, 0);
  for (const auto& t : transitions_) ++row_begin_[t.from + 1];
  for (std::size_t i = 0; i < n; ++i) row_begin_[i + 1] += row_begin_[i];

  table_.assign(n * k, -1);
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    const auto& t = transitions_[i];
    int& slot = table_[t.from * k + t.symbol];
    if (slot < 0) slot = static_cast<int>(i);
  }
}

std::optional<StateId> DeterministicHmm::find_state(std::string_view label) const {
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (states_[i] == label) return static_cast<StateId>(i);
  }
  return std::nullopt;
}

std::span<const Transition> DeterministicHmm::outgoing(StateId s) const {
  return std::span<const Transition>(transitions_).subspan(row_begin_.at(s), row_begin_.at(s + 1) - row_begin_[s]);
}

const Transition* DeterministicHmm::next(StateId s, SymbolId x) const {
  const int i = table_[static_cast<std::size_t>(s) * alphabet_.size() + x];
  return i < 0 ? nullptr : &transitions_[static_cast<std::size_t>(i)];
}

std::string_view to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::RowSum: return "row-sum";
    case ViolationKind::Determinism: return "determinism";
    case ViolationKind::ProbabilityRange: return "probability-range";
    case ViolationKind::DanglingTarget: return "dangling-target";
    case ViolationKind::EmptyModel: return "empty-model";
  }
  return "unknown";
}

std::vector<Violation> validate(const DeterministicHmm& model) {
  std::vector<Violation> out;
  if (model.state_count() == 0) {
    out.push_back({ViolationKind::EmptyModel, std::nullopt, std::nullopt, "model has no states"});
    return out;
  }
  const auto& alpha = model.alphabet();
  for (StateId s = 0; s < model.state_count(); ++s) {
    const auto row = model.outgoing(s);
    const auto& label = model.state_label(s);
    double sum = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& t = row[i];
      sum += t.p;
      if (i > 0 && row[i - 1].symbol == t.symbol) {
        out.push_back({ViolationKind::Determinism, s, t.symbol,
                       fmt::format("duplicate transition on ({}, '{}')", label, alpha.symbol(t.symbol))});
      }
      if (!(t.p > 0.0 && t.p <= 1.0)) {
        out.push_back({ViolationKind::ProbabilityRange, s, t.symbol,
                       fmt::format("probability {} on ({}, '{}') outside (0, 1]", t.p, label,
                                   alpha.symbol(t.symbol))});
      }
      if (t.to >= model.state_count()) {
        out.push_back({ViolationKind::DanglingTarget, s, t.symbol,
                       fmt::format("transition ({}, '{}') targets unknown state", label, alpha.symbol(t.symbol))});
      }
    }
    if (!row.empty() && !(std::abs(sum - 1.0) <= kRowSumTolerance)) {
      out.push_back({ViolationKind::RowSum, s, std::nullopt,
                     fmt::format("outgoing probabilities of {} sum to {:.12g}", label, sum)});
    }
  }
  return out;
}

void require_valid(const DeterministicHmm& model) {
  const auto v = validate(model);
  if (!v.empty()) throw Error(ErrorKind::InvalidModel, v.front().message);
}

graph::Adjacency transition_graph(const DeterministicHmm& model) {
  graph::Adjacency adj(model.state_count());
  for (const auto& t : model.transitions()) {
    if (t.p > 0.0 && t.to < model.state_count()) adj[t.from].push_back(t.to);
  }
  return adj;
}

bool is_irreducible(const DeterministicHmm& model) {
  if (model.state_count() == 0) return false;
  for (StateId s = 0; s < model.state_count(); ++s) {
    if (model.outgoing(s).empty()) return false;
  }
  return graph::strongly_connected(transition_graph(model)).count == 1;
}

void require_irreducible(const DeterministicHmm& model) {
  if (!is_irreducible(model)) {
    throw Error(ErrorKind::NotIrreducible,
                "transition graph is not a single strongly connected component");
  }
}

}  // namespace hmmforge
