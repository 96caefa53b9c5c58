#include "hmmforge/metric.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "hmmforge/canonical.hpp"
#include "hmmforge/error.hpp"
#include "hmmforge/graph.hpp"
#include "hmmforge/rng.hpp"
#include "hmmforge/sampling.hpp"
#include "hmmforge/stationary.hpp"

namespace hmmforge {

namespace {

// ceil() that ignores representation noise such as 10 / (5/6 * 0.1) = 120.00000000000001.
std::uint64_t ceil_tolerant(double x) { return static_cast<std::uint64_t>(std::ceil(x - 1e-9)); }

void require_same_alphabet(const DeterministicHmm& a, const DeterministicHmm& b) {
  if (!(a.alphabet() == b.alphabet())) {
    throw Error(ErrorKind::AlphabetMismatch, "models are defined over different alphabets");
  }
}

DirectionResult run_direction(const DeterministicHmm& source, const DeterministicHmm& target, std::size_t length,
                              std::uint64_t seed, double per_test_alpha) {
  DirectionResult out;
  const auto seq = generate(source, length, seed);
  const auto tc = trace(target, seq);
  if (tc.broken_at) {
    out.broken_at = tc.broken_at;
    return out;
  }
  const std::size_t k = target.alphabet().size();
  out.equivalent = true;
  for (StateId s = 0; s < target.state_count(); ++s) {
    if (tc.visits[s] == 0) continue;
    std::vector<std::uint64_t> observed(k);
    std::vector<double> probs(k, 0.0);
    for (SymbolId x = 0; x < k; ++x) {
      observed[x] = tc.count(s, x);
      if (const auto* t = target.next(s, x)) probs[x] = t->p;
    }
    StateTest st{target.state_label(s), tc.visits[s], stats::chi_squared_goodness_of_fit(observed, probs, per_test_alpha)};
    if (st.test.reject) out.equivalent = false;
    out.tests.push_back(std::move(st));
  }
  return out;
}

}  // namespace

std::uint64_t required_length_clt(const DeterministicHmm& model, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1)");
  const auto pi = stationary_distribution(model);
  std::uint64_t d = 0;
  for (const auto& t : model.transitions()) {
    d = std::max(d, ceil_tolerant(kCltMinExpected / (pi[t.from] * t.p)));
    if (t.p < 1.0) d = std::max(d, ceil_tolerant(kCltMinExpected / (pi[t.from] * (1.0 - t.p))));
  }
  return d;
}

EquivalenceResult equivalent(const DeterministicHmm& g1, const DeterministicHmm& g2, const EquivalenceOptions& options) {
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1)");
  require_same_alphabet(g1, g2);
  for (const auto* g : {&g1, &g2}) {
    require_valid(*g);
    require_irreducible(*g);
  }
  const auto c1 = canonical_form(g1);
  const auto c2 = canonical_form(g2);
  const auto d1 = canonical_digest(c1);
  const auto d2 = canonical_digest(c2);

  EquivalenceResult r;
  r.length = std::max<std::size_t>({required_length_clt(c1, options.alpha), required_length_clt(c2, options.alpha),
                                    options.length.value_or(0)});
  if (r.length > options.max_length) {
    r.length = options.max_length;
    r.length_capped = true;
  }
  r.per_test_alpha = options.correction == Correction::Bonferroni
                         ? options.alpha / static_cast<double>(c1.state_count() + c2.state_count())
                         : options.alpha;
  r.forward = run_direction(c1, c2, r.length, mix_seed(mix_seed(options.seed, d1), d2), r.per_test_alpha);
  r.backward = run_direction(c2, c1, r.length, mix_seed(mix_seed(options.seed, d2), d1), r.per_test_alpha);
  r.equivalent = r.forward.equivalent && r.backward.equivalent;
  return r;
}

PruneStages prune_staged(const DeterministicHmm& model, double pth) {
  require_valid(model);
  const auto& alphabet = model.alphabet();
  const std::size_t n = model.state_count();

  std::vector<Transition> kept;
  for (const auto& t : model.transitions()) {
    if (t.p > pth) kept.push_back(t);
  }
  PruneStages out{DeterministicHmm(alphabet, model.states(), kept), {}, DeterministicHmm(alphabet, {}, {}), std::nullopt};

  // Iteratively drop states left without outgoing transitions.
  std::vector<bool> alive(n, true);
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::size_t> out_degree(n, 0);
    for (const auto& t : kept) {
      if (alive[t.from] && alive[t.to]) ++out_degree[t.from];
    }
    std::vector<std::string> round;
    for (std::size_t s = 0; s < n; ++s) {
      if (alive[s] && out_degree[s] == 0) round.push_back(model.state_label(static_cast<StateId>(s)));
    }
    for (std::size_t s = 0; s < n; ++s) {
      if (out_degree[s] == 0) alive[s] = false;
    }
    if (!round.empty()) {
      out.absorbing.push_back(std::move(round));
      changed = true;
    }
  }
  graph::Adjacency adj(n);
  for (const auto& t : kept) {
    if (alive[t.from] && alive[t.to]) adj[t.from].push_back(t.to);
  }
  const auto component = graph::largest_cyclic_component(adj);
  if (component.empty()) return out;

  std::vector<long> remap(n, -1);
  std::vector<std::string> labels;
  for (auto s : component) {
    remap[s] = static_cast<long>(labels.size());
    labels.push_back(model.state_label(static_cast<StateId>(s)));
  }
  std::vector<Transition> inside;
  for (const auto& t : kept) {
    if (remap[t.from] >= 0 && remap[t.to] >= 0) {
      inside.push_back({static_cast<StateId>(remap[t.from]), t.symbol, static_cast<StateId>(remap[t.to]), t.p});
    }
  }
  out.trimmed = DeterministicHmm(alphabet, labels, inside);

  // Rows that lost nothing keep their exact probabilities.
  std::vector<double> row(labels.size(), 0.0);
  std::vector<std::size_t> kept_out(labels.size(), 0), original_out(labels.size(), 0);
  for (const auto& t : inside) {
    row[t.from] += t.p;
    ++kept_out[t.from];
  }
  for (const auto& t : model.transitions()) {
    if (remap[t.from] >= 0) ++original_out[static_cast<std::size_t>(remap[t.from])];
  }
  for (auto& t : inside) {
    if (kept_out[t.from] != original_out[t.from]) t.p /= row[t.from];
  }
  out.result = DeterministicHmm(alphabet, std::move(labels), std::move(inside));
  return out;
}

std::optional<DeterministicHmm> prune(const DeterministicHmm& model, double pth) {
  return prune_staged(model, pth).result;
}

DistanceResult distance(const DeterministicHmm& g1, const DeterministicHmm& g2, const EquivalenceOptions& options) {
  require_same_alphabet(g1, g2);
  for (const auto* g : {&g1, &g2}) {
    require_valid(*g);
    require_irreducible(*g);
  }
  std::set<double> candidates{0.0};
  for (const auto* g : {&g1, &g2}) {
    for (const auto& t : g->transitions()) candidates.insert(t.p);
  }

  DistanceResult r;
  r.alpha = options.alpha;
  for (const double pth : candidates) {
    const auto a = prune(g1, pth);
    const auto b = prune(g2, pth);
    PruneStep step{pth, false, a.has_value(), b.has_value(), 0};
    if (!a && !b) {
      step.equivalent = true;
      r.steps.push_back(step);
      r.distance = pth;
      r.degenerate = true;
      return r;
    }
    if (a && b) {
      const auto eq = equivalent(*a, *b, options);
      step.equivalent = eq.equivalent;
      step.length = eq.length;
    }
    r.steps.push_back(step);
    if (step.equivalent) {
      r.distance = pth;
      r.sequence_length = step.length;
      return r;
    }
  }
  r.distance = 1.0;
  r.maximal = true;
  return r;
}

}  // namespace hmmforge
