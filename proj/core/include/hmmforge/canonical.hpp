#pragma once

#include <cstdint>
#include <string>

#include "hmmforge/hmm.hpp"

namespace hmmforge {

/// Reorders states into a label-independent order: breadth-first numbering
/// (children in symbol order) from the start state whose resulting encoding is
/// lexicographically smallest. Labels travel with their states. Two isomorphic
/// irreducible models yield the same structure and probabilities in the same
/// order.
DeterministicHmm canonical_form(const DeterministicHmm& model);

/// Digest of the canonical structure and exact probability bits; ignores labels.
std::uint64_t canonical_digest(const DeterministicHmm& model);

/// Graph isomorphism respecting symbols, with probabilities equal within `tol`.
/// Intended for irreducible models (every state reachable from any other).
bool isomorphic(const DeterministicHmm& a, const DeterministicHmm& b, double tol = 1e-9);

/// Same model with states renamed and reordered by `order` (new index i holds
/// old state order[i]); labels come from `labels` when non-empty.
DeterministicHmm relabel(const DeterministicHmm& model, const std::vector<StateId>& order,
                         const std::vector<std::string>& labels = {});

}  // namespace hmmforge
