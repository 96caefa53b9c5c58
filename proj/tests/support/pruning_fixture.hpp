#pragma once

#include "hmmforge/hmm.hpp"

namespace hmmforge::testing {

// A -> B, C carry the bulk; A --c(0.002)--> E --a--> D and D has no way out.
// Pruning at 0.002 cuts the c-edge, D is absorbing, removing it leaves E
// absorbing, and A's row is rescaled by 1/0.998.
inline DeterministicHmm pruning_model() {
  const Alphabet abc({"a", "b", "c"});
  return DeterministicHmm(abc, {"A", "B", "C", "D", "E"},
                          {{0, 0, 1, 0.7}, {0, 1, 2, 0.298}, {0, 2, 4, 0.002},
                           {1, 0, 0, 0.5}, {1, 1, 2, 0.5},
                           {2, 0, 0, 1.0},
                           {4, 0, 3, 1.0}});
}

inline constexpr double kPruningThreshold = 0.002;

}  // namespace hmmforge::testing
