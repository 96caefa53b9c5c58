#pragma once

#include <cstddef>
#include <vector>

namespace hmmforge::graph {

using Adjacency = std::vector<std::vector<std::size_t>>;

struct Components {
  std::vector<std::size_t> component;  // node -> component id
  std::size_t count = 0;
};

/// Tarjan's algorithm, iterative. Component ids are assigned in the order the
/// components are completed.
Components strongly_connected(const Adjacency& adj);

/// Nodes of the largest component that contains a cycle (self-loop or size > 1),
/// sorted ascending. Ties go to the component holding the smallest node.
/// Empty when the graph is acyclic.
std::vector<std::size_t> largest_cyclic_component(const Adjacency& adj);

std::size_t gcd_period(const Adjacency& adj);

}  // namespace hmmforge::graph
