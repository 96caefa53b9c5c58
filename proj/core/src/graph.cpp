#include "hmmforge/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>

namespace hmmforge::graph {

Components strongly_connected(const Adjacency& adj) {
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  const std::size_t n = adj.size();
  std::vector<std::size_t> index(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  Components out{std::vector<std::size_t>(n, kUnset), 0};
  std::size_t next_index = 0;

  struct Frame {
    std::size_t node;
    std::size_t edge;
  };
  std::vector<Frame> call;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call.empty()) {
      Frame& f = call.back();
      const std::size_t v = f.node;
      if (f.edge < adj[v].size()) {
        const std::size_t w = adj[v][f.edge++];
        if (index[w] == kUnset) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          out.component[w] = out.count;
        } while (w != v);
        ++out.count;
      }
      call.pop_back();
      if (!call.empty()) {
        const std::size_t parent = call.back().node;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  return out;
}

std::vector<std::size_t> largest_cyclic_component(const Adjacency& adj) {
  const auto comps = strongly_connected(adj);
  std::vector<std::size_t> size(comps.count, 0), first(comps.count, adj.size());
  std::vector<bool> cyclic(comps.count, false);
  for (std::size_t v = 0; v < adj.size(); ++v) {
    const auto c = comps.component[v];
    ++size[c];
    first[c] = std::min(first[c], v);
    for (auto w : adj[v]) {
      if (w == v) cyclic[c] = true;
    }
  }
  for (std::size_t c = 0; c < comps.count; ++c) {
    if (size[c] > 1) cyclic[c] = true;
  }

  std::size_t best = comps.count;
  for (std::size_t c = 0; c < comps.count; ++c) {
    if (!cyclic[c]) continue;
    if (best == comps.count || size[c] > size[best] ||
        (size[c] == size[best] && first[c] < first[best])) {
      best = c;
    }
  }
  std::vector<std::size_t> nodes;
  if (best == comps.count) return nodes;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    if (comps.component[v] == best) nodes.push_back(v);
  }
  return nodes;
}

// Period of a strongly connected graph: gcd over edges (u,v) of
// depth(u) + 1 - depth(v) for BFS depths from node 0.
std::size_t gcd_period(const Adjacency& adj) {
  if (adj.empty()) return 0;
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> depth(adj.size(), kUnset);
  std::queue<std::size_t> q;
  depth[0] = 0;
  q.push(0);
  while (!q.empty()) {
    auto v = q.front();
    q.pop();
    for (auto w : adj[v]) {
      if (depth[w] == kUnset) {
        depth[w] = depth[v] + 1;
        q.push(w);
      }
    }
  }
  std::size_t g = 0;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    if (depth[v] == kUnset) continue;
    for (auto w : adj[v]) {
      if (depth[w] == kUnset) continue;
      const long long diff = static_cast<long long>(depth[v]) + 1 - static_cast<long long>(depth[w]);
      g = std::gcd(g, static_cast<std::size_t>(diff < 0 ? -diff : diff));
    }
  }
  return g;
}

}  // namespace hmmforge::graph
