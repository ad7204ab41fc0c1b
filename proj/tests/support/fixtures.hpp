#pragma once

#include <vector>

#include "speccrit/graph.hpp"
#include "speccrit/rng.hpp"

namespace speccrit::testing {

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(e);
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(e);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph::from_edges(e);
}

// Center 0, leaves 1..leaves.
inline Graph star_graph(std::size_t leaves) {
  std::vector<Edge> e;
  for (NodeId i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph::from_edges(e);
}

inline constexpr NodeId kBarbellCut = 10;

// Two K5 (0..4 and 5..9) plus cut node 10 adjacent to all ten clique nodes.
inline Graph barbell_graph() {
  std::vector<Edge> e;
  for (NodeId i = 0; i < 5; ++i)
    for (NodeId j = i + 1; j < 5; ++j) {
      e.emplace_back(i, j);
      e.emplace_back(i + 5, j + 5);
    }
  for (NodeId i = 0; i < 10; ++i) e.emplace_back(kBarbellCut, i);
  return Graph::from_edges(e);
}

// Connected random graph: random spanning tree plus extra edges with prob p.
inline Graph random_connected(std::size_t n, double p, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Edge> e;
  for (NodeId v = 1; v < n; ++v) e.emplace_back(rng.below(v), v);
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b)
      if (rng.uniform() < p) e.emplace_back(a, b);
  return Graph::from_edges(e);
}

// Every connected graph on the labelled node set 0..n-1, by enumerating all
// 2^(n(n-1)/2) edge masks. Practical up to n = 7.
template <typename Visit>
void for_each_connected_graph(std::size_t n, Visit&& visit) {
  std::vector<Edge> pairs;
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  std::vector<Edge> e;
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) < n - 1) continue;
    e.clear();
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1) e.push_back(pairs[i]);
    Graph g = Graph::from_edges(e);
    if (g.node_count() != n || !is_connected(g)) continue;
    visit(g);
  }
}

}  // namespace speccrit::testing
