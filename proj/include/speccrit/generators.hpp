#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "speccrit/graph.hpp"

namespace speccrit {

enum class Model { ER, BA };

struct GenSpec {
  Model model = Model::BA;
  std::size_t n = 1000;
  double p = 0.0045;  // ER
  std::size_t m = 2;  // BA
  std::uint64_t seed = 0;

  /// Throws InvalidArgument unless 0 < p < 1 (ER) or 1 <= m < n (BA).
  void validate() const;
};

/// Raw G(n, p) edge list over ids 0..n-1 (geometric skipping, O(n + m)).
std::vector<Edge> er_edges(std::size_t n, double p, std::uint64_t seed);

/// Largest connected component of G(n, p). Throws if it has fewer than 2 nodes.
Graph gen_er(std::size_t n, double p, std::uint64_t seed);

/// Preferential attachment from a complete core of m+1 nodes; every later
/// node attaches m edges to distinct existing nodes with probability
/// proportional to their current degree. Connected by construction.
Graph gen_ba(std::size_t n, std::size_t m, std::uint64_t seed);

Graph generate(const GenSpec& spec);

struct FragileResult {
  Graph graph;  // connected, state right before the fragmenting removal
  NodeId fragmenting_node = 0;
  ComponentSet reference_components;  // after removing fragmenting_node from graph
  std::vector<NodeId> removal_trace;  // committed removals, in order
  double fragility_fraction = 0.05;
};

inline constexpr double kDefaultFragilityFraction = 0.05;
inline constexpr std::size_t kFragileMinNodes = 10;

/// Degree-biased attrition on `base`'s largest component: sample a node with
/// probability proportional to degree; if removing it splits the component so
/// that the non-largest parts hold at least `fraction` of the remaining
/// nodes, stop and return the pre-removal graph; otherwise commit the removal,
/// keep the largest component and repeat. Throws InvalidArgument for a
/// fraction outside (0, 0.5] and Error if the component drops below
/// kFragileMinNodes first.
FragileResult make_fragile(const Graph& base, double fraction, std::uint64_t seed);

/// Generates `base` (must yield >= 50 nodes) and runs make_fragile on it.
FragileResult gen_fragile(const GenSpec& base, double fraction, std::uint64_t seed);

/// CSV with header: step,node_id,outcome (committed removals, then the
/// fragmenting node).
void write_removal_trace_csv(std::ostream& out, const FragileResult& fr);

}  // namespace speccrit
