#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace speccrit {

using NodeId = std::uint64_t;  // external, stable across removals
using Index = std::uint32_t;   // internal, contiguous 0..n-1

using Edge = std::pair<NodeId, NodeId>;

/// Immutable undirected simple graph in CSR form.
///
/// Internal indices are assigned in ascending order of external id, so two
/// graphs built from the same edge set (in any order) are identical, and an
/// induced subgraph lists its nodes in the same relative order as its parent.
/// Adjacency lists are sorted.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Duplicate and reversed edges collapse to one;
  /// a self-loop or an empty list throws InvalidArgument.
  static Graph from_edges(std::span<const Edge> edges);

  /// Builds from per-node sorted-or-not neighbor lists over internal indices.
  /// `ids` must be strictly ascending. Lists must be symmetric and loop-free.
  /// Isolated nodes are allowed here (they arise from removals).
  static Graph from_adjacency(std::vector<NodeId> ids, std::vector<std::vector<Index>> adjacency);

  std::size_t node_count() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  NodeId id(Index v) const { return ids_[v]; }
  std::span<const NodeId> ids() const noexcept { return ids_; }

  std::size_t degree(Index v) const { return offsets_[v + 1] - offsets_[v]; }
  std::span<const Index> neighbors(Index v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }

  bool contains(NodeId id) const noexcept;
  /// Internal index of an external id; throws InvalidArgument if absent.
  Index index_of(NodeId id) const;
  bool has_edge(Index u, Index v) const;

  /// Each undirected edge once, as external ids with first < second,
  /// lexicographically sorted.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<NodeId> ids_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Index> targets_;
  std::size_t edge_count_ = 0;
};

inline Graph build_graph(std::span<const Edge> edges) { return Graph::from_edges(edges); }

/// h-hop neighborhood of a node: the induced subgraph on every node within
/// BFS distance h, center included.
struct Subgraph {
  std::vector<Index> parent_map;  // subgraph index -> parent index
  Graph graph;
  Index center = 0;  // index of the center inside `graph`
};

/// Reusable BFS scratch space. Visiting uses an epoch stamp, so successive
/// searches on the same graph cost O(ball) rather than O(n).
class BfsWorkspace {
 public:
  explicit BfsWorkspace(std::size_t n = 0) { reserve(n); }

  void reserve(std::size_t n);

  /// Nodes within `h` hops of `source`, in BFS order (source first).
  /// `distance(v)` is valid for returned nodes until the next call.
  std::span<const Index> ball(const Graph& g, Index source, std::size_t h);

  std::size_t distance(Index v) const { return dist_[v]; }
  /// Predecessor of v on the BFS tree of the last search (source maps to itself).
  Index parent(Index v) const { return parent_[v]; }
  bool reached(Index v) const { return stamp_[v] == epoch_; }

 private:
  std::vector<std::uint32_t> stamp_;
  std::vector<std::size_t> dist_;
  std::vector<Index> parent_;
  std::vector<Index> order_;
  std::uint32_t epoch_ = 0;
};

/// Throws InvalidArgument if `v` is not in g or h == 0.
Subgraph h_neighborhood(const Graph& g, NodeId v, std::size_t h);
Subgraph h_neighborhood_at(const Graph& g, Index v, std::size_t h, BfsWorkspace& ws);

/// Induced subgraph on the given parent indices (any order, no duplicates).
Graph induced_subgraph(const Graph& g, std::span<const Index> nodes);

struct ComponentSet {
  std::vector<std::vector<NodeId>> components;  // each sorted; sorted by size desc

  std::vector<std::size_t> sizes() const;
  std::size_t largest() const { return components.empty() ? 0 : components.front().size(); }
  std::size_t count() const { return components.size(); }
};

ComponentSet connected_components(const Graph& g);
bool is_connected(const Graph& g);

/// Largest connected component as its own graph (ties: the one containing the
/// smallest id).
Graph largest_component(const Graph& g);

/// Graph without `v` and its incident edges. Throws InvalidArgument if absent.
Graph remove_node(const Graph& g, NodeId v);
Graph remove_nodes(const Graph& g, std::span<const NodeId> vs);

}  // namespace speccrit
