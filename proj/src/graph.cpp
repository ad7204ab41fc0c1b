#include "speccrit/graph.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "speccrit/error.hpp"

namespace speccrit {

Graph Graph::from_edges(std::span<const Edge> edges) {
  if (edges.empty()) throw InvalidArgument("empty edge list");

  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a == b) {
      throw InvalidArgument("self-loop (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    }
    canon.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());

  std::vector<NodeId> ids;
  ids.reserve(2 * canon.size());
  for (auto [a, b] : canon) {
    ids.push_back(a);
    ids.push_back(b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() > std::numeric_limits<Index>::max()) {
    throw InvalidArgument("graph exceeds index range");
  }

  Graph g;
  g.ids_ = std::move(ids);
  auto lookup = [&g](NodeId id) {
    return static_cast<Index>(std::lower_bound(g.ids_.begin(), g.ids_.end(), id) - g.ids_.begin());
  };
  const std::size_t n = g.ids_.size();
  g.offsets_.assign(n + 1, 0);
  std::vector<std::pair<Index, Index>> arcs;
  arcs.reserve(2 * canon.size());
  for (auto [a, b] : canon) {
    const Index u = lookup(a), v = lookup(b);
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  std::sort(arcs.begin(), arcs.end());
  g.targets_.reserve(arcs.size());
  for (auto [u, v] : arcs) {
    ++g.offsets_[u + 1];
    g.targets_.push_back(v);
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.edge_count_ = canon.size();
  return g;
}

Graph Graph::from_adjacency(std::vector<NodeId> ids, std::vector<std::vector<Index>> adjacency) {
  if (ids.size() != adjacency.size()) throw InvalidArgument("ids/adjacency size mismatch");
  if (!std::is_sorted(ids.begin(), ids.end()) ||
      std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw InvalidArgument("node ids must be strictly ascending");
  }
  Graph g;
  g.ids_ = std::move(ids);
  const std::size_t n = g.ids_.size();
  g.offsets_.assign(n + 1, 0);
  std::size_t arcs = 0;
  for (std::size_t v = 0; v < n; ++v) {
    auto& list = adjacency[v];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    for (Index u : list) {
      if (u == v) throw InvalidArgument("self-loop at node " + std::to_string(g.ids_[v]));
      if (u >= n) throw InvalidArgument("neighbor index out of range");
    }
    g.offsets_[v + 1] = g.offsets_[v] + list.size();
    arcs += list.size();
  }
  g.targets_.reserve(arcs);
  for (auto& list : adjacency) g.targets_.insert(g.targets_.end(), list.begin(), list.end());
  for (std::size_t v = 0; v < n; ++v) {
    for (Index u : g.neighbors(static_cast<Index>(v))) {
      if (!g.has_edge(u, static_cast<Index>(v))) throw InvalidArgument("adjacency is not symmetric");
    }
  }
  g.edge_count_ = arcs / 2;
  return g;
}

bool Graph::contains(NodeId id) const noexcept {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

Index Graph::index_of(NodeId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) throw InvalidArgument("unknown node " + std::to_string(id));
  return static_cast<Index>(it - ids_.begin());
}

bool Graph::has_edge(Index u, Index v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Index u = 0; u < node_count(); ++u) {
    for (Index v : neighbors(u)) {
      if (u < v) out.emplace_back(ids_[u], ids_[v]);
    }
  }
  return out;
}

void BfsWorkspace::reserve(std::size_t n) {
  if (stamp_.size() < n) {
    stamp_.resize(n, 0);
    dist_.resize(n, 0);
    parent_.resize(n, 0);
  }
}

std::span<const Index> BfsWorkspace::ball(const Graph& g, Index source, std::size_t h) {
  reserve(g.node_count());
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  order_.clear();
  order_.push_back(source);
  stamp_[source] = epoch_;
  dist_[source] = 0;
  parent_[source] = source;
  for (std::size_t head = 0; head < order_.size(); ++head) {
    const Index u = order_[head];
    if (dist_[u] == h) continue;
    for (Index w : g.neighbors(u)) {
      if (stamp_[w] == epoch_) continue;
      stamp_[w] = epoch_;
      dist_[w] = dist_[u] + 1;
      parent_[w] = u;
      order_.push_back(w);
    }
  }
  return order_;
}

Graph induced_subgraph(const Graph& g, std::span<const Index> nodes) {
  std::vector<Index> sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Index> local(g.node_count(), std::numeric_limits<Index>::max());
  std::vector<NodeId> ids(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    local[sorted[i]] = static_cast<Index>(i);
    ids[i] = g.id(sorted[i]);
  }
  std::vector<std::vector<Index>> adj(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (Index w : g.neighbors(sorted[i])) {
      if (local[w] != std::numeric_limits<Index>::max()) adj[i].push_back(local[w]);
    }
  }
  return Graph::from_adjacency(std::move(ids), std::move(adj));
}

Subgraph h_neighborhood_at(const Graph& g, Index v, std::size_t h, BfsWorkspace& ws) {
  if (h == 0) throw InvalidArgument("hop radius must be >= 1");
  auto ball = ws.ball(g, v, h);
  Subgraph sub;
  sub.parent_map.assign(ball.begin(), ball.end());
  std::sort(sub.parent_map.begin(), sub.parent_map.end());

  // Parent adjacency lists are sorted and parent_map is sorted, so a merge
  // walk yields sorted local lists without a lookup table of size n.
  const std::size_t k = sub.parent_map.size();
  std::vector<std::vector<Index>> adj(k);
  std::vector<NodeId> ids(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Index p = sub.parent_map[i];
    ids[i] = g.id(p);
    if (p == v) sub.center = static_cast<Index>(i);
    auto nb = g.neighbors(p);
    auto it = sub.parent_map.begin();
    for (Index w : nb) {
      if (!ws.reached(w)) continue;
      it = std::lower_bound(it, sub.parent_map.end(), w);
      adj[i].push_back(static_cast<Index>(it - sub.parent_map.begin()));
    }
  }
  sub.graph = Graph::from_adjacency(std::move(ids), std::move(adj));
  return sub;
}

Subgraph h_neighborhood(const Graph& g, NodeId v, std::size_t h) {
  BfsWorkspace ws(g.node_count());
  return h_neighborhood_at(g, g.index_of(v), h, ws);
}

std::vector<std::size_t> ComponentSet::sizes() const {
  std::vector<std::size_t> out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(c.size());
  return out;
}

ComponentSet connected_components(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<bool> seen(n, false);
  std::vector<Index> stack;
  ComponentSet out;
  for (Index s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<NodeId> comp;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      const Index u = stack.back();
      stack.pop_back();
      comp.push_back(g.id(u));
      for (Index w : g.neighbors(u)) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.components.push_back(std::move(comp));
  }
  std::stable_sort(out.components.begin(), out.components.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return out;
}

bool is_connected(const Graph& g) {
  if (g.node_count() == 0) return false;
  BfsWorkspace ws(g.node_count());
  return ws.ball(g, 0, g.node_count()).size() == g.node_count();
}

Graph largest_component(const Graph& g) {
  auto comps = connected_components(g);
  if (comps.count() <= 1) return g;
  std::vector<Index> nodes;
  nodes.reserve(comps.largest());
  for (NodeId id : comps.components.front()) nodes.push_back(g.index_of(id));
  return induced_subgraph(g, nodes);
}

Graph remove_nodes(const Graph& g, std::span<const NodeId> vs) {
  std::vector<bool> drop(g.node_count(), false);
  for (NodeId id : vs) drop[g.index_of(id)] = true;
  std::vector<Index> keep;
  keep.reserve(g.node_count());
  for (Index v = 0; v < g.node_count(); ++v) {
    if (!drop[v]) keep.push_back(v);
  }
  return induced_subgraph(g, keep);
}

Graph remove_node(const Graph& g, NodeId v) {
  const NodeId one[] = {v};
  return remove_nodes(g, one);
}

}  // namespace speccrit
