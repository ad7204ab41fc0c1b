#include "speccrit/generators.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "speccrit/csv.hpp"
#include "speccrit/error.hpp"
#include "speccrit/rng.hpp"

namespace speccrit {

void GenSpec::validate() const {
  switch (model) {
    case Model::ER:
      if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("ER needs 0 < p < 1");
      if (n < 2) throw InvalidArgument("ER needs n >= 2");
      break;
    case Model::BA:
      if (m < 1 || m >= n) throw InvalidArgument("BA needs 1 <= m < n");
      break;
  }
}

std::vector<Edge> er_edges(std::size_t n, double p, std::uint64_t seed) {
  GenSpec{Model::ER, n, p, 0, seed}.validate();
  SplitMix64 rng(seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(p * static_cast<double>(n) * static_cast<double>(n - 1) / 2.0 * 1.1) + 16);
  // Batagelj & Brandes: jump over the gaps between successive present pairs
  // (w, v), w < v, in row-major order.
  const double log_q = std::log1p(-p);
  std::int64_t v = 1, w = -1;
  const auto nn = static_cast<std::int64_t>(n);
  while (v < nn) {
    const double r = rng.uniform();
    w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
  }
  return edges;
}

Graph gen_er(std::size_t n, double p, std::uint64_t seed) {
  auto edges = er_edges(n, p, seed);
  if (edges.empty()) throw Error("G(n, p) sample has no edges");
  Graph g = largest_component(Graph::from_edges(edges));
  if (g.node_count() < 2) throw Error("G(n, p) largest component has fewer than 2 nodes");
  return g;
}

Graph gen_ba(std::size_t n, std::size_t m, std::uint64_t seed) {
  GenSpec{Model::BA, n, 0.0, m, seed}.validate();
  SplitMix64 rng(seed);
  std::vector<Edge> edges;
  edges.reserve(m * (m + 1) / 2 + m * (n - m - 1));
  // Every edge endpoint appears once here, so a uniform pick is a
  // degree-proportional pick.
  std::vector<NodeId> endpoints;
  endpoints.reserve(2 * edges.capacity());
  for (NodeId a = 0; a <= m; ++a) {
    for (NodeId b = a + 1; b <= m; ++b) {
      edges.emplace_back(a, b);
      endpoints.push_back(a);
      endpoints.push_back(b);
    }
  }
  std::vector<NodeId> chosen;
  for (NodeId t = m + 1; t < n; ++t) {
    chosen.clear();
    while (chosen.size() < m) {
      const NodeId c = endpoints[rng.below(endpoints.size())];
      if (std::find(chosen.begin(), chosen.end(), c) == chosen.end()) chosen.push_back(c);
    }
    for (NodeId c : chosen) {
      edges.emplace_back(c, t);
      endpoints.push_back(c);
      endpoints.push_back(t);
    }
  }
  return Graph::from_edges(edges);
}

Graph generate(const GenSpec& spec) {
  spec.validate();
  return spec.model == Model::ER ? gen_er(spec.n, spec.p, spec.seed) : gen_ba(spec.n, spec.m, spec.seed);
}

FragileResult make_fragile(const Graph& base, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 0.5)) throw InvalidArgument("fragility fraction must be in (0, 0.5]");
  SplitMix64 rng(seed);
  FragileResult out;
  out.fragility_fraction = fraction;
  Graph current = largest_component(base);
  std::vector<std::size_t> prefix;

  while (true) {
    if (current.node_count() < kFragileMinNodes) {
      throw Error("no fragility point found before the network shrank below " + std::to_string(kFragileMinNodes) +
                  " nodes");
    }
    prefix.resize(current.node_count());
    std::size_t acc = 0;
    for (Index v = 0; v < current.node_count(); ++v) prefix[v] = (acc += current.degree(v));
    const std::size_t pick = rng.below(acc);
    const auto v = static_cast<Index>(std::upper_bound(prefix.begin(), prefix.end(), pick) - prefix.begin());
    const NodeId victim = current.id(v);

    Graph after = remove_node(current, victim);
    ComponentSet comps = connected_components(after);
    const std::size_t detached = after.node_count() - comps.largest();
    if (comps.count() >= 2 &&
        static_cast<double>(detached) >= fraction * static_cast<double>(after.node_count())) {
      out.graph = std::move(current);
      out.fragmenting_node = victim;
      out.reference_components = std::move(comps);
      return out;
    }
    out.removal_trace.push_back(victim);
    current = comps.count() == 1 ? std::move(after) : largest_component(after);
  }
}

FragileResult gen_fragile(const GenSpec& base, double fraction, std::uint64_t seed) {
  Graph g = generate(base);
  if (g.node_count() < 50) throw InvalidArgument("fragile base network must have at least 50 nodes");
  return make_fragile(g, fraction, seed);
}

void write_removal_trace_csv(std::ostream& out, const FragileResult& fr) {
  out << "step,node_id,outcome\n";
  std::size_t step = 0;
  for (NodeId v : fr.removal_trace) out << csv::row(step++, v, "committed") << '\n';
  out << csv::row(step, fr.fragmenting_node, "fragmenting") << '\n';
}

}  // namespace speccrit
