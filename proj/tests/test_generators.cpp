#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "speccrit/error.hpp"
#include "speccrit/generators.hpp"
#include "support/fixtures.hpp"

using namespace speccrit;
using namespace speccrit::testing;

TEST_CASE("G(n, p) edge count follows the binomial") {
  const std::size_t n = 1000;
  const double p = 0.0045;
  const double pairs = n * (n - 1) / 2.0;
  const int samples = 30;
  double total = 0.0;
  for (std::uint64_t seed = 1; seed <= samples; ++seed) {
    const auto edges = er_edges(n, p, seed);
    const double mean_degree = 2.0 * static_cast<double>(edges.size()) / n;
    CHECK(mean_degree >= 4.2);
    CHECK(mean_degree <= 4.8);
    for (auto [a, b] : edges) CHECK(a < b);
    total += static_cast<double>(edges.size());
  }
  const double se = std::sqrt(pairs * p * (1 - p) / samples);
  CHECK(std::abs(total / samples - pairs * p) <= 3 * se);
}

TEST_CASE("G(n, p) pair frequencies are uniform") {
  // every pair of a 6-node graph should appear with frequency p
  const double p = 0.3;
  std::vector<int> hits(36, 0);
  const int runs = 4000;
  for (int s = 0; s < runs; ++s)
    for (auto [a, b] : er_edges(6, p, 1000 + s)) ++hits[a * 6 + b];
  const double se = std::sqrt(p * (1 - p) / runs);
  for (NodeId a = 0; a < 6; ++a)
    for (NodeId b = a + 1; b < 6; ++b) CHECK(std::abs(hits[a * 6 + b] / double(runs) - p) <= 4 * se);
}

TEST_CASE("G(n, p) special cases and determinism") {
  CHECK(gen_er(10, 0.999999, 4) == complete_graph(10));
  CHECK(gen_er(300, 0.02, 9) == gen_er(300, 0.02, 9));
  CHECK_FALSE(gen_er(300, 0.02, 9) == gen_er(300, 0.02, 10));
  CHECK(is_connected(gen_er(300, 0.01, 2)));
  CHECK_THROWS_AS(gen_er(10, 0.0, 1), InvalidArgument);
  CHECK_THROWS_AS(gen_er(10, 1.0, 1), InvalidArgument);
}

TEST_CASE("preferential attachment") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Graph g = gen_ba(1000, 2, seed);
    CHECK(g.node_count() == 1000);
    CHECK(g.edge_count() == 1997);
    CHECK(is_connected(g));
    std::size_t max_deg = 0;
    for (Index v = 0; v < g.node_count(); ++v) {
      CHECK(g.degree(v) >= 2);
      max_deg = std::max<std::size_t>(max_deg, g.degree(v));
    }
    const double mean = 2.0 * g.edge_count() / g.node_count();
    CHECK(static_cast<double>(max_deg) >= 5 * mean);
  }
  CHECK(gen_ba(200, 3, 7) == gen_ba(200, 3, 7));
  CHECK(gen_ba(4, 3, 1) == complete_graph(4));
  CHECK_THROWS_AS(gen_ba(3, 3, 1), InvalidArgument);
  CHECK_THROWS_AS(gen_ba(3, 0, 1), InvalidArgument);
}

TEST_CASE("generate dispatches on the model") {
  GenSpec ba{Model::BA, 100, 0.0, 2, 3};
  CHECK(generate(ba) == gen_ba(100, 2, 3));
  GenSpec er{Model::ER, 100, 0.05, 0, 3};
  CHECK(generate(er) == gen_er(100, 0.05, 3));
}

namespace {

// Replays a removal trace: remove, then keep the largest component.
Graph replay(Graph g, const std::vector<NodeId>& trace) {
  for (NodeId v : trace) g = largest_component(remove_node(g, v));
  return g;
}

void check_fragile(const Graph& base, const FragileResult& fr) {
  CHECK(is_connected(fr.graph));
  CHECK(replay(largest_component(base), fr.removal_trace) == fr.graph);
  const auto comps = connected_components(remove_node(fr.graph, fr.fragmenting_node));
  CHECK(comps.count() >= 2);
  CHECK(comps.sizes() == fr.reference_components.sizes());
  const double after = static_cast<double>(fr.graph.node_count() - 1);
  CHECK(static_cast<double>(after - comps.largest()) >= fr.fragility_fraction * after);
}

}  // namespace

TEST_CASE("fragile: barbell splits at the cut node") {
  Graph g = barbell_graph();
  int found = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    try {
      auto fr = make_fragile(g, kDefaultFragilityFraction, seed);
      CHECK(fr.fragmenting_node == kBarbellCut);
      check_fragile(g, fr);
      ++found;
    } catch (const Error&) {
    }
  }
  CHECK(found > 0);
}

TEST_CASE("fragile: a path with fraction 0.5 splits at the middle of an odd path") {
  Graph g = path_graph(41);
  int found = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    try {
      auto fr = make_fragile(g, 0.5, seed);
      const auto n = fr.graph.node_count();
      CHECK(n % 2 == 1);
      CHECK(fr.graph.edge_count() == n - 1);
      const NodeId lo = fr.graph.id(0);
      CHECK(fr.fragmenting_node == lo + n / 2);
      CHECK(fr.reference_components.sizes() == std::vector<std::size_t>{n / 2, n / 2});
      check_fragile(g, fr);
      ++found;
    } catch (const Error&) {
    }
  }
  CHECK(found > 0);
}

TEST_CASE("fragile networks from both models") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    for (Model m : {Model::BA, Model::ER}) {
      GenSpec spec{m, 300, 0.01, 2, seed};
      Graph base = generate(spec);
      auto fr = gen_fragile(spec, kDefaultFragilityFraction, seed + 100);
      check_fragile(base, fr);
      std::ostringstream out;
      write_removal_trace_csv(out, fr);
      const std::string s = out.str();
      CHECK(s.rfind("step,node_id,outcome\n", 0) == 0);
      CHECK(std::count(s.begin(), s.end(), '\n') == static_cast<long>(fr.removal_trace.size() + 2));
      CHECK(s.find(",fragmenting\n") != std::string::npos);
    }
  }
  CHECK_THROWS_AS(make_fragile(path_graph(20), 0.0, 1), InvalidArgument);
  CHECK_THROWS_AS(gen_fragile(GenSpec{Model::BA, 30, 0.0, 2, 1}, 0.05, 1), InvalidArgument);
}
