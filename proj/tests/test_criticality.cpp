#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include "speccrit/criticality.hpp"
#include "speccrit/error.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace speccrit;
using namespace speccrit::testing;

namespace {

// kappa straight from the definition: ball by Floyd-Warshall, lambda2 by Jacobi.
double oracle_kappa(const Graph& g, Index v, std::size_t h, const std::vector<std::vector<std::size_t>>& dist) {
  if (g.degree(v) == 1) return kInfiniteKappa;
  std::vector<NodeId> members;
  for (Index u = 0; u < g.node_count(); ++u)
    if (dist[v][u] <= h) members.push_back(g.id(u));
  std::vector<Edge> edges;
  for (auto [a, b] : g.edges())
    if (std::binary_search(members.begin(), members.end(), a) && std::binary_search(members.begin(), members.end(), b))
      edges.emplace_back(a, b);
  const double l2 = oracle::jacobi_eigenvalues(oracle::normalized_laplacian_from_edges(edges, members))[1];
  return l2 / std::log2(static_cast<double>(g.degree(v)));
}

void check_report_invariants(const Graph& g, const CriticalityReport& r) {
  const auto dist = oracle::hop_distances(g);
  std::size_t total = 0;
  for (Index v = 0; v < g.node_count(); ++v) {
    const auto& a = r.assessments[v];
    CHECK(a.node == g.id(v));
    total += a.indications;
    const Index p = g.index_of(a.lowest_k_pointer);
    CHECK(dist[v][p] <= r.h);
    // the pointer has the smallest key in the ball
    const auto pk = std::make_pair(comparable_kappa(r.assessments[p].kappa), a.lowest_k_pointer);
    for (Index u = 0; u < g.node_count(); ++u)
      if (dist[v][u] <= r.h) CHECK(pk <= std::make_pair(comparable_kappa(r.assessments[u].kappa), g.id(u)));
    CHECK(a.score == doctest::Approx(static_cast<double>(a.indications) / static_cast<double>(a.neighborhood_size)));
    if (a.degree == 1) CHECK(a.score == 0.0);
    CHECK(a.score <= 1.0);
  }
  CHECK(total == g.node_count());
  for (NodeId c : r.critical_nodes) CHECK(r.at(c).score == 1.0);

  // the global minimum key is always critical
  Index best = 0;
  for (Index v = 1; v < g.node_count(); ++v)
    if (std::make_pair(comparable_kappa(r.assessments[v].kappa), g.id(v)) <
        std::make_pair(comparable_kappa(r.assessments[best].kappa), g.id(best)))
      best = v;
  CHECK(std::binary_search(r.critical_nodes.begin(), r.critical_nodes.end(), g.id(best)));
}

}  // namespace

TEST_CASE("kappa examples") {
  CHECK(kappa(complete_graph(4), 0, 1) == doctest::Approx(0.8412396714286099).epsilon(1e-12));
  CHECK(kappa(star_graph(4), 0, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::isinf(kappa(star_graph(4), 3, 1)));
  CHECK(std::isinf(kappa(path_graph(5), 0, 2)));
  CHECK(kappa(path_graph(3), 1, 1) == doctest::Approx(1.0));
}

TEST_CASE("kappa matches the oracle on random graphs") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    Graph g = random_connected(18, 0.08, seed);
    const auto dist = oracle::hop_distances(g);
    for (std::size_t h = 1; h <= 3; ++h) {
      auto ks = compute_kappas(g, h);
      for (Index v = 0; v < g.node_count(); ++v) {
        const double want = oracle_kappa(g, v, h, dist);
        if (std::isinf(want)) {
          CHECK(std::isinf(ks[v]));
        } else {
          CHECK(ks[v] == doctest::Approx(want).epsilon(1e-10));
        }
      }
    }
  }
}

TEST_CASE("comparable_kappa merges values that differ below 12 digits") {
  CHECK(comparable_kappa(1.0 / 3.0) == comparable_kappa(1.0 / 3.0 + 1e-15));
  CHECK(comparable_kappa(0.25) < comparable_kappa(0.2500000001));
  CHECK(std::isinf(comparable_kappa(kInfiniteKappa)));
}

TEST_CASE("star: center is the only critical node") {
  auto r = run_indication_round(star_graph(4), 1);
  CHECK(r.critical_nodes == std::vector<NodeId>{0});
  CHECK(r.at(0).indications == 5);
  CHECK(r.at(0).score == 1.0);
  for (NodeId leaf = 1; leaf <= 4; ++leaf) {
    CHECK(r.at(leaf).lowest_k_pointer == 0);
    CHECK(r.at(leaf).score == 0.0);
  }
  check_report_invariants(star_graph(4), r);
}

TEST_CASE("K4: equal kappa everywhere, lowest id wins") {
  auto r = run_indication_round(complete_graph(4), 1);
  CHECK(r.critical_nodes == std::vector<NodeId>{0});
  for (const auto& a : r.assessments) CHECK(a.lowest_k_pointer == 0);
  CHECK(r.at(0).indications == 4);
}

TEST_CASE("barbell: the cut node is the unique critical node") {
  Graph g = barbell_graph();
  for (std::size_t h = 1; h <= 3; ++h) {
    CAPTURE(h);
    auto r = run_indication_round(g, h);
    CHECK(r.critical_nodes == std::vector<NodeId>{kBarbellCut});
    CHECK(r.at(kBarbellCut).kappa == doctest::Approx(0.06020599913279609).epsilon(1e-12));
    const double clique = h == 1 ? 0.5168118696880714 : 0.0861353116146784;
    CHECK(r.at(0).kappa == doctest::Approx(clique).epsilon(1e-12));
    check_report_invariants(g, r);
  }
}

TEST_CASE("report invariants, serial/parallel equality and determinism on random graphs") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    Graph g = random_connected(40, 0.04, seed);
    for (std::size_t h : {1, 2, 4}) {
      CAPTURE(seed);
      CAPTURE(h);
      auto serial = compute_kappas_serial(g, h);
      auto parallel = compute_kappas(g, h);
      REQUIRE(serial.size() == parallel.size());
      for (std::size_t i = 0; i < serial.size(); ++i) CHECK(std::memcmp(&serial[i], &parallel[i], sizeof(double)) == 0);
      auto r1 = run_indication_round(g, h);
      CriticalityOptions serial_opts;
      serial_opts.parallel = false;
      auto r2 = run_indication_round(g, h, serial_opts);
      CHECK(r1.assessments == r2.assessments);
      CHECK(r1.critical_nodes == r2.critical_nodes);
      check_report_invariants(g, r1);
    }
  }
}

TEST_CASE("indication round rejects bad input") {
  CHECK_THROWS_AS(run_indication_round(path_graph(4), 0), InvalidArgument);
  const std::vector<Edge> two{{0, 1}, {2, 3}};
  CHECK_THROWS_AS(run_indication_round(build_graph(two), 1), InvalidArgument);
  CHECK_THROWS_AS(run_indication_round(path_graph(4), 1).at(99), InvalidArgument);
}

TEST_CASE("report CSV has a header and one row per node") {
  auto r = run_indication_round(star_graph(3), 1);
  std::ostringstream out;
  write_report_csv(out, r);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "node_id,degree,neighborhood_size,kappa,lowest_k_pointer,indications,score");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);
  CHECK(out.str().find("inf") != std::string::npos);
}
