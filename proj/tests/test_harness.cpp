#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "speccrit/error.hpp"
#include "speccrit/harness.hpp"
#include "speccrit/spectral.hpp"
#include "support/fixtures.hpp"

using namespace speccrit;
using namespace speccrit::testing;

TEST_CASE("pearson r squared") {
  CHECK(pearson_r_squared({1, 2, 3, 4}, {2, 4, 6, 8}) == doctest::Approx(1.0));
  CHECK(pearson_r_squared({1, 2, 3, 4}, {8, 6, 4, 2}) == doctest::Approx(1.0));
  CHECK(pearson_r_squared({1, 2, 3}, {1, 3, 2}) == doctest::Approx(0.25));
  CHECK(std::isnan(pearson_r_squared({1, 1, 1}, {1, 2, 3})));
  CHECK(std::isnan(pearson_r_squared({1}, {1})));
  CHECK_THROWS_AS(pearson_r_squared({1, 2}, {1}), InvalidArgument);
}

TEST_CASE("r squared is invariant under a joint permutation") {
  std::vector<double> x{0.1, 0.5, 0.3, 0.9, 0.2, 0.7}, y{0.2, 0.4, 0.35, 1.0, 0.1, 0.5};
  const double r = pearson_r_squared(x, y);
  std::vector<std::size_t> perm{3, 0, 5, 1, 4, 2};
  std::vector<double> px, py;
  for (auto i : perm) {
    px.push_back(x[i]);
    py.push_back(y[i]);
  }
  CHECK(pearson_r_squared(px, py) == doctest::Approx(r).epsilon(1e-12));
}

TEST_CASE("attack outcome on a star: critical node is the hub") {
  Graph g = star_graph(5);
  auto o = attack_outcome(g, 1, 1);
  CHECK(o.removed_critical == 0);
  CHECK(o.removed_maxdegree == 0);
  CHECK(o.delta_lambda2_critical == o.delta_lambda2_maxdegree);
  CHECK(o.lambda2_original == doctest::Approx(1.0));
  CHECK(o.delta_lambda2_critical == doctest::Approx(1.0));  // the rest is isolated leaves
  CHECK(o.max_degree == 5);
  CHECK(o.critical_count == 1);
}

TEST_CASE("attack outcome matches direct recomputation") {
  Graph g = gen_ba(200, 2, 8);
  auto o = attack_outcome(g, 3, 77);
  const double base = whole_graph_gap(g);
  CHECK(o.lambda2_original == base);
  CHECK(o.delta_lambda2_critical == base - whole_graph_gap(remove_node(g, o.removed_critical)));
  CHECK(o.delta_lambda2_maxdegree == base - whole_graph_gap(remove_node(g, o.removed_maxdegree)));
  CHECK(g.degree(g.index_of(o.removed_maxdegree)) == o.max_degree);
}

TEST_CASE("networks in a batch do not influence each other") {
  std::vector<GenSpec> specs;
  for (std::uint64_t s = 1; s <= 6; ++s) specs.push_back(GenSpec{Model::BA, 150, 0.0, 2, s});
  auto all = attack_compare(specs, 3);
  HarnessOptions serial;
  serial.parallel_networks = false;
  auto all_serial = attack_compare(specs, 3, serial);
  CHECK(all.outcomes == all_serial.outcomes);
  CHECK(all.r_squared == all_serial.r_squared);

  std::vector<GenSpec> subset{specs[4], specs[1]};
  auto part = attack_compare(subset, 3);
  CHECK(part.outcomes[0] == all.outcomes[4]);
  CHECK(part.outcomes[1] == all.outcomes[1]);
  CHECK(part.outcomes[0].network_seed == 5);
}

TEST_CASE("identical pairs give r squared of one") {
  std::vector<GenSpec> specs;
  for (std::uint64_t s = 1; s <= 5; ++s) specs.push_back(GenSpec{Model::BA, 60, 0.0, 1, s});
  auto sum = attack_compare(specs, 6);
  bool all_same = true;
  for (const auto& o : sum.outcomes) all_same = all_same && o.removed_critical == o.removed_maxdegree;
  if (all_same) CHECK(sum.r_squared == doctest::Approx(1.0));
}

TEST_CASE("outcomes CSV round-trips") {
  AttackOutcome a;
  a.network_seed = 3;
  a.nodes = 500;
  a.lambda2_original = 0.1234567890123456;
  a.delta_lambda2_critical = -1e-17;
  a.delta_lambda2_maxdegree = 0.3;
  a.removed_critical = 12;
  a.removed_maxdegree = 4;
  a.critical_count = 2;
  a.critical_degree = 9;
  a.max_degree = 30;
  AttackOutcome b = a;
  b.network_seed = 4;
  std::stringstream ss;
  write_outcomes_csv(ss, {a, b});
  auto back = read_outcomes_csv(ss);
  REQUIRE(back.size() == 2);
  CHECK(back[0] == a);
  CHECK(back[1] == b);

  std::istringstream bad("wrong,header\n");
  CHECK_THROWS_AS(read_outcomes_csv(bad), ParseError);
}

TEST_CASE("fragility report on the barbell locates the cut node") {
  FragileResult fr;
  fr.graph = barbell_graph();
  fr.fragmenting_node = kBarbellCut;
  auto c = fragility_report(fr, 3, "barbell");
  CHECK(c.located_matches_reference());
  CHECK(c.reference_components == std::vector<std::size_t>{5, 5});
  CHECK(c.resulting_components == std::vector<std::size_t>{5, 5});
  CHECK(c.disconnected_reference == 5);
  CHECK(c.disconnected_located == 5);
  std::ostringstream out;
  write_fragility_csv(out, std::vector<FragilityComparison>{c});
  CHECK(out.str().find("barbell,3,11,10,5 5,10,5 5,5,5\n") != std::string::npos);
}

TEST_CASE("default fragile h lists") {
  CHECK(default_fragile_h(Model::BA) == std::vector<std::size_t>{6, 6, 4, 4, 6});
  CHECK(default_fragile_h(Model::ER) == std::vector<std::size_t>{9, 4, 4, 7, 4});
}

TEST_CASE("analyze a trace file") {
  const auto dir = std::filesystem::temp_directory_path() / "speccrit_harness_test";
  std::filesystem::create_directories(dir);

  SUBCASE("connected path") {
    const auto path = dir / "path.edges";
    std::ofstream(path) << "# tiny\n0 1\n1 2\n2 3\n3 4\n";
    std::ostringstream warn;
    auto t = analyze_trace(path, 1, {}, &warn);
    CHECK(warn.str().empty());
    CHECK_FALSE(t.took_largest_component);
    CHECK(t.analyzed_nodes == 5);
    CHECK(t.neighborhoods.min == 2);
    CHECK(t.neighborhoods.max == 3);
    CHECK(t.neighborhoods.mean == doctest::Approx(13.0 / 5.0));
    CHECK(t.report.critical_nodes == std::vector<NodeId>{1});
  }
  SUBCASE("disconnected input warns and keeps the largest component") {
    const auto path = dir / "split.edges";
    std::ofstream(path) << "0 1\n1 2\n2 0\n2 3\n10 11\n";
    std::ostringstream warn;
    auto t = analyze_trace(path, 2, {}, &warn);
    CHECK(warn.str().find("disconnected") != std::string::npos);
    CHECK(t.took_largest_component);
    CHECK(t.input_nodes == 6);
    CHECK(t.analyzed_nodes == 4);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(analyze_trace(dir / "nope.edges", 1), Error);
  }
}
