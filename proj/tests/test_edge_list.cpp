#include <doctest.h>

#include <sstream>

#include "speccrit/edge_list.hpp"
#include "speccrit/error.hpp"
#include "support/fixtures.hpp"

using namespace speccrit;

TEST_CASE("comments and blank lines are ignored") {
  std::istringstream noisy("# header\n\n0 1\n   # indented comment\n1\t2\r\n\n");
  std::istringstream plain("0 1\n1 2\n");
  CHECK(parse_edge_list(noisy) == parse_edge_list(plain));
}

TEST_CASE("parse errors carry the line number") {
  std::istringstream one_field("0 1\n2\n");
  try {
    parse_edge_list(one_field);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream negative("0 1\n# c\n-3 4\n");
  CHECK_THROWS_WITH_AS(parse_edge_list(negative), doctest::Contains("line 3"), ParseError);
  std::istringstream extra("0 1 2\n");
  CHECK_THROWS_AS(parse_edge_list(extra), ParseError);
  std::istringstream junk("0 x\n");
  CHECK_THROWS_AS(parse_edge_list(junk), ParseError);
}

TEST_CASE("write then parse reproduces the graph") {
  Graph g = speccrit::testing::random_connected(40, 0.1, 3);
  std::stringstream ss;
  write_edge_list(ss, g);
  auto edges = parse_edge_list(ss);
  CHECK(Graph::from_edges(edges) == g);
}
