#include "speccrit/edge_list.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "speccrit/error.hpp"

namespace speccrit {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view next_token(std::string_view& rest) {
  std::size_t i = 0;
  while (i < rest.size() && is_space(rest[i])) ++i;
  std::size_t j = i;
  while (j < rest.size() && !is_space(rest[j])) ++j;
  auto tok = rest.substr(i, j - i);
  rest.remove_prefix(j);
  return tok;
}

NodeId parse_id(std::string_view tok, std::size_t line) {
  NodeId value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected a non-negative integer node id, got '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

std::vector<Edge> parse_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view rest(raw);
    auto first = next_token(rest);
    if (first.empty() || first.front() == '#') continue;
    auto second = next_token(rest);
    if (second.empty()) throw ParseError(line, "expected two node ids");
    if (!next_token(rest).empty()) throw ParseError(line, "trailing data after edge");
    edges.emplace_back(parse_id(first, line), parse_id(second, line));
  }
  return edges;
}

std::vector<Edge> read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return parse_edge_list(in);
}

Graph read_graph(const std::filesystem::path& path) {
  auto edges = read_edge_list(path);
  return Graph::from_edges(edges);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes " << g.node_count() << " edges " << g.edge_count() << '\n';
  for (auto [a, b] : g.edges()) out << a << ' ' << b << '\n';
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_edge_list(out, g);
}

}  // namespace speccrit
