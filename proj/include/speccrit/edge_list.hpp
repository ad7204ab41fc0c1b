#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "speccrit/graph.hpp"

namespace speccrit {

// Edge-list text format: one edge per line as two whitespace-separated
// non-negative integers. Lines whose first non-blank character is '#' and
// blank lines are ignored. Anything else is a ParseError carrying the line
// number.
std::vector<Edge> parse_edge_list(std::istream& in);
std::vector<Edge> read_edge_list(const std::filesystem::path& path);

Graph read_graph(const std::filesystem::path& path);

void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list(const std::filesystem::path& path, const Graph& g);

}  // namespace speccrit
