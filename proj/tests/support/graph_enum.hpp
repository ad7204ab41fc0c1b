#pragma once

// Graphs on up to 8 nodes, one per isomorphism class (n <= 7) or covering
// every class with repeats (n = 8). Built by adding a vertex with every
// possible neighborhood to each class representative of size n-1; classes up
// to 7 nodes are deduplicated with a brute-force canonical form.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "speccrit/graph.hpp"

namespace speccrit::testing {

struct SmallGraph {
  std::size_t n = 0;
  std::array<std::uint8_t, 8> rows{};  // adjacency bitsets

  bool has_isolated() const {
    for (std::size_t i = 0; i < n; ++i)
      if (rows[i] == 0) return true;
    return false;
  }

  Graph to_graph() const {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rows[i] >> j & 1) e.emplace_back(i, j);
    return Graph::from_edges(e);
  }
};

inline std::uint64_t canonical_code(const SmallGraph& g) {
  std::array<int, 8> perm{};
  std::iota(perm.begin(), perm.begin() + g.n, 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < g.n; ++i)
      for (std::size_t j = i + 1; j < g.n; ++j) code = code << 1 | (g.rows[perm[i]] >> perm[j] & 1);
    best = std::min(best, code);
  } while (std::next_permutation(perm.begin(), perm.begin() + g.n));
  return best;
}

inline std::vector<SmallGraph> graphs_up_to_iso(std::size_t n) {
  std::vector<SmallGraph> level{SmallGraph{1, {}}};
  for (std::size_t k = 2; k <= n; ++k) {
    std::vector<SmallGraph> next;
    std::set<std::uint64_t> seen;
    for (const auto& base : level) {
      for (std::uint32_t nb = 0; nb < (1u << (k - 1)); ++nb) {
        SmallGraph g = base;
        g.n = k;
        g.rows[k - 1] = static_cast<std::uint8_t>(nb);
        for (std::size_t i = 0; i + 1 < k; ++i)
          if (nb >> i & 1) g.rows[i] |= static_cast<std::uint8_t>(1u << (k - 1));
        if (k <= 7 && !seen.insert(canonical_code(g)).second) continue;
        next.push_back(g);
      }
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace speccrit::testing
