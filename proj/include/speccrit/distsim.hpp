#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "speccrit/criticality.hpp"
#include "speccrit/graph.hpp"
#include "speccrit/spectral.hpp"

namespace speccrit::distsim {

// Lock-step message-passing simulation of the indication round. Each node
// starts knowing only its own links and runs four phases:
//
//   1. topology: h+1 rounds; round 1 is a hello on every link, later rounds
//      forward the edges learned in the previous round. Afterwards a node
//      knows every edge incident to its h-ball and keeps the induced ball.
//   2. kappa: the node computes its own kappa, then (id, kappa) pairs are
//      flooded for h rounds, reaching exactly the h-ball.
//   3. indication: one token per node, source-routed along the node's local
//      BFS tree to the member with the lowest key (self-indications are local).
//   4. score: indications received / ball size.
//
// Messages move one hop per round along graph edges only.

enum class MessageKind { Topology, Kappa, Indication };

struct Message {
  MessageKind kind = MessageKind::Topology;
  NodeId sender = 0;
  NodeId receiver = 0;
  std::vector<Edge> edges;                          // Topology
  std::vector<std::pair<NodeId, double>> kappas;    // Kappa
  std::vector<NodeId> route;                        // Indication: full path, route.back() = target
  std::size_t hop = 0;                              // Indication: index of receiver in route
};

struct NodeState {
  NodeId id = 0;
  std::vector<Edge> known_edges;  // canonical (min, max), sorted
  std::size_t round = 0;
  std::size_t ball_size = 0;
  double kappa = kInfiniteKappa;
  std::map<NodeId, double> peer_kappas;  // includes itself after phase 2
  NodeId pointer = 0;
  std::size_t indications_received = 0;
  double score = 0.0;
};

struct ProtocolStats {
  std::size_t rounds = 0;
  std::size_t topology_rounds = 0;
  std::size_t kappa_rounds = 0;
  std::size_t indication_rounds = 0;
  std::size_t total_messages = 0;
  std::size_t topology_messages = 0;
  std::size_t kappa_messages = 0;
  std::size_t indication_messages = 0;
  std::size_t max_node_state_nodes = 0;  // largest ball any node stored
};

struct ProtocolResult {
  CriticalityReport report;
  ProtocolStats stats;
  std::vector<NodeState> states;  // by internal index
};

struct SimOptions {
  SpectralOptions spectral;
  bool parallel = true;         // OpenMP over nodes within a round
  std::ostream* trace = nullptr;  // "round,kind,sender,receiver" per message
  /// Check after every topology round that no node holds an edge with both
  /// endpoints beyond h hops. O(n * ball) per round.
  bool check_locality = false;
};

/// Throws InvalidArgument for a disconnected graph, n < 2, or h == 0.
/// Also throws InvariantViolation if a locality check fails.
ProtocolResult run_protocol(const Graph& g, std::size_t h, const SimOptions& opts = {});

ProtocolStats message_stats(const Graph& g, std::size_t h, const SimOptions& opts = {});

struct Mismatch {
  NodeId node;
  std::string field;
};

/// Differences between two reports: pointers, indications, sizes and scores
/// must match exactly; kappa within `kappa_tolerance`.
std::vector<Mismatch> compare_reports(const CriticalityReport& a, const CriticalityReport& b,
                                      double kappa_tolerance = 1e-12);

void write_stats_csv(std::ostream& out, const ProtocolStats& s);

}  // namespace speccrit::distsim
