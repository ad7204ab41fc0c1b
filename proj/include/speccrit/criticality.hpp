#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <vector>

#include "speccrit/graph.hpp"
#include "speccrit/spectral.hpp"

namespace speccrit {

inline constexpr double kInfiniteKappa = std::numeric_limits<double>::infinity();

/// Per-node outcome of the indication round.
struct NodeAssessment {
  NodeId node = 0;
  std::size_t degree = 0;
  double kappa = kInfiniteKappa;       // +inf for leaves
  std::size_t neighborhood_size = 0;   // |h-ball|, center included
  NodeId lowest_k_pointer = 0;         // the member this node indicates
  std::size_t indications = 0;
  double score = 0.0;                  // indications / neighborhood_size

  friend bool operator==(const NodeAssessment&, const NodeAssessment&) = default;
};

struct CriticalityReport {
  std::size_t h = 0;
  std::vector<NodeAssessment> assessments;  // ascending node id (= internal index order)
  std::vector<NodeId> critical_nodes;       // ascending; score == 1

  /// Throws InvalidArgument for an unknown id.
  const NodeAssessment& at(NodeId id) const;
};

struct CriticalityOptions {
  SpectralOptions spectral;
  bool parallel = true;  // OpenMP over nodes for the kappa pass
};

/// Key used for every kappa comparison: the value rounded to 12 significant
/// decimal digits (+inf stays +inf). Ties are then broken by node id.
double comparable_kappa(double kappa);

/// kappa of node v: lambda2 of its h-neighborhood over log2(degree), or +inf
/// for a leaf. Degree is taken in the full graph.
double kappa(const Graph& g, NodeId v, std::size_t h, const SpectralOptions& opts = {});
double kappa_at(const Graph& g, Index v, std::size_t h, BfsWorkspace& ws, const SpectralOptions& opts);

/// kappa for every node, by internal index. The serial and OpenMP variants
/// produce bit-identical output.
std::vector<double> compute_kappas(const Graph& g, std::size_t h, const SpectralOptions& opts = {});
std::vector<double> compute_kappas_serial(const Graph& g, std::size_t h, const SpectralOptions& opts = {});

/// Builds the report from precomputed kappa values (by internal index).
/// Every node indicates the member of its h-ball with the smallest
/// (comparable_kappa, id) key, itself included.
CriticalityReport assemble_report(const Graph& g, std::size_t h, const std::vector<double>& kappas);

/// Full indication round. Requires a connected graph with n >= 2 and h >= 1.
CriticalityReport run_indication_round(const Graph& g, std::size_t h, const CriticalityOptions& opts = {});

inline const std::vector<NodeId>& critical_nodes(const CriticalityReport& r) { return r.critical_nodes; }

/// CSV with header: node_id,degree,neighborhood_size,kappa,lowest_k_pointer,indications,score
void write_report_csv(std::ostream& out, const CriticalityReport& r);

}  // namespace speccrit
