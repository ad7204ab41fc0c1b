#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "speccrit/criticality.hpp"
#include "speccrit/generators.hpp"
#include "speccrit/graph.hpp"

namespace speccrit {

/// One network, two single-node attacks applied to separate copies.
/// delta = lambda2(original) - lambda2(after removal), signed.
struct AttackOutcome {
  std::uint64_t network_seed = 0;
  std::size_t nodes = 0;
  double lambda2_original = 0.0;
  double delta_lambda2_critical = 0.0;
  double delta_lambda2_maxdegree = 0.0;
  NodeId removed_critical = 0;
  NodeId removed_maxdegree = 0;
  std::size_t critical_count = 0;
  std::size_t critical_degree = 0;
  std::size_t max_degree = 0;

  friend bool operator==(const AttackOutcome&, const AttackOutcome&) = default;
};

struct CorrelationSummary {
  std::vector<AttackOutcome> outcomes;  // ordered by network seed
  double r_squared = 0.0;               // Pearson r^2 of (maxdegree, critical) pairs
};

/// Pearson r^2. NaN when either coordinate has zero variance or n < 2.
double pearson_r_squared(const std::vector<double>& x, const std::vector<double>& y);

struct HarnessOptions {
  CriticalityOptions criticality;
  bool parallel_networks = true;  // OpenMP over networks in a batch
};

/// Runs both strategies on `g`. Random tie-breaks draw from `pick_seed`.
AttackOutcome attack_outcome(const Graph& g, std::size_t h, std::uint64_t pick_seed, const HarnessOptions& opts = {});

/// Generates every spec, runs attack_outcome on each and correlates.
/// Failures are rethrown with the offending seed in the message.
CorrelationSummary attack_compare(const std::vector<GenSpec>& specs, std::size_t h, const HarnessOptions& opts = {});

void write_outcomes_csv(std::ostream& out, const std::vector<AttackOutcome>& outcomes);
std::vector<AttackOutcome> read_outcomes_csv(std::istream& in);

struct FragilityComparison {
  std::string network_id;
  std::size_t h = 0;
  std::size_t nodes_before = 0;
  NodeId reference_node = 0;
  std::vector<std::size_t> reference_components;
  std::vector<NodeId> located_critical;
  std::vector<std::size_t> resulting_components;
  std::size_t disconnected_reference = 0;
  std::size_t disconnected_located = 0;

  bool located_matches_reference() const {
    return located_critical.size() == 1 && located_critical.front() == reference_node;
  }
};

/// Removes the reference node, and separately all located critical nodes,
/// from the fragile network. disconnected = nodes before - largest component
/// after - nodes removed.
FragilityComparison fragility_report(const FragileResult& fr, std::size_t h, const std::string& network_id = "",
                                     const HarnessOptions& opts = {});

void write_fragility_csv(std::ostream& out, const std::vector<FragilityComparison>& rows);

/// Per-network h values used for fragile networks when none is given.
std::vector<std::size_t> default_fragile_h(Model model);

struct NeighborhoodStats {
  std::size_t min = 0;
  double mean = 0.0;
  std::size_t max = 0;
};

struct TraceAnalysis {
  CriticalityReport report;
  NeighborhoodStats neighborhoods;
  std::size_t input_nodes = 0;      // before taking the largest component
  std::size_t analyzed_nodes = 0;
  bool took_largest_component = false;
};

NeighborhoodStats neighborhood_stats(const CriticalityReport& r);

/// Reads an edge list and runs the indication round on it (on its largest
/// component if disconnected; a warning goes to `warn` when non-null).
TraceAnalysis analyze_graph(const Graph& g, std::size_t h, const CriticalityOptions& opts = {},
                            std::ostream* warn = nullptr);
TraceAnalysis analyze_trace(const std::filesystem::path& path, std::size_t h, const CriticalityOptions& opts = {},
                            std::ostream* warn = nullptr);

}  // namespace speccrit
