#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "speccrit/criticality.hpp"
#include "speccrit/graph.hpp"

namespace speccrit {

enum class StepKind {
  Start,
  FollowPointer,  // current node points elsewhere: move to the indicated node
  JumpToKnower,   // local minimum with score < 1: move to a member that knows a lower kappa
};

std::string_view to_string(StepKind k);

struct NavigationTrace {
  std::vector<NodeId> path;    // path.front() is the start node
  std::vector<StepKind> steps; // parallel to path; steps.front() == Start
  NodeId terminal = 0;         // == path.back(), score 1
  std::uint64_t rng_seed = 0;

  std::size_t hops() const { return path.empty() ? 0 : path.size() - 1; }
};

struct NavigationOptions {
  // Throw InvariantViolation when a FollowPointer target does not have a
  // strictly smaller (kappa, id) key than every earlier one. Otherwise the
  // violation goes to stderr and navigation continues.
#ifdef NDEBUG
  bool strict_progress = false;
#else
  bool strict_progress = true;
#endif
};

/// Walks from `start` to a node with score 1 using only per-node report
/// state. Random choices among knowers come from SplitMix64(rng_seed).
/// Throws InvalidArgument for an unknown start and InvariantViolation if a
/// node would be visited twice.
NavigationTrace navigate(const Graph& g, const CriticalityReport& report, NodeId start, std::uint64_t rng_seed,
                         const NavigationOptions& opts = {});

/// Members u of v's h-ball with lowest_k_pointer(u) != v, ascending.
/// Only meaningful when v points at itself; throws InvalidArgument otherwise.
std::vector<NodeId> knowers_of_lower_kappa(const Graph& g, const CriticalityReport& report, NodeId v);

/// CSV with header: step,node_id,step_kind,kappa
void write_trace_csv(std::ostream& out, const NavigationTrace& t, const CriticalityReport& report);
/// One JSON object per line with the same fields.
void write_trace_jsonl(std::ostream& out, const NavigationTrace& t, const CriticalityReport& report);

}  // namespace speccrit
