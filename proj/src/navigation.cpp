#include "speccrit/navigation.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <json.hpp>
#include <string>
#include <unordered_set>

#include "speccrit/csv.hpp"
#include "speccrit/error.hpp"
#include "speccrit/rng.hpp"

namespace speccrit {

std::string_view to_string(StepKind k) {
  switch (k) {
    case StepKind::Start:
      return "START";
    case StepKind::FollowPointer:
      return "FOLLOW_POINTER";
    case StepKind::JumpToKnower:
      return "JUMP_TO_KNOWER";
  }
  return "?";
}

std::vector<NodeId> knowers_of_lower_kappa(const Graph& g, const CriticalityReport& report, NodeId v) {
  const auto& self = report.at(v);
  if (self.lowest_k_pointer != v) {
    throw InvalidArgument("node " + std::to_string(v) + " indicates " + std::to_string(self.lowest_k_pointer) +
                          ", not itself");
  }
  BfsWorkspace ws(g.node_count());
  std::vector<NodeId> out;
  for (Index u : ws.ball(g, g.index_of(v), report.h)) {
    if (report.assessments[u].lowest_k_pointer != v) out.push_back(g.id(u));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct Key {
  double kappa;
  NodeId id;
  bool operator<(const Key& o) const { return kappa < o.kappa || (kappa == o.kappa && id < o.id); }
};

}  // namespace

NavigationTrace navigate(const Graph& g, const CriticalityReport& report, NodeId start, std::uint64_t rng_seed,
                         const NavigationOptions& opts) {
  if (!g.contains(start)) throw InvalidArgument("unknown start node " + std::to_string(start));
  if (report.assessments.size() != g.node_count()) throw InvalidArgument("report does not match graph");

  SplitMix64 rng(rng_seed);
  NavigationTrace t;
  t.rng_seed = rng_seed;
  std::unordered_set<NodeId> seen;

  auto visit = [&](NodeId v, StepKind kind) {
    if (!seen.insert(v).second) {
      throw InvariantViolation("navigation revisited node " + std::to_string(v) + " after " +
                               std::to_string(t.path.size()) + " hops");
    }
    t.path.push_back(v);
    t.steps.push_back(kind);
  };

  bool have_last = false;
  Key last{};
  NodeId current = start;
  visit(current, StepKind::Start);
  while (true) {
    const auto& a = report.at(current);
    if (a.lowest_k_pointer != current) {
      const NodeId next = a.lowest_k_pointer;
      const Key k{comparable_kappa(report.at(next).kappa), next};
      if (have_last && !(k < last)) {
        const std::string msg = "kappa did not decrease at node " + std::to_string(next);
        if (opts.strict_progress) throw InvariantViolation(msg);
        std::cerr << "speccrit: warning: " << msg << '\n';
      }
      last = k;
      have_last = true;
      visit(next, StepKind::FollowPointer);
      current = next;
      continue;
    }
    if (a.indications == a.neighborhood_size) break;

    auto knowers = knowers_of_lower_kappa(g, report, current);
    if (knowers.empty()) {
      throw InvariantViolation("node " + std::to_string(current) + " has score < 1 but no knowers");
    }
    const NodeId next = knowers[rng.below(knowers.size())];
    visit(next, StepKind::JumpToKnower);
    current = next;
  }
  t.terminal = current;
  return t;
}

void write_trace_csv(std::ostream& out, const NavigationTrace& t, const CriticalityReport& report) {
  out << "step,node_id,step_kind,kappa\n";
  for (std::size_t i = 0; i < t.path.size(); ++i) {
    out << csv::row(i, t.path[i], std::string(to_string(t.steps[i])), report.at(t.path[i]).kappa) << '\n';
  }
}

void write_trace_jsonl(std::ostream& out, const NavigationTrace& t, const CriticalityReport& report) {
  for (std::size_t i = 0; i < t.path.size(); ++i) {
    const double k = report.at(t.path[i]).kappa;
    nlohmann::json j{{"step", i}, {"node_id", t.path[i]}, {"step_kind", to_string(t.steps[i])}};
    // JSON has no infinity; leaves carry null.
    j["kappa"] = std::isfinite(k) ? nlohmann::json(k) : nlohmann::json(nullptr);
    out << j.dump() << '\n';
  }
}

}  // namespace speccrit
