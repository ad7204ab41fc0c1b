#include "speccrit/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "speccrit/csv.hpp"
#include "speccrit/edge_list.hpp"
#include "speccrit/error.hpp"
#include "speccrit/rng.hpp"
#include "speccrit/spectral.hpp"

namespace speccrit {

double pearson_r_squared(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidArgument("pearson: size mismatch");
  const std::size_t n = x.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (sxy * sxy) / (sxx * syy);
}

AttackOutcome attack_outcome(const Graph& g, std::size_t h, std::uint64_t pick_seed, const HarnessOptions& opts) {
  const auto report = run_indication_round(g, h, opts.criticality);
  const auto& spectral = opts.criticality.spectral;
  SplitMix64 rng(pick_seed);

  AttackOutcome out;
  out.nodes = g.node_count();
  out.critical_count = report.critical_nodes.size();
  out.removed_critical = report.critical_nodes[rng.below(report.critical_nodes.size())];
  out.critical_degree = g.degree(g.index_of(out.removed_critical));

  std::vector<NodeId> hubs;
  for (Index v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) > out.max_degree) {
      out.max_degree = g.degree(v);
      hubs.clear();
    }
    if (g.degree(v) == out.max_degree) hubs.push_back(g.id(v));
  }
  out.removed_maxdegree = hubs[rng.below(hubs.size())];

  out.lambda2_original = whole_graph_gap(g, spectral);
  out.delta_lambda2_critical = out.lambda2_original - whole_graph_gap(remove_node(g, out.removed_critical), spectral);
  out.delta_lambda2_maxdegree =
      out.removed_maxdegree == out.removed_critical
          ? out.delta_lambda2_critical
          : out.lambda2_original - whole_graph_gap(remove_node(g, out.removed_maxdegree), spectral);
  return out;
}

CorrelationSummary attack_compare(const std::vector<GenSpec>& specs, std::size_t h, const HarnessOptions& opts) {
  CorrelationSummary summary;
  summary.outcomes.resize(specs.size());
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 1) if (opts.parallel_networks)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(specs.size()); ++i) {
    const auto& spec = specs[i];
    try {
      try {
        const Graph g = generate(spec);
        auto out = attack_outcome(g, h, derive_seed(spec.seed, 0xa77ac), opts);
        out.network_seed = spec.seed;
        summary.outcomes[i] = out;
      } catch (const std::exception& e) {
        throw Error("network seed " + std::to_string(spec.seed) + ": " + e.what());
      }
    } catch (...) {
#pragma omp critical(speccrit_attack_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> x, y;
  for (const auto& o : summary.outcomes) {
    x.push_back(o.delta_lambda2_maxdegree);
    y.push_back(o.delta_lambda2_critical);
  }
  summary.r_squared = pearson_r_squared(x, y);
  return summary;
}

namespace {
constexpr const char* kOutcomeHeader =
    "network_seed,nodes,lambda2_original,delta_lambda2_critical,delta_lambda2_maxdegree,removed_critical,"
    "removed_maxdegree,critical_count,critical_degree,max_degree";

std::uint64_t parse_uint(const std::string& s) {
  std::size_t pos = 0;
  const auto v = std::stoull(s, &pos);
  if (pos != s.size()) throw Error("not an integer: '" + s + "'");
  return v;
}
}  // namespace

void write_outcomes_csv(std::ostream& out, const std::vector<AttackOutcome>& outcomes) {
  out << kOutcomeHeader << '\n';
  for (const auto& o : outcomes) {
    out << csv::row(o.network_seed, o.nodes, o.lambda2_original, o.delta_lambda2_critical, o.delta_lambda2_maxdegree,
                    o.removed_critical, o.removed_maxdegree, o.critical_count, o.critical_degree, o.max_degree)
        << '\n';
  }
}

std::vector<AttackOutcome> read_outcomes_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kOutcomeHeader) throw ParseError(1, "unexpected outcomes header");
  std::vector<AttackOutcome> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto f = csv::split(line);
    if (f.size() != 10) throw ParseError(lineno, "expected 10 fields");
    try {
      AttackOutcome o;
      o.network_seed = parse_uint(f[0]);
      o.nodes = parse_uint(f[1]);
      o.lambda2_original = csv::parse_double(f[2]);
      o.delta_lambda2_critical = csv::parse_double(f[3]);
      o.delta_lambda2_maxdegree = csv::parse_double(f[4]);
      o.removed_critical = parse_uint(f[5]);
      o.removed_maxdegree = parse_uint(f[6]);
      o.critical_count = parse_uint(f[7]);
      o.critical_degree = parse_uint(f[8]);
      o.max_degree = parse_uint(f[9]);
      out.push_back(o);
    } catch (const std::exception& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return out;
}

FragilityComparison fragility_report(const FragileResult& fr, std::size_t h, const std::string& network_id,
                                     const HarnessOptions& opts) {
  FragilityComparison c;
  c.network_id = network_id;
  c.h = h;
  c.nodes_before = fr.graph.node_count();
  c.reference_node = fr.fragmenting_node;

  const ComponentSet ref = connected_components(remove_node(fr.graph, fr.fragmenting_node));
  c.reference_components = ref.sizes();
  c.disconnected_reference = c.nodes_before - ref.largest() - 1;

  const auto report = run_indication_round(fr.graph, h, opts.criticality);
  c.located_critical = report.critical_nodes;
  const ComponentSet got = connected_components(remove_nodes(fr.graph, c.located_critical));
  c.resulting_components = got.sizes();
  c.disconnected_located = c.nodes_before - got.largest() - c.located_critical.size();
  return c;
}

namespace {
template <typename T>
std::string joined(const std::vector<T>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(xs[i]);
  }
  return s;
}
}  // namespace

void write_fragility_csv(std::ostream& out, const std::vector<FragilityComparison>& rows) {
  out << "network_id,h,nodes_before,reference_node,reference_components,located_critical,resulting_components,"
         "disconnected_reference,disconnected_located\n";
  for (const auto& c : rows) {
    out << csv::row(c.network_id, c.h, c.nodes_before, c.reference_node, joined(c.reference_components),
                    joined(c.located_critical), joined(c.resulting_components), c.disconnected_reference,
                    c.disconnected_located)
        << '\n';
  }
}

std::vector<std::size_t> default_fragile_h(Model model) {
  if (model == Model::BA) return {6, 6, 4, 4, 6};
  return {9, 4, 4, 7, 4};
}

NeighborhoodStats neighborhood_stats(const CriticalityReport& r) {
  NeighborhoodStats s;
  if (r.assessments.empty()) return s;
  s.min = std::numeric_limits<std::size_t>::max();
  double total = 0.0;
  for (const auto& a : r.assessments) {
    s.min = std::min(s.min, a.neighborhood_size);
    s.max = std::max(s.max, a.neighborhood_size);
    total += static_cast<double>(a.neighborhood_size);
  }
  s.mean = total / static_cast<double>(r.assessments.size());
  return s;
}

TraceAnalysis analyze_graph(const Graph& g, std::size_t h, const CriticalityOptions& opts, std::ostream* warn) {
  TraceAnalysis t;
  t.input_nodes = g.node_count();
  const Graph* target = &g;
  Graph largest;
  if (!is_connected(g)) {
    largest = largest_component(g);
    target = &largest;
    t.took_largest_component = true;
    if (warn) {
      *warn << "warning: graph is disconnected; analyzing largest component (" << largest.node_count() << " of "
            << g.node_count() << " nodes)\n";
    }
  }
  t.analyzed_nodes = target->node_count();
  t.report = run_indication_round(*target, h, opts);
  t.neighborhoods = neighborhood_stats(t.report);
  return t;
}

TraceAnalysis analyze_trace(const std::filesystem::path& path, std::size_t h, const CriticalityOptions& opts,
                            std::ostream* warn) {
  return analyze_graph(read_graph(path), h, opts, warn);
}

}  // namespace speccrit
