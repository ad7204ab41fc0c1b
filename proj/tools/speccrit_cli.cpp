// speccrit command-line front end.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "speccrit/criticality.hpp"
#include "speccrit/distsim.hpp"
#include "speccrit/edge_list.hpp"
#include "speccrit/error.hpp"
#include "speccrit/generators.hpp"
#include "speccrit/harness.hpp"
#include "speccrit/navigation.hpp"
#include "speccrit/rng.hpp"

using namespace speccrit;

namespace {

struct ModelArgs {
  std::string model = "ba";
  std::size_t n = 1000;
  std::optional<double> p;
  std::optional<std::size_t> m;
  std::uint64_t seed = 1;

  GenSpec spec() const {
    GenSpec s;
    s.model = model == "er" ? Model::ER : Model::BA;
    s.n = n;
    if (p) s.p = *p;
    if (m) s.m = *m;
    s.seed = seed;
    if (s.model == Model::ER && m) throw InvalidArgument("--m applies to the ba model only");
    if (s.model == Model::BA && p) throw InvalidArgument("--p applies to the er model only");
    return s;
  }
};

void add_model_options(CLI::App* cmd, ModelArgs& a) {
  cmd->add_option("--model", a.model, "er or ba")->required()->check(CLI::IsMember({"er", "ba"}));
  cmd->add_option("--n", a.n, "number of nodes")->check(CLI::PositiveNumber);
  cmd->add_option("--p", a.p, "edge probability (er)");
  cmd->add_option("--m", a.m, "links per new node (ba)");
  cmd->add_option("--seed", a.seed, "RNG seed");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  return out;
}

// Writes to `path`, or stdout when it is empty or "-".
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  auto out = open_out(path);
  fn(out);
  if (!out) throw Error("write to " + path + " failed");
}

std::size_t default_h(Model m) { return m == Model::BA ? 4 : 6; }

// Most common value of default_fragile_h for the model.
std::size_t default_fragile_single_h(Model m) { return m == Model::BA ? 6 : 4; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locate critical nodes from local spectral information"};
  app.name("speccrit");
  app.require_subcommand(1);
  // "--h" is the neighborhood radius, so help is long-form only.
  app.set_help_flag("--help", "print this help message and exit");

  ModelArgs gen_args;
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "sample an ER or BA network and write its edge list");
  add_model_options(gen, gen_args);
  gen->add_option("--out", gen_out, "edge-list file")->required();

  ModelArgs frag_args;
  double fraction = kDefaultFragilityFraction;
  std::string prefix;
  std::optional<std::size_t> frag_h;
  auto* frag = app.add_subcommand("fragile", "build a fragile network and compare located critical nodes");
  add_model_options(frag, frag_args);
  frag->add_option("--fraction", fraction, "minimum detached fraction for the fragmenting removal");
  frag->add_option("--out-prefix", prefix, "writes PFX.edges, PFX_trace.csv, PFX_comparison.csv")->required();
  frag->add_option("--h", frag_h, "neighborhood radius (default ba 6, er 4)");

  std::string graph_path, report_out;
  std::size_t h = 0;
  bool stats = false;
  auto* analyze = app.add_subcommand("analyze", "run the indication round on an edge-list file");
  analyze->add_option("--graph", graph_path)->required();
  analyze->add_option("--h", h)->required()->check(CLI::PositiveNumber);
  analyze->add_option("--out", report_out, "report CSV")->required();
  analyze->add_flag("--stats", stats, "print neighborhood size statistics as CSV");

  NodeId start = 0;
  std::uint64_t nav_seed = 1;
  std::string nav_out;
  bool jsonl = false;
  auto* nav = app.add_subcommand("navigate", "walk from a start node to a critical node");
  nav->add_option("--graph", graph_path)->required();
  nav->add_option("--h", h)->required()->check(CLI::PositiveNumber);
  nav->add_option("--start", start)->required();
  nav->add_option("--seed", nav_seed);
  nav->add_option("--out", nav_out, "trace file (default stdout)");
  nav->add_flag("--jsonl", jsonl, "write JSON lines instead of CSV");

  ModelArgs atk_args;
  std::size_t count = 30;
  std::optional<std::size_t> atk_h;
  std::string pairs_out;
  auto* atk = app.add_subcommand("attack-compare", "critical-node vs max-degree removal over many networks");
  add_model_options(atk, atk_args);
  atk->add_option("--count", count)->check(CLI::PositiveNumber);
  atk->add_option("--h", atk_h, "neighborhood radius (default ba 4, er 6)");
  atk->add_option("--out", pairs_out, "outcomes CSV")->required();

  std::string trace_path;
  auto* sim = app.add_subcommand("simulate", "run the message-passing protocol and check it against the centralized round");
  sim->add_option("--graph", graph_path)->required();
  sim->add_option("--h", h)->required()->check(CLI::PositiveNumber);
  sim->add_option("--trace", trace_path, "message log");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const Graph g = generate(gen_args.spec());
      write_edge_list(gen_out, g);
    } else if (*frag) {
      const GenSpec spec = frag_args.spec();
      const auto fr = gen_fragile(spec, fraction, derive_seed(spec.seed, 0xf7a6));
      const std::size_t fh = frag_h.value_or(default_fragile_single_h(spec.model));
      write_edge_list(prefix + ".edges", fr.graph);
      with_output(prefix + "_trace.csv", [&](std::ostream& o) { write_removal_trace_csv(o, fr); });
      const auto cmp = fragility_report(fr, fh, frag_args.model + "-" + std::to_string(spec.seed));
      with_output(prefix + "_comparison.csv", [&](std::ostream& o) { write_fragility_csv(o, std::vector<FragilityComparison>{cmp}); });
    } else if (*analyze) {
      const auto t = analyze_trace(graph_path, h, {}, &std::cerr);
      with_output(report_out, [&](std::ostream& o) { write_report_csv(o, t.report); });
      if (stats) {
        std::cout << "input_nodes,analyzed_nodes,critical_count,neighborhood_min,neighborhood_mean,neighborhood_max\n"
                  << t.input_nodes << ',' << t.analyzed_nodes << ',' << t.report.critical_nodes.size() << ','
                  << t.neighborhoods.min << ',' << t.neighborhoods.mean << ',' << t.neighborhoods.max << '\n';
      }
    } else if (*nav) {
      const Graph g = read_graph(graph_path);
      const auto report = run_indication_round(g, h);
      const auto t = navigate(g, report, start, nav_seed);
      with_output(nav_out, [&](std::ostream& o) {
        if (jsonl)
          write_trace_jsonl(o, t, report);
        else
          write_trace_csv(o, t, report);
      });
    } else if (*atk) {
      const GenSpec base = atk_args.spec();
      std::vector<GenSpec> specs(count, base);
      for (std::size_t i = 0; i < count; ++i) specs[i].seed = base.seed + i;
      const auto summary = attack_compare(specs, atk_h.value_or(default_h(base.model)));
      with_output(pairs_out, [&](std::ostream& o) { write_outcomes_csv(o, summary.outcomes); });
      std::cout << "networks,r_squared\n" << count << ',' << summary.r_squared << '\n';
    } else if (*sim) {
      const Graph g = read_graph(graph_path);
      distsim::SimOptions opts;
      std::unique_ptr<std::ofstream> trace;
      if (!trace_path.empty()) {
        trace = std::make_unique<std::ofstream>(open_out(trace_path));
        opts.trace = trace.get();
      }
      const auto result = distsim::run_protocol(g, h, opts);
      const auto diff = distsim::compare_reports(run_indication_round(g, h), result.report);
      distsim::write_stats_csv(std::cout, result.stats);
      if (!diff.empty()) {
        std::cerr << "speccrit: distributed report differs from centralized at node " << diff.front().node << " ("
                  << diff.front().field << "), " << diff.size() << " mismatches\n";
        return 2;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "speccrit: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
