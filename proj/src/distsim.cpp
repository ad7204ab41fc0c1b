#include "speccrit/distsim.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <iterator>
#include <ostream>
#include <string>
#include <unordered_map>

#include "speccrit/csv.hpp"
#include "speccrit/error.hpp"

namespace speccrit::distsim {

namespace {

std::string_view kind_name(MessageKind k) {
  switch (k) {
    case MessageKind::Topology:
      return "TOPOLOGY";
    case MessageKind::Kappa:
      return "KAPPA";
    case MessageKind::Indication:
      return "INDICATION";
  }
  return "?";
}

Edge canonical(NodeId a, NodeId b) { return {std::min(a, b), std::max(a, b)}; }

// Runs `body(v)` for every node, optionally in parallel. Any exception is
// rethrown after the loop.
template <typename Body>
void for_each_node(std::size_t n, bool parallel, Body&& body) {
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
  for (std::int64_t v = 0; v < static_cast<std::int64_t>(n); ++v) {
    try {
      body(static_cast<Index>(v));
    } catch (...) {
#pragma omp critical(speccrit_distsim_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

// The node-local view: known edges turned into a graph, plus BFS from the owner.
struct LocalView {
  Graph graph;
  Index self = 0;
  BfsWorkspace ws;
  std::vector<Index> ball;
};

LocalView local_view(const NodeState& s, std::size_t h) {
  LocalView lv;
  lv.graph = Graph::from_edges(s.known_edges);
  lv.self = lv.graph.index_of(s.id);
  auto b = lv.ws.ball(lv.graph, lv.self, h);
  lv.ball.assign(b.begin(), b.end());
  return lv;
}

class Simulator {
 public:
  Simulator(const Graph& g, std::size_t h, const SimOptions& opts)
      : g_(g), h_(h), opts_(opts), states_(g.node_count()), inbox_(g.node_count()), outbox_(g.node_count()) {
    for (Index v = 0; v < g.node_count(); ++v) states_[v].id = g.id(v);
  }

  ProtocolResult run() {
    topology_phase();
    kappa_phase();
    indication_phase();
    score_phase();
    ProtocolResult out;
    out.stats = stats_;
    out.stats.rounds = round_;
    out.report = build_report();
    out.states = std::move(states_);
    return out;
  }

 private:
  // Moves every outbox into the receivers' inboxes in sender order.
  void deliver() {
    ++round_;
    for (auto& in : inbox_) in.clear();
    for (Index v = 0; v < g_.node_count(); ++v) {
      for (auto& m : outbox_[v]) {
        ++stats_.total_messages;
        switch (m.kind) {
          case MessageKind::Topology:
            ++stats_.topology_messages;
            break;
          case MessageKind::Kappa:
            ++stats_.kappa_messages;
            break;
          case MessageKind::Indication:
            ++stats_.indication_messages;
            break;
        }
        if (opts_.trace) {
          *opts_.trace << round_ << ',' << kind_name(m.kind) << ',' << m.sender << ',' << m.receiver << '\n';
        }
        inbox_[g_.index_of(m.receiver)].push_back(std::move(m));
      }
      outbox_[v].clear();
    }
    for (auto& s : states_) s.round = round_;
  }

  void send(Index from, Index to, Message m) {
    m.sender = g_.id(from);
    m.receiver = g_.id(to);
    outbox_[from].push_back(std::move(m));
  }

  void topology_phase() {
    std::vector<std::vector<Edge>> fresh(g_.node_count());

    // Round 1: hello on every link.
    for_each_node(g_.node_count(), opts_.parallel, [&](Index v) {
      for (Index u : g_.neighbors(v)) {
        Message m;
        m.kind = MessageKind::Topology;
        m.edges = {canonical(g_.id(v), g_.id(u))};
        send(v, u, std::move(m));
      }
    });
    deliver();
    for_each_node(g_.node_count(), opts_.parallel, [&](Index v) { absorb_topology(v, fresh[v]); });
    ++stats_.topology_rounds;

    // Rounds 2..h+1: forward last round's news.
    for (std::size_t r = 0; r < h_; ++r) {
      for_each_node(g_.node_count(), opts_.parallel, [&](Index v) {
        if (fresh[v].empty()) return;
        for (Index u : g_.neighbors(v)) {
          Message m;
          m.kind = MessageKind::Topology;
          m.edges = fresh[v];
          send(v, u, std::move(m));
        }
      });
      deliver();
      for_each_node(g_.node_count(), opts_.parallel, [&](Index v) { absorb_topology(v, fresh[v]); });
      ++stats_.topology_rounds;
      if (opts_.check_locality) check_locality();
    }
  }

  void absorb_topology(Index v, std::vector<Edge>& fresh) {
    std::vector<Edge> incoming;
    for (const auto& m : inbox_[v]) incoming.insert(incoming.end(), m.edges.begin(), m.edges.end());
    std::sort(incoming.begin(), incoming.end());
    incoming.erase(std::unique(incoming.begin(), incoming.end()), incoming.end());
    auto& known = states_[v].known_edges;
    fresh.clear();
    std::set_difference(incoming.begin(), incoming.end(), known.begin(), known.end(), std::back_inserter(fresh));
    std::vector<Edge> merged;
    merged.reserve(known.size() + fresh.size());
    std::merge(known.begin(), known.end(), fresh.begin(), fresh.end(), std::back_inserter(merged));
    known = std::move(merged);
  }

  void check_locality() {
    BfsWorkspace ws(g_.node_count());
    for (Index v = 0; v < g_.node_count(); ++v) {
      ws.ball(g_, v, h_);
      for (auto [a, b] : states_[v].known_edges) {
        if (!ws.reached(g_.index_of(a)) && !ws.reached(g_.index_of(b))) {
          throw InvariantViolation("node " + std::to_string(g_.id(v)) + " holds remote edge (" + std::to_string(a) +
                                   ", " + std::to_string(b) + ")");
        }
      }
    }
  }

  void kappa_phase() {
    // Local computation: trim to the induced h-ball and evaluate kappa.
    for_each_node(g_.node_count(), opts_.parallel, [&](Index v) {
      auto& s = states_[v];
      LocalView lv = local_view(s, h_);
      Graph ball = induced_subgraph(lv.graph, lv.ball);
      s.known_edges = ball.edges();
      s.ball_size = ball.node_count();
      const std::size_t degree = lv.graph.degree(lv.self);
      if (degree == 1) {
        s.kappa = kInfiniteKappa;
      } else {
        s.kappa = spectral_gap(ball, opts_.spectral).lambda2 / std::log2(static_cast<double>(degree));
      }
      s.peer_kappas.clear();
      s.peer_kappas.emplace(s.id, s.kappa);
    });
    for (const auto& s : states_) stats_.max_node_state_nodes = std::max(stats_.max_node_state_nodes, s.ball_size);

    std::vector<std::vector<std::pair<NodeId, double>>> fresh(g_.node_count());
    for (Index v = 0; v < g_.node_count(); ++v) fresh[v] = {{states_[v].id, states_[v].kappa}};
    for (std::size_t r = 0; r < h_; ++r) {
      for_each_node(g_.node_count(), opts_.parallel, [&](Index v) {
        if (fresh[v].empty()) return;
        for (Index u : g_.neighbors(v)) {
          Message m;
          m.kind = MessageKind::Kappa;
          m.kappas = fresh[v];
          send(v, u, std::move(m));
        }
      });
      deliver();
      for_each_node(g_.node_count(), opts_.parallel, [&](Index v) {
        auto& s = states_[v];
        fresh[v].clear();
        for (const auto& m : inbox_[v]) {
          for (const auto& [id, k] : m.kappas) {
            if (s.peer_kappas.emplace(id, k).second) fresh[v].emplace_back(id, k);
          }
        }
        std::sort(fresh[v].begin(), fresh[v].end());
      });
      ++stats_.kappa_rounds;
    }
  }

  void indication_phase() {
    std::vector<Message> pending_self(g_.node_count());
    for_each_node(g_.node_count(), opts_.parallel, [&](Index v) {
      auto& s = states_[v];
      if (s.peer_kappas.size() != s.ball_size) {
        throw InvariantViolation("node " + std::to_string(s.id) + " learned " + std::to_string(s.peer_kappas.size()) +
                                 " kappas for a ball of " + std::to_string(s.ball_size));
      }
      // std::map iterates in ascending id, so strict < keeps the lowest id on ties.
      NodeId best = s.id;
      double best_key = comparable_kappa(s.kappa);
      for (const auto& [id, k] : s.peer_kappas) {
        const double key = comparable_kappa(k);
        if (key < best_key || (key == best_key && id < best)) {
          best = id;
          best_key = key;
        }
      }
      s.pointer = best;
      if (best == s.id) return;

      LocalView lv = local_view(s, h_);
      std::vector<NodeId> route;
      for (Index x = lv.graph.index_of(best); x != lv.self; x = lv.ws.parent(x)) route.push_back(lv.graph.id(x));
      route.push_back(s.id);
      std::reverse(route.begin(), route.end());
      Message m;
      m.kind = MessageKind::Indication;
      m.route = std::move(route);
      m.hop = 1;
      const Index first = g_.index_of(m.route[1]);
      send(v, first, std::move(m));
    });
    for (auto& s : states_) {
      if (s.pointer == s.id) ++s.indications_received;
    }

    while (std::any_of(outbox_.begin(), outbox_.end(), [](const auto& o) { return !o.empty(); })) {
      deliver();
      ++stats_.indication_rounds;
      for (Index v = 0; v < g_.node_count(); ++v) {
        for (auto& m : inbox_[v]) {
          if (m.hop + 1 == m.route.size()) {
            ++states_[v].indications_received;
            continue;
          }
          ++m.hop;
          const Index next = g_.index_of(m.route[m.hop]);
          if (!g_.has_edge(v, next)) throw InvariantViolation("indication route leaves the graph");
          send(v, next, std::move(m));
        }
      }
    }
  }

  void score_phase() {
    for (auto& s : states_) {
      s.score = static_cast<double>(s.indications_received) / static_cast<double>(s.ball_size);
    }
  }

  CriticalityReport build_report() const {
    CriticalityReport r;
    r.h = h_;
    r.assessments.resize(g_.node_count());
    for (Index v = 0; v < g_.node_count(); ++v) {
      const auto& s = states_[v];
      auto& a = r.assessments[v];
      a.node = s.id;
      a.degree = g_.degree(v);
      a.kappa = s.kappa;
      a.neighborhood_size = s.ball_size;
      a.lowest_k_pointer = s.pointer;
      a.indications = s.indications_received;
      a.score = s.score;
      if (s.indications_received == s.ball_size) r.critical_nodes.push_back(s.id);
    }
    return r;
  }

  const Graph& g_;
  std::size_t h_;
  const SimOptions& opts_;
  std::vector<NodeState> states_;
  std::vector<std::vector<Message>> inbox_;
  std::vector<std::vector<Message>> outbox_;
  std::size_t round_ = 0;
  ProtocolStats stats_;
};

}  // namespace

ProtocolResult run_protocol(const Graph& g, std::size_t h, const SimOptions& opts) {
  if (h == 0) throw InvalidArgument("hop radius must be >= 1");
  if (g.node_count() < 2) throw InvalidArgument("protocol needs at least 2 nodes");
  if (!is_connected(g)) throw InvalidArgument("protocol needs a connected graph");
  Simulator sim(g, h, opts);
  return sim.run();
}

ProtocolStats message_stats(const Graph& g, std::size_t h, const SimOptions& opts) {
  return run_protocol(g, h, opts).stats;
}

std::vector<Mismatch> compare_reports(const CriticalityReport& a, const CriticalityReport& b,
                                      double kappa_tolerance) {
  std::vector<Mismatch> out;
  if (a.assessments.size() != b.assessments.size()) {
    out.push_back({0, "node_count"});
    return out;
  }
  for (std::size_t i = 0; i < a.assessments.size(); ++i) {
    const auto& x = a.assessments[i];
    const auto& y = b.assessments[i];
    if (x.node != y.node) {
      out.push_back({x.node, "node"});
      continue;
    }
    const bool same_kappa = (std::isinf(x.kappa) && std::isinf(y.kappa)) ||
                            std::abs(x.kappa - y.kappa) <= kappa_tolerance;
    if (!same_kappa) out.push_back({x.node, "kappa"});
    if (x.lowest_k_pointer != y.lowest_k_pointer) out.push_back({x.node, "lowest_k_pointer"});
    if (x.indications != y.indications) out.push_back({x.node, "indications"});
    if (x.neighborhood_size != y.neighborhood_size) out.push_back({x.node, "neighborhood_size"});
    if (x.score != y.score) out.push_back({x.node, "score"});
  }
  if (a.critical_nodes != b.critical_nodes) out.push_back({0, "critical_nodes"});
  return out;
}

void write_stats_csv(std::ostream& out, const ProtocolStats& s) {
  out << "rounds,topology_rounds,kappa_rounds,indication_rounds,total_messages,topology_messages,"
         "kappa_messages,indication_messages,max_node_state_nodes\n";
  out << csv::row(s.rounds, s.topology_rounds, s.kappa_rounds, s.indication_rounds, s.total_messages,
                  s.topology_messages, s.kappa_messages, s.indication_messages, s.max_node_state_nodes)
      << '\n';
}

}  // namespace speccrit::distsim
