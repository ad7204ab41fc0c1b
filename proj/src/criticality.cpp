#include "speccrit/criticality.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <ostream>
#include <string>

#include "speccrit/csv.hpp"
#include "speccrit/error.hpp"

namespace speccrit {

const NodeAssessment& CriticalityReport::at(NodeId id) const {
  auto it = std::lower_bound(assessments.begin(), assessments.end(), id,
                             [](const NodeAssessment& a, NodeId v) { return a.node < v; });
  if (it == assessments.end() || it->node != id) {
    throw InvalidArgument("node " + std::to_string(id) + " not in report");
  }
  return *it;
}

double comparable_kappa(double kappa) {
  if (!std::isfinite(kappa) || kappa == 0.0) return kappa;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", kappa);
  return std::strtod(buf, nullptr);
}

double kappa_at(const Graph& g, Index v, std::size_t h, BfsWorkspace& ws, const SpectralOptions& opts) {
  const std::size_t d = g.degree(v);
  if (d == 0) throw InvalidArgument("node " + std::to_string(g.id(v)) + " is isolated");
  if (h == 0) throw InvalidArgument("hop radius must be >= 1");
  if (d == 1) return kInfiniteKappa;
  const Subgraph ball = h_neighborhood_at(g, v, h, ws);
  const double lambda2 = spectral_gap(ball.graph, opts).lambda2;
  return lambda2 / std::log2(static_cast<double>(d));
}

double kappa(const Graph& g, NodeId v, std::size_t h, const SpectralOptions& opts) {
  BfsWorkspace ws(g.node_count());
  return kappa_at(g, g.index_of(v), h, ws, opts);
}

std::vector<double> compute_kappas_serial(const Graph& g, std::size_t h, const SpectralOptions& opts) {
  std::vector<double> out(g.node_count());
  BfsWorkspace ws(g.node_count());
  for (Index v = 0; v < g.node_count(); ++v) out[v] = kappa_at(g, v, h, ws, opts);
  return out;
}

std::vector<double> compute_kappas(const Graph& g, std::size_t h, const SpectralOptions& opts) {
  const auto n = static_cast<std::int64_t>(g.node_count());
  std::vector<double> out(g.node_count());
  std::exception_ptr failure;

#pragma omp parallel
  {
    BfsWorkspace ws(g.node_count());
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t v = 0; v < n; ++v) {
      try {
        out[v] = kappa_at(g, static_cast<Index>(v), h, ws, opts);
      } catch (...) {
#pragma omp critical(speccrit_kappa_failure)
        if (!failure) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

CriticalityReport assemble_report(const Graph& g, std::size_t h, const std::vector<double>& kappas) {
  const std::size_t n = g.node_count();
  if (kappas.size() != n) throw InvalidArgument("kappa vector size mismatch");

  std::vector<double> key(n);
  for (std::size_t v = 0; v < n; ++v) key[v] = comparable_kappa(kappas[v]);
  // Internal index order is ascending id order, so comparing indices breaks
  // ties by id.
  auto less = [&](Index a, Index b) { return key[a] < key[b] || (key[a] == key[b] && a < b); };

  std::vector<Index> pointer(n);
  std::vector<std::size_t> ball_size(n);
#pragma omp parallel
  {
    BfsWorkspace ws(n);
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t sv = 0; sv < static_cast<std::int64_t>(n); ++sv) {
      const auto v = static_cast<Index>(sv);
      auto ball = ws.ball(g, v, h);
      Index best = v;
      for (Index u : ball) {
        if (less(u, best)) best = u;
      }
      pointer[v] = best;
      ball_size[v] = ball.size();
    }
  }

  CriticalityReport r;
  r.h = h;
  r.assessments.resize(n);
  for (Index v = 0; v < n; ++v) ++r.assessments[pointer[v]].indications;
  for (Index v = 0; v < n; ++v) {
    auto& a = r.assessments[v];
    a.node = g.id(v);
    a.degree = g.degree(v);
    a.kappa = kappas[v];
    a.neighborhood_size = ball_size[v];
    a.lowest_k_pointer = g.id(pointer[v]);
    a.score = static_cast<double>(a.indications) / static_cast<double>(a.neighborhood_size);
    if (a.indications == a.neighborhood_size) r.critical_nodes.push_back(a.node);
  }
  return r;
}

CriticalityReport run_indication_round(const Graph& g, std::size_t h, const CriticalityOptions& opts) {
  if (h == 0) throw InvalidArgument("hop radius must be >= 1");
  if (g.node_count() < 2) throw InvalidArgument("indication round needs at least 2 nodes");
  if (!is_connected(g)) throw InvalidArgument("indication round needs a connected graph");
  auto kappas = opts.parallel ? compute_kappas(g, h, opts.spectral) : compute_kappas_serial(g, h, opts.spectral);
  return assemble_report(g, h, kappas);
}

void write_report_csv(std::ostream& out, const CriticalityReport& r) {
  out << "node_id,degree,neighborhood_size,kappa,lowest_k_pointer,indications,score\n";
  for (const auto& a : r.assessments) {
    out << csv::row(a.node, a.degree, a.neighborhood_size, a.kappa, a.lowest_k_pointer, a.indications,
                    a.score)
        << '\n';
  }
}

}  // namespace speccrit
