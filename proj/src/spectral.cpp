#include "speccrit/spectral.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "lanczos.hpp"
#include "speccrit/error.hpp"

namespace speccrit {

double SymMatrix::row_sum(std::size_t i) const {
  double s = 0.0;
  for (std::size_t j = 0; j < order_; ++j) s += (*this)(i, j);
  return s;
}

SymMatrix adjacency_matrix(const Graph& g) {
  SymMatrix a(g.node_count());
  for (Index u = 0; u < g.node_count(); ++u) {
    for (Index v : g.neighbors(u)) a.set(u, v, 1.0);
  }
  return a;
}

SymMatrix degree_matrix(const Graph& g) {
  SymMatrix d(g.node_count());
  for (Index u = 0; u < g.node_count(); ++u) d.set(u, u, static_cast<double>(g.degree(u)));
  return d;
}

SymMatrix combinatorial_laplacian(const Graph& g) {
  SymMatrix l(g.node_count());
  for (Index u = 0; u < g.node_count(); ++u) {
    l.set(u, u, static_cast<double>(g.degree(u)));
    for (Index v : g.neighbors(u)) l.set(u, v, -1.0);
  }
  return l;
}

namespace {

void require_no_isolated(const Graph& g) {
  for (Index u = 0; u < g.node_count(); ++u) {
    if (g.degree(u) == 0) {
      throw InvalidArgument("isolated node " + std::to_string(g.id(u)) +
                            ": normalized Laplacian undefined");
    }
  }
}

void require_gap_preconditions(const Graph& g) {
  if (g.node_count() < 2) throw InvalidArgument("spectral gap needs at least 2 nodes");
  require_no_isolated(g);
}

}  // namespace

SymMatrix normalized_laplacian(const Graph& g) {
  require_no_isolated(g);
  SymMatrix l(g.node_count());
  for (Index u = 0; u < g.node_count(); ++u) {
    l.set(u, u, 1.0);
    const double du = static_cast<double>(g.degree(u));
    for (Index v : g.neighbors(u)) {
      if (v > u) l.set(u, v, -1.0 / std::sqrt(du * static_cast<double>(g.degree(v))));
    }
  }
  return l;
}

SpectrumResult spectral_gap_dense(const Graph& g, const SpectralOptions& opts) {
  require_gap_preconditions(g);
  const SymMatrix lap = normalized_laplacian(g);
  const auto n = static_cast<Eigen::Index>(lap.order());
  Eigen::Map<const Eigen::MatrixXd> m(lap.data(), n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NotConverged("dense symmetric eigensolver failed");

  SpectrumResult r;
  r.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  r.lambda2 = r.eigenvalues[1];
  r.zero_tolerance = opts.zero_tolerance;
  r.method = EigenMethod::Dense;
  return r;
}

SpectrumResult spectral_gap_lanczos(const Graph& g, const SpectralOptions& opts) {
  require_gap_preconditions(g);
  const std::size_t n = g.node_count();

  // Work with I + D^{-1/2} A D^{-1/2} = 2I - L: its largest eigenvalue on the
  // complement of the known null vector sqrt(d) is 2 - lambda2.
  std::vector<double> inv_sqrt_deg(n), null_vec(n);
  double norm = 0.0;
  for (Index v = 0; v < n; ++v) {
    const double d = static_cast<double>(g.degree(v));
    inv_sqrt_deg[v] = 1.0 / std::sqrt(d);
    null_vec[v] = std::sqrt(d);
    norm += d;
  }
  norm = std::sqrt(norm);
  for (double& x : null_vec) x /= norm;

  auto apply = [&](std::span<const double> x, std::span<double> y) {
    for (Index v = 0; v < n; ++v) {
      double acc = 0.0;
      for (Index w : g.neighbors(v)) acc += inv_sqrt_deg[w] * x[w];
      y[v] = x[v] + inv_sqrt_deg[v] * acc;
    }
  };

  detail::LanczosParams params;
  params.residual_tolerance = opts.residual_tolerance;
  params.max_basis = opts.max_basis;
  params.max_restarts = opts.max_restarts;
  const auto lz = detail::lanczos_largest(n, apply, null_vec, params);

  SpectrumResult r;
  r.lambda2 = 2.0 - lz.theta;
  r.eigenvalues = {0.0, r.lambda2};
  r.zero_tolerance = opts.zero_tolerance;
  r.method = EigenMethod::Lanczos;
  r.iterations = lz.iterations;
  r.residual = lz.residual;
  return r;
}

SpectrumResult spectral_gap(const Graph& g, const SpectralOptions& opts) {
  if (g.node_count() <= opts.dense_threshold) return spectral_gap_dense(g, opts);
  return spectral_gap_lanczos(g, opts);
}

double whole_graph_gap(const Graph& g, const SpectralOptions& opts) {
  if (g.node_count() < 2 || !is_connected(g)) return 0.0;
  return spectral_gap(g, opts).lambda2;
}

}  // namespace speccrit
