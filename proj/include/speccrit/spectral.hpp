#pragma once

#include <cstddef>
#include <vector>

#include "speccrit/graph.hpp"

namespace speccrit {

/// Dense symmetric matrix. Writes go to both triangles, so (i,j) == (j,i)
/// always holds.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t order = 0) : order_(order), data_(order * order, 0.0) {}

  std::size_t order() const noexcept { return order_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * order_ + j]; }
  void set(std::size_t i, std::size_t j, double value) {
    data_[i * order_ + j] = value;
    data_[j * order_ + i] = value;
  }
  double row_sum(std::size_t i) const;

  // Row-major; symmetric, so also column-major.
  const double* data() const noexcept { return data_.data(); }

 private:
  std::size_t order_;
  std::vector<double> data_;
};

SymMatrix adjacency_matrix(const Graph& g);
SymMatrix degree_matrix(const Graph& g);
SymMatrix combinatorial_laplacian(const Graph& g);
/// I - D^{-1/2} A D^{-1/2}. Throws InvalidArgument on a degree-0 node.
SymMatrix normalized_laplacian(const Graph& g);

enum class EigenMethod { Dense, Lanczos };

struct SpectralOptions {
  /// Graphs with at most this many nodes use the dense solver.
  std::size_t dense_threshold = 256;
  double zero_tolerance = 1e-8;
  /// Lanczos stops once ||Lx - lambda x||_2 of the wanted Ritz pair is below this.
  double residual_tolerance = 1e-9;
  /// Krylov basis size before an explicit restart.
  std::size_t max_basis = 400;
  std::size_t max_restarts = 20;
};

struct SpectrumResult {
  /// Ascending. Dense path: the full spectrum. Lanczos path: only the
  /// analytically known 0 and lambda2.
  std::vector<double> eigenvalues;
  double lambda2 = 0.0;
  double zero_tolerance = 1e-8;
  EigenMethod method = EigenMethod::Dense;
  std::size_t iterations = 0;  // Lanczos steps; 0 for dense
  double residual = 0.0;       // Lanczos residual bound; 0 for dense

  bool connected() const { return lambda2 > zero_tolerance; }
};

/// Second-smallest eigenvalue of the normalized Laplacian.
/// Requires n >= 2 and no isolated node. A disconnected graph yields
/// lambda2 ~ 0 (the zero eigenvalue has one copy per component).
SpectrumResult spectral_gap(const Graph& g, const SpectralOptions& opts = {});

SpectrumResult spectral_gap_dense(const Graph& g, const SpectralOptions& opts = {});
SpectrumResult spectral_gap_lanczos(const Graph& g, const SpectralOptions& opts = {});

/// lambda2 of a graph that may contain isolated nodes or several components:
/// exactly 0 unless connected, otherwise spectral_gap(g).lambda2.
double whole_graph_gap(const Graph& g, const SpectralOptions& opts = {});

}  // namespace speccrit
