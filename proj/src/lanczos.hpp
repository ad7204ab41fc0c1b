#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

namespace speccrit::detail {

struct LanczosParams {
  double residual_tolerance = 1e-9;
  std::size_t max_basis = 400;
  std::size_t max_restarts = 20;
  std::uint64_t start_seed = 0x6c616e637a6f73ULL;
};

struct LanczosResult {
  double theta = 0.0;  // largest eigenvalue on the deflated subspace
  double residual = 0.0;
  std::size_t iterations = 0;
};

using MatVec = std::function<void(std::span<const double> x, std::span<double> y)>;

// Largest eigenvalue of the symmetric operator `apply` restricted to the
// orthogonal complement of the unit vector `deflate` (which must be an
// eigenvector of `apply`). Lanczos with full (twice-applied classical
// Gram-Schmidt) reorthogonalization and explicit restarts from the current
// Ritz vector. Throws NotConverged when the restart budget runs out.
LanczosResult lanczos_largest(std::size_t n, const MatVec& apply, std::span<const double> deflate,
                              const LanczosParams& params);

}  // namespace speccrit::detail
