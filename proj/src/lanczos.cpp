#include "lanczos.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "speccrit/error.hpp"
#include "speccrit/rng.hpp"

namespace speccrit::detail {

namespace {

// Solves (T - sigma I) x = b in place for symmetric tridiagonal T given by
// diag/off, using Gaussian elimination with partial pivoting (the dgttrf
// scheme). Tiny pivots are nudged, which is what inverse iteration wants.
void shifted_tridiagonal_solve(const std::vector<double>& diag, const std::vector<double>& off,
                               double sigma, std::vector<double>& x) {
  const std::size_t m = diag.size();
  std::vector<double> d(m), dl(m > 1 ? m - 1 : 0), du(m > 1 ? m - 1 : 0), du2(m > 2 ? m - 2 : 0, 0.0);
  for (std::size_t i = 0; i < m; ++i) d[i] = diag[i] - sigma;
  for (std::size_t i = 0; i + 1 < m; ++i) dl[i] = du[i] = off[i];

  double scale = 0.0;
  for (double v : d) scale = std::max(scale, std::abs(v));
  for (double v : dl) scale = std::max(scale, std::abs(v));
  const double tiny = std::max(scale, 1.0) * 1e-15;

  std::vector<bool> swapped(m > 1 ? m - 1 : 0, false);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (std::abs(d[i]) < tiny) d[i] = tiny;
      const double f = dl[i] / d[i];
      dl[i] = f;
      d[i + 1] -= f * du[i];
      if (i + 2 < m) du2[i] = 0.0;
    } else {
      swapped[i] = true;
      const double f = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = f;
      const double tmp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = tmp - f * d[i + 1];
      if (i + 2 < m) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du[i + 1];
      }
    }
  }
  if (std::abs(d[m - 1]) < tiny) d[m - 1] = tiny;

  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (swapped[i]) std::swap(x[i], x[i + 1]);
    x[i + 1] -= dl[i] * x[i];
  }
  x[m - 1] /= d[m - 1];
  if (m > 1) x[m - 2] = (x[m - 2] - du[m - 2] * x[m - 1]) / d[m - 2];
  for (std::size_t i = m - 2; i-- > 0;) {
    x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
  }
}

struct TopPair {
  double theta;
  std::vector<double> vec;
};

TopPair top_eigenpair(const std::vector<double>& alpha, const std::vector<double>& beta) {
  const std::size_t m = alpha.size();
  if (m == 1) return {alpha[0], {1.0}};
  Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), static_cast<Eigen::Index>(m));
  Eigen::VectorXd sub = Eigen::Map<const Eigen::VectorXd>(beta.data(), static_cast<Eigen::Index>(m - 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  const double theta = es.eigenvalues()(static_cast<Eigen::Index>(m - 1));

  std::vector<double> x(m, 1.0);
  for (int pass = 0; pass < 3; ++pass) {
    shifted_tridiagonal_solve(alpha, beta, theta, x);
    double norm = 0.0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : x) v /= norm;
  }
  return {theta, std::move(x)};
}

}  // namespace

LanczosResult lanczos_largest(std::size_t n, const MatVec& apply, std::span<const double> deflate,
                              const LanczosParams& params) {
  using Eigen::Index;
  using Eigen::VectorXd;
  if (n < 2) throw InvalidArgument("lanczos needs n >= 2");

  const std::size_t dim = n - 1;  // deflated subspace
  const std::size_t basis = std::max<std::size_t>(2, std::min(params.max_basis, dim));
  Eigen::Map<const VectorXd> u(deflate.data(), static_cast<Index>(n));

  Eigen::MatrixXd Q(static_cast<Index>(n), static_cast<Index>(basis));
  VectorXd start(n);
  SplitMix64 rng(params.start_seed);
  for (Index i = 0; i < static_cast<Index>(n); ++i) start(i) = rng.uniform() - 0.5;

  VectorXd w(n), coef;
  std::vector<double> alpha, beta;
  LanczosResult result;
  std::size_t total = 0;

  for (std::size_t restart = 0; restart <= params.max_restarts; ++restart) {
    start -= u * u.dot(start);
    const double norm = start.norm();
    if (norm == 0.0) throw NotConverged("lanczos start vector vanished after deflation");
    Q.col(0) = start / norm;
    alpha.clear();
    beta.clear();

    for (std::size_t j = 0; j < basis; ++j) {
      const Index jj = static_cast<Index>(j);
      apply(std::span<const double>(Q.col(jj).data(), n), std::span<double>(w.data(), n));
      ++total;
      w -= u * u.dot(w);
      const double a = Q.col(jj).dot(w);
      alpha.push_back(a);
      for (int pass = 0; pass < 2; ++pass) {
        coef.noalias() = Q.leftCols(jj + 1).transpose() * w;
        w.noalias() -= Q.leftCols(jj + 1) * coef;
      }
      w -= u * u.dot(w);
      const double b = w.norm();

      const bool exhausted = (j + 1 == dim);
      const bool last = (j + 1 == basis);
      const bool check = exhausted || last || j < 8 || j % 4 == 3 || b < 1e-10;
      if (!check) {
        beta.push_back(b);
        Q.col(jj + 1) = w / b;
        continue;
      }
      auto top = top_eigenpair(alpha, beta);
      const double res = b * std::abs(top.vec.back());
      if (res <= params.residual_tolerance || exhausted) {
        result.theta = top.theta;
        result.residual = exhausted ? 0.0 : res;
        result.iterations = total;
        return result;
      }
      if (last) {
        Eigen::Map<const VectorXd> s(top.vec.data(), static_cast<Index>(top.vec.size()));
        start.noalias() = Q.leftCols(jj + 1) * s;
        break;
      }
      beta.push_back(b);
      Q.col(jj + 1) = w / b;
    }
  }
  throw NotConverged("lanczos did not reach residual " + std::to_string(params.residual_tolerance) +
                     " within " + std::to_string(total) + " steps (n=" + std::to_string(n) + ")");
}

}  // namespace speccrit::detail
