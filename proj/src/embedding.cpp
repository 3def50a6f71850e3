#include "pgc/embedding.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "pgc/errors.hpp"
#include "pgc/random.hpp"

namespace pgc {

double NoiseSpec::variance() const {
  if (disabled()) return 0.0;
  return 24.0 * (lambda + 3.0) * m * std::log(2.0 / delta) / (epsilon * epsilon);
}

bool NoiseSpec::disabled() const { return privacy_disabled(epsilon); }

void NoiseSpec::validate() const {
  if (epsilon <= 0.0) throw Error("noise spec: epsilon must be positive (or +inf to disable)");
  if (!disabled() && (delta <= 0.0 || delta >= 1.0)) {
    throw Error("noise spec: delta must be in (0,1)");
  }
  if (lambda <= 0.0) throw Error("noise spec: lambda must be positive");
  if (m < 1) throw Error("noise spec: m must be positive");
}

Eigen::MatrixXd gaussian_noise_matrix(int n, const NoiseSpec& spec, std::uint64_t rng_seed) {
  spec.validate();
  if (spec.disabled()) return Eigen::MatrixXd::Zero(n, n);
  const double sigma = std::sqrt(spec.variance());
  Rng rng(rng_seed);
  Eigen::MatrixXd w(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w(i, j) = rng.gaussian(sigma);
  }
  return w;
}

namespace {

/// Flips each eigenvector so that a positive entry attains the maximum
/// magnitude. The rule depends only on the multiset of entries, so vertex
/// relabeling permutes the embedding rows without sign flips.
void fix_sign(Eigen::Ref<Eigen::VectorXd> f) {
  const double max_abs = f.cwiseAbs().maxCoeff();
  if (max_abs == 0.0) return;
  bool positive_attains = false;
  for (int i = 0; i < f.size(); ++i) {
    if (f(i) > 0.0 && f(i) >= max_abs * (1.0 - 1e-12)) {
      positive_attains = true;
      break;
    }
  }
  if (!positive_attains) f = -f;
}

}  // namespace

EmbeddingMap spectral_embed(const GramSolution& x1, const Graph& g, int k, const NoiseSpec& spec,
                            std::uint64_t rng_seed, EigenOrder order) {
  const int n = g.vertex_count();
  if (x1.x1.rows() != n || x1.x1.cols() != n) {
    throw DimensionMismatchError("spectral_embed: Gram matrix does not match graph size");
  }
  if (k < 1 || k > n) throw Error("spectral_embed: k must be in [1, n]");
  for (int v = 0; v < n; ++v) {
    if (g.degree(v) == 0) throw DegreeZeroError("vertex " + std::to_string(v) + " has degree 0");
  }

  Eigen::VectorXd sqrt_deg(n);
  for (int v = 0; v < n; ++v) sqrt_deg(v) = std::sqrt(static_cast<double>(g.degree(v)));

  Eigen::MatrixXd x2 = static_cast<double>(n) *
                       (sqrt_deg.asDiagonal() * x1.x1 * sqrt_deg.asDiagonal());
  x2 += gaussian_noise_matrix(n, spec, rng_seed);
  x2 = 0.5 * (x2 + x2.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(x2);
  if (eig.info() != Eigen::Success) throw EigensolveFailureError("eigendecomposition failed");

  // SelfAdjointEigenSolver sorts ascending; pick the requested end.
  std::vector<int> selected(k);
  if (order == EigenOrder::smallest) {
    std::iota(selected.begin(), selected.end(), 0);
  } else {
    std::iota(selected.begin(), selected.end(), n - k);
    std::reverse(selected.begin(), selected.end());  // largest first
  }

  EmbeddingMap map;
  map.dimension = k;
  map.eigenvalues.resize(k);
  Eigen::MatrixXd vectors(n, k);
  for (int j = 0; j < k; ++j) {
    map.eigenvalues(j) = eig.eigenvalues()(selected[j]);
    vectors.col(j) = eig.eigenvectors().col(selected[j]);
    fix_sign(vectors.col(j));
  }

  double worst_residual = 0.0;
  for (int j = 0; j < k; ++j) {
    const double residual = (x2 * vectors.col(j) - map.eigenvalues(j) * vectors.col(j)).norm();
    worst_residual = std::max(worst_residual, residual);
  }
  map.eigen_residual = worst_residual;
  const double scale = std::max(x2.norm(), 1.0);
  if (worst_residual > 1e-8 * scale) {
    throw EigensolveFailureError("eigenpair residual " + std::to_string(worst_residual) +
                                 " exceeds tolerance");
  }

  map.coords.resize(n, k);
  for (int v = 0; v < n; ++v) {
    map.coords.row(v) = vectors.row(v) / sqrt_deg(v);
  }
  if (!map.coords.allFinite()) {
    throw EigensolveFailureError("embedding produced non-finite coordinates");
  }
  return map;
}

}  // namespace pgc
