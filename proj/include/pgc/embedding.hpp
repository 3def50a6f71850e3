#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "pgc/graph.hpp"
#include "pgc/sdp.hpp"

namespace pgc {

/// Gaussian mechanism calibration for the embedding perturbation.
/// variance = 24 (lambda + 3) m ln(2/delta) / epsilon^2; zero when privacy
/// is disabled (epsilon = +inf).
struct NoiseSpec {
  double epsilon = 1.0;
  double delta = 1e-5;
  double lambda = 1.0;
  int m = 1;

  double variance() const;
  bool disabled() const;

  void validate() const;
};

enum class EigenOrder { smallest, largest };

/// Per-vertex spectral coordinates F(u) in R^k.
struct EmbeddingMap {
  int dimension = 0;
  Eigen::MatrixXd coords;             // n x k, row u = F(u)
  Eigen::VectorXd eigenvalues;        // the k selected eigenvalues, sorted
  double eigen_residual = 0.0;        // max_j ||X2 f_j - mu_j f_j||_2

  Eigen::VectorXd vertex_coords(int v) const { return coords.row(v).transpose(); }
};

/// n x n matrix of i.i.d. N(0, spec.variance()) entries; the zero matrix
/// when privacy is disabled. Deterministic per seed.
Eigen::MatrixXd gaussian_noise_matrix(int n, const NoiseSpec& spec, std::uint64_t rng_seed);

/// Noisy spectral embedding: X2 = n D^{1/2} X1 D^{1/2} + W, symmetrized by
/// averaging; k eigenvectors taken from the chosen end of the spectrum;
/// F(u) = d(u)^{-1/2} (f_1(u), ..., f_k(u)).
///
/// Eigenvector signs follow a permutation-invariant convention (the
/// largest-magnitude entry is made positive) so relabeling vertices
/// permutes rows of the embedding.
EmbeddingMap spectral_embed(const GramSolution& x1, const Graph& g, int k, const NoiseSpec& spec,
                            std::uint64_t rng_seed, EigenOrder order = EigenOrder::smallest);

}  // namespace pgc
