#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "pgc/points.hpp"

namespace pgc {

/// Dimension reduction and rescaling constants. zeta and Lambda are derived
/// from the primary fields and recomputable at any time.
struct ReductionParams {
  int d = 0;        // source dimension
  int d_prime = 0;  // target dimension, 1 <= d_prime <= d
  int n = 0;        // number of points (enters Lambda through ln(n/beta))
  double beta = 0.1;
  double alpha = 0.5;
  int p = 1;  // distance exponent, 1 or 2
  // Distortion constant of the cited coreset construction; not defined in
  // this toolkit's sources, so it is configurable (default 1).
  double lambda_p_alpha = 1.0;

  double zeta() const;    // 0.01 (alpha / (10 lambda_p_alpha))^{p/2}
  double lambda() const;  // sqrt(0.01 d / (ln(n/beta) d'))

  void validate() const;
};

/// Weighted point set standing in for the full data in clustering cost.
struct CriticalSet {
  WeightedPoints points;                        // grid cell centers with noisy weights
  std::vector<std::vector<int>> source_indices; // per point: contributing input indices
  double cost_s_eps = 0.0;
  double epsilon_consumed = 0.0;
};

/// Projects each point to d' dimensions with a seeded Gaussian map scaled
/// by 1/sqrt(d'), then rescales by Lambda; points with ||x~|| > 1/Lambda
/// become the zero vector. Output norms are <= 1.
std::vector<Eigen::VectorXd> reduce_and_rescale(const std::vector<Eigen::VectorXd>& points,
                                                const ReductionParams& params,
                                                std::uint64_t rng_seed);

/// Noisy-grid coreset: cells of width zeta, Laplace(2/epsilon) counts,
/// cells kept when the noisy count reaches 2 (2/epsilon) ln(1/beta).
/// Throws EmptyCoresetError when everything fell below threshold.
/// With privacy disabled the exact occupied cells appear, total weight n.
CriticalSet private_coreset(const std::vector<Eigen::VectorXd>& points, double zeta,
                            double epsilon, double beta, std::uint64_t rng_seed);

/// cost(S_eps) = (ln(n/beta)/0.01)^{p/2} * [non-private k-median cost on
/// the weighted coreset]. Stores the value in coreset.cost_s_eps and
/// returns it.
double estimate_cost(CriticalSet& coreset, int k, int n, double beta, int p);

/// The scaling multiplier (ln(n/beta)/0.01)^{p/2} shared by estimate_cost
/// and the explanation contrast.
double cost_multiplier(int n, double beta, int p);

}  // namespace pgc
