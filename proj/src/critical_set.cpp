#include "pgc/critical_set.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pgc/errors.hpp"
#include "pgc/kmedian.hpp"
#include "pgc/random.hpp"

namespace pgc {

double ReductionParams::zeta() const {
  return 0.01 * std::pow(alpha / (10.0 * lambda_p_alpha), p / 2.0);
}

double ReductionParams::lambda() const {
  return std::sqrt(0.01 * d / (std::log(n / beta) * d_prime));
}

void ReductionParams::validate() const {
  if (d < 1) throw Error("reduction: source dimension must be positive");
  if (d_prime < 1 || d_prime > d) throw Error("reduction: need 1 <= d' <= d");
  if (n < 1) throw Error("reduction: point count must be positive");
  if (beta <= 0.0 || beta >= 1.0) throw Error("reduction: beta must be in (0,1)");
  if (alpha <= 0.0) throw Error("reduction: alpha must be positive");
  if (p != 1 && p != 2) throw Error("reduction: p must be 1 or 2");
  if (lambda_p_alpha <= 0.0) throw Error("reduction: lambda_p_alpha must be positive");
  if (std::log(n / beta) <= 0.0) throw Error("reduction: ln(n/beta) must be positive");
}

std::vector<Eigen::VectorXd> reduce_and_rescale(const std::vector<Eigen::VectorXd>& points,
                                                const ReductionParams& params,
                                                std::uint64_t rng_seed) {
  params.validate();
  if (points.empty()) throw Error("reduce_and_rescale: no points");
  for (const auto& x : points) {
    if (x.size() != params.d) {
      throw DimensionMismatchError("reduce_and_rescale: point has dimension " +
                                   std::to_string(x.size()) + ", expected " +
                                   std::to_string(params.d));
    }
  }

  // Seeded Gaussian projection, rows scaled by 1/sqrt(d') so norms are
  // preserved in expectation.
  Rng rng(rng_seed);
  Eigen::MatrixXd projection(params.d_prime, params.d);
  for (int i = 0; i < params.d_prime; ++i) {
    for (int j = 0; j < params.d; ++j) projection(i, j) = rng.normal();
  }
  projection /= std::sqrt(static_cast<double>(params.d_prime));

  const double scale = params.lambda();
  std::vector<Eigen::VectorXd> out;
  out.reserve(points.size());
  for (const auto& x : points) {
    Eigen::VectorXd reduced = projection * x;
    if (reduced.norm() <= 1.0 / scale) {
      out.push_back(scale * reduced);
    } else {
      out.push_back(Eigen::VectorXd::Zero(params.d_prime));
    }
  }
  return out;
}

CriticalSet private_coreset(const std::vector<Eigen::VectorXd>& points, double zeta,
                            double epsilon, double beta, std::uint64_t rng_seed) {
  if (points.empty()) throw Error("private_coreset: no points");
  if (zeta <= 0.0) throw Error("private_coreset: zeta must be positive");
  if (epsilon <= 0.0) throw Error("private_coreset: epsilon must be positive (or +inf)");
  if (beta <= 0.0 || beta >= 1.0) throw Error("private_coreset: beta must be in (0,1)");

  const int dim = static_cast<int>(points.front().size());
  // Occupied grid cells in lexicographic order; the map keeps iteration
  // (and therefore the Laplace draw sequence) deterministic.
  std::map<std::vector<std::int64_t>, std::vector<int>> cells;
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<std::int64_t> key(dim);
    for (int a = 0; a < dim; ++a) key[a] = static_cast<std::int64_t>(std::floor(points[i](a) / zeta));
    cells[key].push_back(static_cast<int>(i));
  }

  const bool disabled = privacy_disabled(epsilon);
  const double laplace_scale = disabled ? 0.0 : 2.0 / epsilon;
  const double threshold = disabled ? 0.0 : 2.0 * laplace_scale * std::log(1.0 / beta);

  Rng rng(rng_seed);
  CriticalSet coreset;
  coreset.epsilon_consumed = disabled ? 0.0 : epsilon;
  for (const auto& [key, members] : cells) {
    const double noisy = static_cast<double>(members.size()) + rng.laplace(laplace_scale);
    if (noisy < threshold || noisy <= 0.0) continue;
    Eigen::VectorXd center(dim);
    for (int a = 0; a < dim; ++a) center(a) = (static_cast<double>(key[a]) + 0.5) * zeta;
    coreset.points.coords.push_back(std::move(center));
    coreset.points.weights.push_back(noisy);
    coreset.source_indices.push_back(members);
  }
  if (coreset.points.empty()) {
    throw EmptyCoresetError("all noisy cell counts fell below the release threshold");
  }
  return coreset;
}

double cost_multiplier(int n, double beta, int p) {
  return std::pow(std::log(n / beta) / 0.01, p / 2.0);
}

double estimate_cost(CriticalSet& coreset, int k, int n, double beta, int p) {
  if (static_cast<int>(coreset.points.size()) < k) {
    throw InsufficientPointsError("estimate_cost: coreset has " +
                                  std::to_string(coreset.points.size()) + " points for k=" +
                                  std::to_string(k));
  }
  const std::vector<int> init = init_farthest(coreset.points, k);
  const ClusterModel model = kmedian(coreset.points, k, init, /*max_iter=*/200, p);
  coreset.cost_s_eps = cost_multiplier(n, beta, p) * model.cost;
  return coreset.cost_s_eps;
}

}  // namespace pgc
