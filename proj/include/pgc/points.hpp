#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <vector>

#include "pgc/errors.hpp"

namespace pgc {

/// A finite weighted point set in R^d. Weights default to 1.
struct WeightedPoints {
  std::vector<Eigen::VectorXd> coords;
  std::vector<double> weights;

  WeightedPoints() = default;
  explicit WeightedPoints(std::vector<Eigen::VectorXd> pts)
      : coords(std::move(pts)), weights(coords.size(), 1.0) {}
  WeightedPoints(std::vector<Eigen::VectorXd> pts, std::vector<double> w)
      : coords(std::move(pts)), weights(std::move(w)) {
    if (coords.size() != weights.size()) {
      throw DimensionMismatchError("point/weight count mismatch");
    }
  }

  std::size_t size() const { return coords.size(); }
  bool empty() const { return coords.empty(); }
  int dimension() const { return coords.empty() ? 0 : static_cast<int>(coords.front().size()); }

  double total_weight() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
};

inline double euclidean(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).norm();
}

/// d(a,b)^p for p in {1, 2}; the k-median cost kernel.
inline double distance_pow(const Eigen::VectorXd& a, const Eigen::VectorXd& b, int p) {
  const double d = euclidean(a, b);
  return p == 1 ? d : d * d;
}

/// Largest pairwise distance (0 for fewer than two points).
inline double max_pairwise_distance(const WeightedPoints& pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      best = std::max(best, euclidean(pts.coords[i], pts.coords[j]));
    }
  }
  return best;
}

}  // namespace pgc
