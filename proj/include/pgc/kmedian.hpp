#pragma once

#include <cstdint>
#include <vector>

#include "pgc/points.hpp"

namespace pgc {

/// Converged discrete k-median model. Centers are members of the clustered
/// point set (medoids), assignments map each point to its nearest center.
struct ClusterModel {
  std::vector<int> centers;      // indices into the point set
  std::vector<int> assignment;   // point index -> position in `centers`
  double cost = 0.0;             // sum of weight * distance^p
  int iterations = 0;
  std::vector<double> cost_history;  // per-iteration cost, non-increasing
};

/// Alternating medoid k-median: assign points to the nearest center
/// (ties to the lowest center position), replace each center with its
/// cluster's weighted medoid. A center that loses all points is re-seeded
/// on the non-center point with the largest current assignment cost.
ClusterModel kmedian(const WeightedPoints& points, int k, const std::vector<int>& initial_centers,
                     int max_iter, int p);

/// k-median with one center pinned: `pinned_index` stays a center and is
/// never updated or swapped; the other k-1 centers start from the unpinned
/// initial centers (the one nearest the pin is dropped if none coincide)
/// and update normally. Returns the converged cost.
double fixed_center_cost(const WeightedPoints& points, int k, int pinned_index,
                         const std::vector<int>& initial_centers, int max_iter, int p);

/// |baseline_cost - (ln(n/beta)/0.01)^{p/2} * fixed_cost|.
double explanation_value(double baseline_cost, double fixed_cost, int n, double beta, int p);

/// Deterministic non-private initialization: the weighted 1-medoid first,
/// then farthest-point traversal (max-min distance, ties to lowest index).
std::vector<int> init_farthest(const WeightedPoints& points, int k);

/// k distinct indices chosen uniformly per seed.
std::vector<int> init_uniform(const WeightedPoints& points, int k, std::uint64_t rng_seed);

/// Cost of assigning every point to its nearest center in `centers`.
double assignment_cost(const WeightedPoints& points, const std::vector<int>& centers, int p);

}  // namespace pgc
