#include "pgc/kmedian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "pgc/critical_set.hpp"
#include "pgc/errors.hpp"
#include "pgc/random.hpp"

namespace pgc {

namespace {

struct AssignmentResult {
  std::vector<int> assignment;
  double cost = 0.0;
};

AssignmentResult assign_nearest(const WeightedPoints& points, const std::vector<int>& centers,
                                int p) {
  AssignmentResult result;
  result.assignment.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    int best = 0;
    double best_dist = distance_pow(points.coords[i], points.coords[centers[0]], p);
    for (std::size_t c = 1; c < centers.size(); ++c) {
      const double dist = distance_pow(points.coords[i], points.coords[centers[c]], p);
      if (dist < best_dist) {
        best_dist = dist;
        best = static_cast<int>(c);
      }
    }
    result.assignment[i] = best;
    result.cost += points.weights[i] * best_dist;
  }
  return result;
}

/// Weighted medoid of `members`: the member minimizing sum of
/// weight * distance^p, ties to the lowest index.
int weighted_medoid(const WeightedPoints& points, const std::vector<int>& members, int p) {
  int best = members.front();
  double best_cost = std::numeric_limits<double>::infinity();
  for (int candidate : members) {
    double cost = 0.0;
    for (int other : members) {
      cost += points.weights[other] * distance_pow(points.coords[other], points.coords[candidate], p);
      if (cost >= best_cost) break;
    }
    if (cost < best_cost) {
      best_cost = cost;
      best = candidate;
    }
  }
  return best;
}

void validate_inputs(const WeightedPoints& points, int k, const std::vector<int>& initial_centers) {
  if (static_cast<int>(points.size()) < k) {
    throw InsufficientPointsError("k-median: " + std::to_string(points.size()) + " points for k=" +
                                  std::to_string(k));
  }
  if (static_cast<int>(initial_centers.size()) != k) {
    throw Error("k-median: expected " + std::to_string(k) + " initial centers");
  }
  std::set<int> unique(initial_centers.begin(), initial_centers.end());
  if (static_cast<int>(unique.size()) != k) throw Error("k-median: initial centers not distinct");
  for (int c : initial_centers) {
    if (c < 0 || c >= static_cast<int>(points.size())) {
      throw Error("k-median: initial center index out of range");
    }
  }
}

/// Core alternation. Centers at positions < pinned_count are immutable.
ClusterModel alternate(const WeightedPoints& points, int k, std::vector<int> centers, int max_iter,
                       int p, int pinned_count) {
  ClusterModel model;
  AssignmentResult assigned = assign_nearest(points, centers, p);
  model.cost_history.push_back(assigned.cost);

  for (int iter = 0; iter < max_iter; ++iter) {
    // Medoid update per cluster.
    std::vector<std::vector<int>> members(k);
    for (std::size_t i = 0; i < points.size(); ++i) members[assigned.assignment[i]].push_back(static_cast<int>(i));

    std::vector<int> updated = centers;
    for (int c = pinned_count; c < k; ++c) {
      if (!members[c].empty()) updated[c] = weighted_medoid(points, members[c], p);
    }
    // Re-seed empty clusters on the worst-served non-center point.
    for (int c = pinned_count; c < k; ++c) {
      if (!members[c].empty()) continue;
      std::set<int> taken(updated.begin(), updated.end());
      int worst = -1;
      double worst_cost = -1.0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (taken.count(static_cast<int>(i))) continue;
        const double cost =
            points.weights[i] *
            distance_pow(points.coords[i], points.coords[centers[assigned.assignment[i]]], p);
        if (cost > worst_cost) {
          worst_cost = cost;
          worst = static_cast<int>(i);
        }
      }
      if (worst >= 0) updated[c] = worst;
    }

    AssignmentResult next = assign_nearest(points, updated, p);
    model.iterations = iter + 1;
    if (next.assignment == assigned.assignment && updated == centers) {
      break;
    }
    centers = std::move(updated);
    assigned = std::move(next);
    model.cost_history.push_back(assigned.cost);
  }

  model.centers = std::move(centers);
  model.assignment = std::move(assigned.assignment);
  model.cost = assigned.cost;
  return model;
}

}  // namespace

double assignment_cost(const WeightedPoints& points, const std::vector<int>& centers, int p) {
  return assign_nearest(points, centers, p).cost;
}

ClusterModel kmedian(const WeightedPoints& points, int k, const std::vector<int>& initial_centers,
                     int max_iter, int p) {
  validate_inputs(points, k, initial_centers);
  return alternate(points, k, initial_centers, max_iter, p, /*pinned_count=*/0);
}

double fixed_center_cost(const WeightedPoints& points, int k, int pinned_index,
                         const std::vector<int>& initial_centers, int max_iter, int p) {
  if (static_cast<int>(points.size()) < k) {
    throw InsufficientPointsError("fixed-center: fewer points than k");
  }
  if (pinned_index < 0 || pinned_index >= static_cast<int>(points.size())) {
    throw Error("fixed-center: pinned index out of range");
  }

  // Pin first, then the initial centers minus the pin itself; if the pin
  // was not an initial center, the initial center nearest to it is dropped.
  std::vector<int> centers;
  centers.push_back(pinned_index);
  std::vector<int> rest;
  for (int c : initial_centers) {
    if (c != pinned_index) rest.push_back(c);
  }
  if (static_cast<int>(rest.size()) == static_cast<int>(initial_centers.size()) && !rest.empty()) {
    int drop = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rest.size(); ++i) {
      const double dist = euclidean(points.coords[rest[i]], points.coords[pinned_index]);
      if (dist < best) {
        best = dist;
        drop = static_cast<int>(i);
      }
    }
    rest.erase(rest.begin() + drop);
  }
  for (int c : rest) {
    if (static_cast<int>(centers.size()) < k) centers.push_back(c);
  }
  // Top up, if the initial set was short of distinct non-pin members.
  for (int i = 0; static_cast<int>(centers.size()) < k && i < static_cast<int>(points.size()); ++i) {
    if (std::find(centers.begin(), centers.end(), i) == centers.end()) centers.push_back(i);
  }

  const ClusterModel model = alternate(points, k, std::move(centers), max_iter, p, /*pinned_count=*/1);
  return model.cost;
}

double explanation_value(double baseline_cost, double fixed_cost, int n, double beta, int p) {
  return std::fabs(baseline_cost - cost_multiplier(n, beta, p) * fixed_cost);
}

std::vector<int> init_farthest(const WeightedPoints& points, int k) {
  if (static_cast<int>(points.size()) < k) {
    throw InsufficientPointsError("init_farthest: fewer points than k");
  }
  std::vector<int> all(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) all[i] = static_cast<int>(i);

  std::vector<int> centers;
  centers.push_back(weighted_medoid(points, all, 1));
  while (static_cast<int>(centers.size()) < k) {
    int farthest = -1;
    double farthest_dist = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (std::find(centers.begin(), centers.end(), static_cast<int>(i)) != centers.end()) continue;
      double nearest = std::numeric_limits<double>::infinity();
      for (int c : centers) nearest = std::min(nearest, euclidean(points.coords[i], points.coords[c]));
      if (nearest > farthest_dist) {
        farthest_dist = nearest;
        farthest = static_cast<int>(i);
      }
    }
    centers.push_back(farthest);
  }
  return centers;
}

std::vector<int> init_uniform(const WeightedPoints& points, int k, std::uint64_t rng_seed) {
  if (static_cast<int>(points.size()) < k) {
    throw InsufficientPointsError("init_uniform: fewer points than k");
  }
  std::vector<int> all(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) all[i] = static_cast<int>(i);
  Rng rng(rng_seed);
  rng.shuffle(all);
  all.resize(k);
  return all;
}

}  // namespace pgc
