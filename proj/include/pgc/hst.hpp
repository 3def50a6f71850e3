#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pgc/points.hpp"

namespace pgc {

/// One node of the 2-HST. Children partition the parent's points; every
/// point lies within Delta / 2^{L - level} of the representative pivot.
struct HstNode {
  int level = 0;
  std::vector<int> point_indices;
  int representative = -1;  // index of the pivot point that seeded the node
  std::vector<int> children;  // node ids, in creation order
  int parent = -1;
  double true_count = 0.0;   // weighted point count of the subtree
  double noisy_count = 0.0;  // true_count + Lap(2^{L-level}/eps), unclamped
  double score = 0.0;        // noisy_count * 2^{level}

  bool is_leaf() const { return children.empty(); }
};

/// Rooted 2-HST over a weighted point set. Nodes live in a flat array;
/// node 0 is the root at level `depth`. Immutable once scored.
struct HstTree {
  std::vector<HstNode> nodes;
  int depth = 0;      // L
  double delta = 0.0; // initial diameter
  std::uint64_t rng_seed = 0;
  bool scored = false;

  const HstNode& root() const { return nodes.front(); }
  int leaf_count() const;
  bool is_ancestor(int ancestor, int node) const;

  /// Indented per-node text dump (level, size, noisy count, score).
  std::string dump() const;
};

/// Selected subtree roots and the leaf points reached from them.
struct CenterSet {
  std::vector<int> center_indices;  // indices into the clustered point set
  std::vector<int> source_nodes;    // selected subtree root node ids
};

/// Recursive pivot decomposition: pivots iterate in seeded random order,
/// each claiming unclaimed points within half the current radius; depth is
/// L = max(1, ceil(log2 Delta)) (0 for a single point).
HstTree build_hst(const WeightedPoints& points, std::uint64_t rng_seed);

/// Adds Lap(2^{L-level}/epsilon) to every subtree count and computes
/// score = noisy_count * 2^{level}. One draw per node in creation order.
void noisy_scores(HstTree& tree, double epsilon, std::uint64_t rng_seed);

/// Picks k highest-score nodes with no ancestor-descendant pairs, dropping
/// conflicting ancestors and refilling; discarded nodes never re-enter.
/// Throws InsufficientCandidates after 4k refill passes.
std::vector<int> select_subtree_roots(const HstTree& tree, int k);

/// From each selected root, walks to the child with the largest noisy
/// count until a leaf; the leaf representatives become centers.
CenterSet descend_to_leaves(const HstTree& tree, const std::vector<int>& roots);

}  // namespace pgc
