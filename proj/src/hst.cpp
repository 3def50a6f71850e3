#include "pgc/hst.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pgc/errors.hpp"
#include "pgc/random.hpp"

namespace pgc {

namespace {

struct Builder {
  const WeightedPoints& points;
  HstTree& tree;
  Rng rng;

  int new_node(int level, std::vector<int> indices, int representative, int parent) {
    HstNode node;
    node.level = level;
    node.point_indices = std::move(indices);
    node.representative = representative;
    node.parent = parent;
    node.true_count = 0.0;
    for (int i : node.point_indices) node.true_count += points.weights[i];
    tree.nodes.push_back(std::move(node));
    return static_cast<int>(tree.nodes.size()) - 1;
  }

  void split(int node_id) {
    // Copy out: growing tree.nodes invalidates references.
    const int level = tree.nodes[node_id].level;
    const std::vector<int> indices = tree.nodes[node_id].point_indices;
    if (level == 0 || indices.size() <= 1) return;

    const double radius = tree.delta / std::pow(2.0, tree.depth - (level - 1));
    std::vector<int> order = indices;
    rng.shuffle(order);

    std::vector<bool> claimed(points.size(), false);
    std::vector<int> child_ids;
    for (int pivot : order) {
      if (claimed[pivot]) continue;
      std::vector<int> cluster;
      cluster.push_back(pivot);
      claimed[pivot] = true;
      for (int other : indices) {
        if (claimed[other]) continue;
        if (euclidean(points.coords[pivot], points.coords[other]) <= radius) {
          cluster.push_back(other);
          claimed[other] = true;
        }
      }
      child_ids.push_back(new_node(level - 1, std::move(cluster), pivot, node_id));
    }
    tree.nodes[node_id].children = child_ids;
    for (int child : child_ids) split(child);
  }
};

}  // namespace

int HstTree::leaf_count() const {
  int count = 0;
  for (const auto& node : nodes) count += node.is_leaf() ? 1 : 0;
  return count;
}

bool HstTree::is_ancestor(int ancestor, int node) const {
  int current = nodes[node].parent;
  while (current != -1) {
    if (current == ancestor) return true;
    current = nodes[current].parent;
  }
  return false;
}

std::string HstTree::dump() const {
  std::ostringstream out;
  // Depth-first from the root, indentation by tree depth below root.
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const HstNode& node = nodes[id];
    out << std::string(static_cast<std::size_t>(2 * (depth - node.level)), ' ') << "level "
        << node.level << "  size " << node.point_indices.size() << "  count " << node.true_count
        << "  noisy " << node.noisy_count << "  score " << node.score << "\n";
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) stack.push_back(*it);
  }
  return out.str();
}

HstTree build_hst(const WeightedPoints& points, std::uint64_t rng_seed) {
  if (points.empty()) throw Error("build_hst: no points");

  HstTree tree;
  tree.rng_seed = rng_seed;
  tree.delta = max_pairwise_distance(points);
  if (points.size() == 1) {
    tree.depth = 0;
  } else if (tree.delta <= 0.0) {
    tree.depth = 1;  // coincident points: a single unsplittable cluster
  } else {
    tree.depth = std::max(1, static_cast<int>(std::ceil(std::log2(tree.delta))));
  }

  Builder builder{points, tree, Rng(rng_seed)};
  std::vector<int> all(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) all[i] = static_cast<int>(i);
  const int root_rep = all[builder.rng.uniform_below(all.size())];
  builder.new_node(tree.depth, all, root_rep, -1);
  builder.split(0);
  return tree;
}

void noisy_scores(HstTree& tree, double epsilon, std::uint64_t rng_seed) {
  if (epsilon <= 0.0) throw Error("noisy_scores: epsilon must be positive (or +inf)");
  Rng rng(rng_seed);
  const bool disabled = privacy_disabled(epsilon);
  for (auto& node : tree.nodes) {
    const double scale = disabled ? 0.0 : std::pow(2.0, tree.depth - node.level) / epsilon;
    node.noisy_count = node.true_count + rng.laplace(scale);
    node.score = node.noisy_count * std::pow(2.0, node.level);
  }
  tree.scored = true;
}

std::vector<int> select_subtree_roots(const HstTree& tree, int k) {
  if (!tree.scored) throw Error("select_subtree_roots: tree has no scores");
  if (k < 1) throw Error("select_subtree_roots: k must be positive");
  if (tree.leaf_count() < k) {
    throw InsufficientCandidatesError("tree has " + std::to_string(tree.leaf_count()) +
                                      " leaves, need k=" + std::to_string(k));
  }

  // Candidates by (score desc, creation index asc).
  std::vector<int> ranked(tree.nodes.size());
  for (std::size_t i = 0; i < ranked.size(); ++i) ranked[i] = static_cast<int>(i);
  std::stable_sort(ranked.begin(), ranked.end(), [&](int a, int b) {
    if (tree.nodes[a].score != tree.nodes[b].score) return tree.nodes[a].score > tree.nodes[b].score;
    return a < b;
  });

  std::vector<bool> retired(tree.nodes.size(), false);  // selected before or discarded
  std::vector<int> chosen;
  std::size_t cursor = 0;

  const int max_passes = 4 * k;
  for (int pass = 0; pass < max_passes && static_cast<int>(chosen.size()) < k; ++pass) {
    int needed = k - static_cast<int>(chosen.size());
    while (needed > 0 && cursor < ranked.size()) {
      const int candidate = ranked[cursor++];
      if (retired[candidate]) continue;
      retired[candidate] = true;
      chosen.push_back(candidate);
      --needed;
    }
    // Drop any chosen node that has a chosen descendant; dropped nodes stay
    // retired and are never reconsidered.
    std::vector<int> kept;
    for (int v : chosen) {
      bool has_descendant = false;
      for (int w : chosen) {
        if (w != v && tree.is_ancestor(v, w)) {
          has_descendant = true;
          break;
        }
      }
      if (!has_descendant) kept.push_back(v);
    }
    chosen = std::move(kept);
    if (cursor >= ranked.size() && static_cast<int>(chosen.size()) < k) break;
  }

  if (static_cast<int>(chosen.size()) < k) {
    throw InsufficientCandidatesError("exhausted candidates with " +
                                      std::to_string(chosen.size()) + " of k=" + std::to_string(k) +
                                      " conflict-free nodes");
  }
  return chosen;
}

CenterSet descend_to_leaves(const HstTree& tree, const std::vector<int>& roots) {
  CenterSet centers;
  for (int root : roots) {
    int current = root;
    while (!tree.nodes[current].is_leaf()) {
      const auto& children = tree.nodes[current].children;
      int best = children.front();
      for (int child : children) {
        if (tree.nodes[child].noisy_count > tree.nodes[best].noisy_count) best = child;
      }
      current = best;
    }
    centers.center_indices.push_back(tree.nodes[current].representative);
    centers.source_nodes.push_back(root);
  }
  return centers;
}

}  // namespace pgc
