#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "pgc/errors.hpp"
#include "pgc/hst.hpp"
#include "pgc/random.hpp"

using namespace pgc;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

WeightedPoints points_1d(const std::vector<double>& xs) {
  std::vector<Eigen::VectorXd> coords;
  for (double x : xs) {
    Eigen::VectorXd v(1);
    v << x;
    coords.push_back(v);
  }
  return WeightedPoints(std::move(coords));
}

WeightedPoints random_points(int n, int dim, double spread, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Eigen::VectorXd> coords;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd v(dim);
    for (int j = 0; j < dim; ++j) v(j) = spread * rng.uniform();
    coords.push_back(v);
  }
  return WeightedPoints(std::move(coords));
}

/// Children partition the parent exactly, at every node.
void check_partition_property(const HstTree& tree) {
  for (const auto& node : tree.nodes) {
    if (node.is_leaf()) continue;
    std::set<int> from_children;
    std::size_t total = 0;
    for (int child : node.children) {
      for (int idx : tree.nodes[child].point_indices) from_children.insert(idx);
      total += tree.nodes[child].point_indices.size();
    }
    const std::set<int> own(node.point_indices.begin(), node.point_indices.end());
    CHECK(total == node.point_indices.size());  // disjoint
    CHECK(from_children == own);                // covering
  }
}

void check_diameter_bound(const HstTree& tree, const WeightedPoints& pts) {
  for (const auto& node : tree.nodes) {
    const double bound = 2.0 * tree.delta / std::pow(2.0, tree.depth - node.level);
    for (std::size_t a = 0; a < node.point_indices.size(); ++a) {
      for (std::size_t b = a + 1; b < node.point_indices.size(); ++b) {
        const double dist =
            euclidean(pts.coords[node.point_indices[a]], pts.coords[node.point_indices[b]]);
        CHECK(dist <= bound + 1e-12);
      }
    }
  }
}

}  // namespace

TEST_CASE("single point yields a depth-zero leaf") {
  const WeightedPoints pts = points_1d({3.5});
  const HstTree tree = build_hst(pts, 1);
  CHECK(tree.depth == 0);
  CHECK(tree.nodes.size() == 1);
  CHECK(tree.root().is_leaf());
  CHECK(tree.root().level == 0);
}

TEST_CASE("two points at distance 4 split immediately") {
  const WeightedPoints pts = points_1d({0.0, 4.0});
  const HstTree tree = build_hst(pts, 2);
  CHECK(tree.delta == doctest::Approx(4.0));
  CHECK(tree.depth == 2);  // ceil(log2 4)
  // At radius 2 the points cannot share a cluster.
  REQUIRE(tree.root().children.size() == 2);
  for (int child : tree.root().children) {
    CHECK(tree.nodes[child].point_indices.size() == 1);
    CHECK(tree.nodes[child].is_leaf());
  }
}

TEST_CASE("two clumps separate at the first split and respect diameters") {
  Rng rng(5);
  std::vector<double> xs;
  for (int i = 0; i < 4; ++i) xs.push_back(0.1 * rng.uniform());
  for (int i = 0; i < 4; ++i) xs.push_back(10.0 + 0.1 * rng.uniform());
  const WeightedPoints pts = points_1d(xs);
  const HstTree tree = build_hst(pts, 7);

  REQUIRE(tree.root().children.size() == 2);
  for (int child : tree.nodes[0].children) {
    std::set<bool> sides;
    for (int idx : tree.nodes[child].point_indices) sides.insert(idx < 4);
    CHECK(sides.size() == 1);
  }
  check_partition_property(tree);
  check_diameter_bound(tree, pts);
}

TEST_CASE("structural suite on seeded random point sets") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const int n = 2 + static_cast<int>(Rng(seed).uniform_below(60));
    const int dim = 1 + static_cast<int>(Rng(seed + 1000).uniform_below(8));
    const WeightedPoints pts = random_points(n, dim, 20.0, seed * 13 + 1);
    HstTree tree = build_hst(pts, seed);
    check_partition_property(tree);
    check_diameter_bound(tree, pts);
    CHECK(tree.root().level == tree.depth);
    CHECK(static_cast<int>(tree.root().point_indices.size()) == n);
    for (const auto& node : tree.nodes) {
      for (int child : node.children) CHECK(tree.nodes[child].level == node.level - 1);
      CHECK(node.is_leaf() == (node.point_indices.size() == 1 || node.level == 0));
    }

    // Leaves cover all points exactly once.
    std::set<int> leaf_points;
    int leaf_total = 0;
    for (const auto& node : tree.nodes) {
      if (!node.is_leaf()) continue;
      leaf_total += static_cast<int>(node.point_indices.size());
      for (int idx : node.point_indices) leaf_points.insert(idx);
    }
    CHECK(leaf_total == n);
    CHECK(static_cast<int>(leaf_points.size()) == n);
  }
}

TEST_CASE("coincident points build a one-level chain without hanging") {
  const WeightedPoints pts = points_1d({1.0, 1.0, 1.0});
  const HstTree tree = build_hst(pts, 3);
  CHECK(tree.depth == 1);
  REQUIRE(tree.root().children.size() == 1);
  CHECK(tree.nodes[tree.root().children[0]].is_leaf());
  CHECK(tree.nodes[tree.root().children[0]].point_indices.size() == 3);
}

TEST_CASE("construction is deterministic per seed") {
  const WeightedPoints pts = random_points(40, 3, 10.0, 77);
  HstTree a = build_hst(pts, 9);
  HstTree b = build_hst(pts, 9);
  HstTree c = build_hst(pts, 10);
  REQUIRE(a.nodes.size() == b.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    CHECK(a.nodes[i].point_indices == b.nodes[i].point_indices);
    CHECK(a.nodes[i].representative == b.nodes[i].representative);
  }
  noisy_scores(a, 1.0, 4);
  noisy_scores(b, 1.0, 4);
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    CHECK(a.nodes[i].noisy_count == b.nodes[i].noisy_count);
  }
  (void)c;
}

TEST_CASE("disabled privacy leaves counts exact and scores unclamped") {
  const WeightedPoints pts = random_points(30, 2, 10.0, 1);
  HstTree tree = build_hst(pts, 2);
  noisy_scores(tree, kInf, 5);
  for (const auto& node : tree.nodes) {
    CHECK(node.noisy_count == doctest::Approx(node.true_count));
    CHECK(node.score == doctest::Approx(node.true_count * std::pow(2.0, node.level)));
  }
  CHECK(tree.root().score == doctest::Approx(30.0 * std::pow(2.0, tree.depth)));
}

TEST_CASE("weighted points contribute their weights to counts") {
  WeightedPoints pts = points_1d({0.0, 4.0});
  pts.weights = {2.5, 4.0};
  HstTree tree = build_hst(pts, 0);
  noisy_scores(tree, kInf, 0);
  CHECK(tree.root().true_count == doctest::Approx(6.5));
}

TEST_CASE("leaf-level noise has Laplace scale 2^L") {
  // A node at level 0 in a depth-5 tree draws Lap(2^5 / eps).
  const int depth = 5;
  const double epsilon = 1.0;
  Rng rng(123);
  double total_abs = 0.0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    total_abs += std::fabs(rng.laplace(std::pow(2.0, depth) / epsilon));
  }
  CHECK(total_abs / draws == doctest::Approx(32.0).epsilon(0.10));

  // Negative noisy counts (hence negative scores) are not clamped.
  WeightedPoints pts = points_1d({0.0, 40.0});
  HstTree tree = build_hst(pts, 1);
  bool saw_negative = false;
  for (std::uint64_t seed = 0; seed < 200 && !saw_negative; ++seed) {
    noisy_scores(tree, 0.05, seed);
    for (const auto& node : tree.nodes) {
      if (node.noisy_count < 0.0) saw_negative = true;
    }
  }
  CHECK(saw_negative);
}

TEST_CASE("star tree selects all children when they outscore the root") {
  const WeightedPoints pts = points_1d({0.0, 3.9, 8.1, 12.2});
  HstTree tree = build_hst(pts, 11);
  noisy_scores(tree, kInf, 0);
  // Force child scores above the root score.
  for (auto& node : tree.nodes) {
    if (node.parent == 0) node.score = 1000.0 + node.representative;
  }
  tree.nodes[0].score = 1.0;
  const int k = static_cast<int>(tree.root().children.size());
  const std::vector<int> roots = select_subtree_roots(tree, k);
  const std::set<int> chosen(roots.begin(), roots.end());
  const std::set<int> children(tree.root().children.begin(), tree.root().children.end());
  CHECK(chosen == children);
}

TEST_CASE("ancestor conflicts drop the ancestor and refill") {
  // Hand-built scores: the root and one child hold the top-2 scores, so
  // the root must be pruned and replaced by the next non-conflicting node.
  const WeightedPoints pts = points_1d({0.0, 1.0, 6.0, 7.0});
  HstTree tree = build_hst(pts, 3);
  REQUIRE(tree.nodes.size() >= 4);
  noisy_scores(tree, kInf, 0);
  tree.nodes[0].score = 100.0;  // root: ancestor of everything
  // Two subtrees under the root; give the first child the other top score.
  REQUIRE(tree.root().children.size() == 2);
  const int child_a = tree.root().children[0];
  const int child_b = tree.root().children[1];
  tree.nodes[child_a].score = 90.0;
  tree.nodes[child_b].score = 50.0;
  for (auto& node : tree.nodes) {
    if (node.parent != -1 && node.parent != 0) node.score = 1.0;
  }

  const std::vector<int> roots = select_subtree_roots(tree, 2);
  const std::set<int> chosen(roots.begin(), roots.end());
  CHECK(chosen == std::set<int>{child_a, child_b});
}

TEST_CASE("selection returns exactly k conflict-free nodes at the leaf boundary") {
  const WeightedPoints pts = points_1d({0.0, 2.5, 5.0, 7.5, 10.0});
  HstTree tree = build_hst(pts, 17);
  noisy_scores(tree, 2.0, 31);
  const int k = tree.leaf_count();
  const std::vector<int> roots = select_subtree_roots(tree, k);
  CHECK(static_cast<int>(roots.size()) == k);
  for (int a : roots) {
    for (int b : roots) {
      if (a != b) CHECK_FALSE(tree.is_ancestor(a, b));
    }
  }
  CHECK_THROWS_AS(select_subtree_roots(tree, k + 1), InsufficientCandidatesError);
}

TEST_CASE("descent follows the largest noisy count to a leaf") {
  const WeightedPoints pts = points_1d({0.0, 0.6, 10.0});
  HstTree tree = build_hst(pts, 13);
  noisy_scores(tree, kInf, 0);
  // Root is already a leaf in the singleton case.
  const HstTree single = [] {
    HstTree t = build_hst(points_1d({1.0}), 0);
    noisy_scores(t, kInf, 0);
    return t;
  }();
  const CenterSet from_leaf = descend_to_leaves(single, {0});
  CHECK(from_leaf.center_indices == std::vector<int>{0});

  // From the root of the full tree, descent lands in the heavier clump.
  const CenterSet centers = descend_to_leaves(tree, {0});
  REQUIRE(centers.center_indices.size() == 1);
  const int idx = centers.center_indices[0];
  CHECK((idx == 0 || idx == 1));  // the two-point clump outweighs the singleton
}

TEST_CASE("descent from clump roots stays inside each clump") {
  Rng rng(21);
  std::vector<double> xs;
  for (int i = 0; i < 6; ++i) xs.push_back(0.05 * rng.uniform());
  for (int i = 0; i < 6; ++i) xs.push_back(10.0 + 0.05 * rng.uniform());
  const WeightedPoints pts = points_1d(xs);
  HstTree tree = build_hst(pts, 29);
  noisy_scores(tree, kInf, 0);
  const std::vector<int> roots = select_subtree_roots(tree, 2);
  const CenterSet centers = descend_to_leaves(tree, roots);
  REQUIRE(centers.center_indices.size() == 2);
  std::set<bool> sides;
  for (int idx : centers.center_indices) sides.insert(idx < 6);
  CHECK(sides.size() == 2);  // one center per clump
}

TEST_CASE("identical inputs and seeds give identical center sets") {
  const WeightedPoints pts = random_points(50, 4, 12.0, 3);
  const auto run = [&](std::uint64_t seed) {
    HstTree tree = build_hst(pts, seed);
    noisy_scores(tree, 2.0, seed + 1);
    return descend_to_leaves(tree, select_subtree_roots(tree, 4));
  };
  const CenterSet a = run(5);
  const CenterSet b = run(5);
  CHECK(a.center_indices == b.center_indices);
  CHECK(a.source_nodes == b.source_nodes);
}
