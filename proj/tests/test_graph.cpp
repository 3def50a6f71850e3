#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "pgc/errors.hpp"
#include "pgc/graph.hpp"
#include "pgc/random.hpp"
#include "test_support.hpp"

using namespace pgc;

TEST_CASE("load_graph parses a path graph") {
  const Graph g = load_graph("0\t1\n1\t2", EdgeListFormat::tsv);
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.degree(0) == 1);
  CHECK(g.degree(1) == 2);
  CHECK(g.degree(2) == 1);
}

TEST_CASE("load_graph collapses duplicate edges") {
  const Graph g = load_graph("0\t1\n0\t1", EdgeListFormat::tsv);
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("load_graph rejects self-loops") {
  CHECK_THROWS_AS(load_graph("0\t0", EdgeListFormat::tsv), SelfLoopError);
}

TEST_CASE("load_graph rejects empty input") {
  CHECK_THROWS_AS(load_graph("", EdgeListFormat::tsv), EmptyGraphError);
  CHECK_THROWS_AS(load_graph("# only a comment\n", EdgeListFormat::tsv), EmptyGraphError);
}

TEST_CASE("load_graph rejects malformed tokens") {
  CHECK_THROWS_AS(load_graph("0\tx", EdgeListFormat::tsv), MalformedLineError);
  CHECK_THROWS_AS(load_graph("0", EdgeListFormat::tsv), MalformedLineError);
  CHECK_THROWS_AS(load_graph("-1\t2", EdgeListFormat::tsv), MalformedLineError);
}

TEST_CASE("load_graph csv and comments") {
  const Graph g = load_graph("# header\n0,1\n1,2\n\n2,0\n", EdgeListFormat::csv);
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 3);
}

TEST_CASE("sparse ids are compacted in ascending order with mapping kept") {
  const Graph g = load_graph("5\t100\n100\t7", EdgeListFormat::tsv);
  CHECK(g.vertex_count() == 3);
  CHECK(g.original_id(0) == 5);
  CHECK(g.original_id(1) == 7);
  CHECK(g.original_id(2) == 100);
  CHECK(g.compact_id(100) == 2);
  CHECK(g.compact_id(6) == -1);
  CHECK(g.has_edge(0, 2));
  CHECK(g.has_edge(1, 2));
  CHECK_FALSE(g.has_edge(0, 1));
}

TEST_CASE("degree sum equals twice the edge count on random graphs") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_below(30));
    test::EdgeList edges;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.uniform() < 0.3) edges.emplace_back(u, v);
      }
    }
    if (edges.empty()) edges.emplace_back(0, 1);
    const Graph g = Graph::from_edges(edges);
    long long degree_sum = 0;
    for (int v = 0; v < g.vertex_count(); ++v) degree_sum += g.degree(v);
    CHECK(degree_sum == 2LL * g.edge_count());
  }
}

TEST_CASE("laplacian of the triangle") {
  const auto [l, d] = laplacian_and_degrees(test::triangle());
  const Eigen::MatrixXd expected =
      2.0 * Eigen::MatrixXd::Identity(3, 3) - (Eigen::MatrixXd::Ones(3, 3) - Eigen::MatrixXd::Identity(3, 3));
  CHECK((l - expected).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK((l.rowwise().sum()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(d.diagonal().sum() == doctest::Approx(6.0));
}

TEST_CASE("laplacian of a single edge") {
  const auto [l, d] = laplacian_and_degrees(test::single_edge());
  CHECK(l(0, 0) == doctest::Approx(1.0));
  CHECK(l(0, 1) == doctest::Approx(-1.0));
  CHECK(l(1, 0) == doctest::Approx(-1.0));
  CHECK(l(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("path laplacian has eigenvalue zero with the all-ones eigenvector") {
  const auto [l, d] = laplacian_and_degrees(test::path3());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(l);
  CHECK(eig.eigenvalues()(0) == doctest::Approx(0.0).epsilon(1e-12));
  Eigen::VectorXd v = eig.eigenvectors().col(0);
  v /= v(0);
  for (int i = 0; i < 3; ++i) CHECK(v(i) == doctest::Approx(1.0));
}

TEST_CASE("laplacian row sums vanish on random graphs") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + static_cast<int>(rng.uniform_below(20));
    test::EdgeList edges;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.uniform() < 0.4) edges.emplace_back(u, v);
      }
    }
    if (edges.empty()) edges.emplace_back(0, 1);
    const Graph g = Graph::from_edges(edges);
    const auto [l, d] = laplacian_and_degrees(g);
    CHECK((l * Eigen::VectorXd::Ones(g.vertex_count())).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("balance of the whole graph as one cluster is -1") {
  const Graph g = test::two_triangles();
  Partition p;
  p.k = 1;
  p.assignment.assign(6, 0);
  CHECK(balance_parameter(g, p) == doctest::Approx(-1.0));
}

TEST_CASE("balance of the 4-cycle split into adjacent pairs is 0") {
  const Graph g = test::four_cycle();
  Partition p;
  p.k = 2;
  p.assignment = {0, 0, 1, 1};
  // Brute-force over degrees: volumes 4 and 4, m = 4.
  double vol0 = 0.0, vol1 = 0.0;
  for (int v = 0; v < 4; ++v) (p.assignment[v] == 0 ? vol0 : vol1) += g.degree(v);
  const double m = g.edge_count();
  const double expected = 1.0 - (vol0 * vol0 + vol1 * vol1) / (2.0 * m * m);
  CHECK(expected == doctest::Approx(0.0));
  CHECK(balance_parameter(g, p) == doctest::Approx(expected));
}

TEST_CASE("balance of an equal-volume k-partition is 1 - 2/k") {
  // Cycle of 8, four consecutive pairs: each pair has volume 4, m = 8.
  const Graph g = test::cycle(8);
  Partition p;
  p.k = 4;
  p.assignment = {0, 0, 1, 1, 2, 2, 3, 3};
  CHECK(balance_parameter(g, p) == doctest::Approx(1.0 - 2.0 / 4.0).epsilon(1e-12));
}

TEST_CASE("balance rejects invalid partitions") {
  const Graph g = test::triangle();
  Partition p;
  p.k = 2;
  p.assignment = {0, 1};  // wrong size
  CHECK_THROWS_AS(balance_parameter(g, p), InvalidPartitionError);
  p.assignment = {0, 1, 5};
  CHECK_THROWS_AS(balance_parameter(g, p), InvalidPartitionError);
}

TEST_CASE("label loading maps original ids") {
  const Graph g = load_graph("5\t7\n7\t9", EdgeListFormat::tsv);
  const Partition p = load_labels("5\ta\n7\tb\n9\ta\n", EdgeListFormat::tsv, g);
  CHECK(p.k == 2);
  CHECK(p.assignment[0] == p.assignment[2]);
  CHECK(p.assignment[0] != p.assignment[1]);
  CHECK_THROWS_AS(load_labels("5\ta\n", EdgeListFormat::tsv, g), LabelMismatchError);
  CHECK_THROWS_AS(load_labels("5\ta\n7\tb\n9\ta\n4\tz\n", EdgeListFormat::tsv, g),
                  LabelMismatchError);
}

TEST_CASE("partition completeness") {
  Partition p;
  p.k = 3;
  p.assignment = {0, 1, 2, 1};
  CHECK(p.is_complete());
  p.assignment = {0, 1, 1, 1};
  CHECK_FALSE(p.is_complete());
}
