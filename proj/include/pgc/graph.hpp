#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pgc {

enum class EdgeListFormat { tsv, csv };

/// Undirected simple graph with dense vertex ids [0, n).
///
/// Built from an edge list; duplicate edges collapse, self-loops are
/// rejected. Every vertex is an edge endpoint, so degrees are >= 1 and
/// sum(degree) == 2m holds exactly. Immutable after construction and safe
/// to share across threads.
class Graph {
 public:
  /// Builds from unordered endpoint pairs carrying original (possibly
  /// sparse) ids. Ids are compacted to [0, n) in ascending order; the
  /// mapping back is kept in original_ids().
  static Graph from_edges(const std::vector<std::pair<std::int64_t, std::int64_t>>& edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return m_; }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
  const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }

  /// Sorted unique edges as (u, v) with u < v, in compacted ids.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  /// Original external id of compacted vertex v (identity for dense inputs).
  std::int64_t original_id(int v) const { return original_ids_[v]; }
  const std::vector<std::int64_t>& original_ids() const { return original_ids_; }

  /// Compacted id for an original id, or -1 if the id is not a vertex.
  int compact_id(std::int64_t original) const;

  bool has_edge(int u, int v) const;

  /// vol(S) = sum of degrees over S.
  double volume(const std::vector<int>& vertices) const;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::int64_t> original_ids_;
};

/// Assignment of every vertex to a cluster id in [0, k).
struct Partition {
  std::vector<int> assignment;  // indexed by vertex
  int k = 0;

  /// Throws InvalidPartitionError unless every vertex has an id in [0, k).
  void validate(int vertex_count) const;

  /// A complete partition additionally uses every cluster id at least once.
  bool is_complete() const;
};

/// Parses "u<sep>v" lines; '#'-prefixed comments and blank lines skipped.
/// Errors: MalformedLine, SelfLoop, EmptyGraph.
Graph load_graph(std::string_view edge_list_text, EdgeListFormat format);

Graph load_graph_file(const std::string& path, EdgeListFormat format);

/// Parses "vertex<sep>label" lines into (original id, label token) pairs.
std::vector<std::pair<std::int64_t, std::string>> load_label_pairs(std::string_view label_text,
                                                                   EdgeListFormat format);

/// Parses "vertex<sep>label" lines against a loaded graph. Labels may be
/// arbitrary tokens; distinct labels are numbered in first-seen order.
/// Every graph vertex must receive exactly one label (LabelMismatch).
Partition load_labels(std::string_view label_text, EdgeListFormat format, const Graph& g);

Partition load_labels_file(const std::string& path, EdgeListFormat format, const Graph& g);

/// L_G = D_G - A_G and the degree diagonal, as dense matrices.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> laplacian_and_degrees(const Graph& g);

/// Volume-balance b = 1 - sum_i vol(C_i)^2 / (2 m^2). Raw value, no
/// clamping; callers validate b in (0,1) before use.
double balance_parameter(const Graph& g, const Partition& p);

}  // namespace pgc
