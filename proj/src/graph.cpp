#include "pgc/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "pgc/errors.hpp"

namespace pgc {

namespace {

char separator_of(EdgeListFormat format) {
  return format == EdgeListFormat::tsv ? '\t' : ',';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::int64_t parse_id(std::string_view token, int line_no) {
  token = trim(token);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || value < 0) {
    throw MalformedLineError("line " + std::to_string(line_no) + ": expected nonnegative integer id, got '" +
                             std::string(token) + "'");
  }
  return value;
}

/// Splits one record into exactly two fields on the format separator. TSV
/// lines may also be separated by runs of spaces.
std::pair<std::string_view, std::string_view> split_pair(std::string_view line, char sep, int line_no) {
  std::size_t cut = line.find(sep);
  if (cut == std::string_view::npos && sep == '\t') cut = line.find(' ');
  if (cut == std::string_view::npos) {
    throw MalformedLineError("line " + std::to_string(line_no) + ": expected two fields");
  }
  return {line.substr(0, cut), line.substr(cut + 1)};
}

template <typename PerLine>
void for_each_record(std::string_view text, PerLine&& fn) {
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = text.find('\n', pos);
    std::string_view line =
        end == std::string_view::npos ? text.substr(pos) : text.substr(pos, end - pos);
    ++line_no;
    line = trim(line);
    if (!line.empty() && line.front() != '#') fn(line, line_no);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
}

}  // namespace

Graph Graph::from_edges(const std::vector<std::pair<std::int64_t, std::int64_t>>& raw_edges) {
  if (raw_edges.empty()) throw EmptyGraphError("graph has no edges");

  std::set<std::int64_t> id_set;
  for (const auto& [u, v] : raw_edges) {
    if (u == v) throw SelfLoopError("self-loop on vertex " + std::to_string(u));
    id_set.insert(u);
    id_set.insert(v);
  }

  Graph g;
  g.original_ids_.assign(id_set.begin(), id_set.end());
  g.n_ = static_cast<int>(g.original_ids_.size());

  std::map<std::int64_t, int> to_compact;
  for (int i = 0; i < g.n_; ++i) to_compact[g.original_ids_[i]] = i;

  std::set<std::pair<int, int>> edge_set;
  for (const auto& [u, v] : raw_edges) {
    int a = to_compact[u];
    int b = to_compact[v];
    if (a > b) std::swap(a, b);
    edge_set.insert({a, b});
  }

  g.edges_.assign(edge_set.begin(), edge_set.end());
  g.m_ = static_cast<int>(g.edges_.size());
  g.adjacency_.resize(g.n_);
  for (const auto& [a, b] : g.edges_) {
    g.adjacency_[a].push_back(b);
    g.adjacency_[b].push_back(a);
  }
  for (auto& neighbors : g.adjacency_) std::sort(neighbors.begin(), neighbors.end());
  return g;
}

int Graph::compact_id(std::int64_t original) const {
  const auto it = std::lower_bound(original_ids_.begin(), original_ids_.end(), original);
  if (it == original_ids_.end() || *it != original) return -1;
  return static_cast<int>(it - original_ids_.begin());
}

bool Graph::has_edge(int u, int v) const {
  const auto& adj = adjacency_[u];
  return std::binary_search(adj.begin(), adj.end(), v);
}

double Graph::volume(const std::vector<int>& vertices) const {
  double vol = 0.0;
  for (int v : vertices) vol += degree(v);
  return vol;
}

void Partition::validate(int vertex_count) const {
  if (static_cast<int>(assignment.size()) != vertex_count) {
    throw InvalidPartitionError("partition covers " + std::to_string(assignment.size()) +
                                " vertices, graph has " + std::to_string(vertex_count));
  }
  for (int c : assignment) {
    if (c < 0 || c >= k) {
      throw InvalidPartitionError("cluster id " + std::to_string(c) + " outside [0, " +
                                  std::to_string(k) + ")");
    }
  }
}

bool Partition::is_complete() const {
  std::vector<bool> used(k, false);
  for (int c : assignment) {
    if (c < 0 || c >= k) return false;
    used[c] = true;
  }
  return std::all_of(used.begin(), used.end(), [](bool u) { return u; });
}

Graph load_graph(std::string_view edge_list_text, EdgeListFormat format) {
  const char sep = separator_of(format);
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  for_each_record(edge_list_text, [&](std::string_view line, int line_no) {
    const auto [left, right] = split_pair(line, sep, line_no);
    edges.emplace_back(parse_id(left, line_no), parse_id(right, line_no));
  });
  return Graph::from_edges(edges);
}

Graph load_graph_file(const std::string& path, EdgeListFormat format) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_graph(buffer.str(), format);
}

std::vector<std::pair<std::int64_t, std::string>> load_label_pairs(std::string_view label_text,
                                                                   EdgeListFormat format) {
  const char sep = separator_of(format);
  std::vector<std::pair<std::int64_t, std::string>> pairs;
  for_each_record(label_text, [&](std::string_view line, int line_no) {
    const auto [left, right] = split_pair(line, sep, line_no);
    const std::int64_t original = parse_id(left, line_no);
    const std::string label{trim(right)};
    if (label.empty()) throw MalformedLineError("line " + std::to_string(line_no) + ": empty label");
    pairs.emplace_back(original, label);
  });
  return pairs;
}

Partition load_labels(std::string_view label_text, EdgeListFormat format, const Graph& g) {
  std::vector<int> assignment(g.vertex_count(), -1);
  std::map<std::string, int, std::less<>> label_ids;
  for (const auto& [original, label] : load_label_pairs(label_text, format)) {
    const int v = g.compact_id(original);
    if (v < 0) {
      throw LabelMismatchError("vertex " + std::to_string(original) + " not in graph");
    }
    const auto [it, _] = label_ids.try_emplace(label, static_cast<int>(label_ids.size()));
    if (assignment[v] != -1) {
      throw LabelMismatchError("vertex " + std::to_string(original) + " labeled twice");
    }
    assignment[v] = it->second;
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (assignment[v] == -1) {
      throw LabelMismatchError("vertex " + std::to_string(g.original_id(v)) + " has no label");
    }
  }
  Partition p;
  p.assignment = std::move(assignment);
  p.k = static_cast<int>(label_ids.size());
  return p;
}

Partition load_labels_file(const std::string& path, EdgeListFormat format, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open label file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_labels(buffer.str(), format, g);
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> laplacian_and_degrees(const Graph& g) {
  const int n = g.vertex_count();
  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd degrees = Eigen::MatrixXd::Zero(n, n);
  for (int v = 0; v < n; ++v) {
    laplacian(v, v) = g.degree(v);
    degrees(v, v) = g.degree(v);
  }
  for (const auto& [u, v] : g.edges()) {
    laplacian(u, v) = -1.0;
    laplacian(v, u) = -1.0;
  }
  return {laplacian, degrees};
}

double balance_parameter(const Graph& g, const Partition& p) {
  p.validate(g.vertex_count());
  std::vector<double> volumes(p.k, 0.0);
  for (int v = 0; v < g.vertex_count(); ++v) volumes[p.assignment[v]] += g.degree(v);
  double sum_sq = 0.0;
  for (double vol : volumes) sum_sq += vol * vol;
  const double m = g.edge_count();
  return 1.0 - sum_sq / (2.0 * m * m);
}

}  // namespace pgc
