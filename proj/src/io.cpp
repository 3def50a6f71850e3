#include "pgc/io.hpp"

#include <fstream>
#include <sstream>

#include "pgc/errors.hpp"

namespace pgc {

namespace {

void append_csv_coords(std::ostringstream& out, const Eigen::VectorXd& v) {
  for (int i = 0; i < v.size(); ++i) {
    if (i > 0) out << ',';
    out << v(i);
  }
}

}  // namespace

std::string embedding_to_text(const EmbeddingMap& map, const Graph& g) {
  std::ostringstream out;
  out.precision(17);
  for (int v = 0; v < g.vertex_count(); ++v) {
    out << g.original_id(v) << '\t';
    append_csv_coords(out, map.vertex_coords(v));
    out << '\n';
  }
  return out.str();
}

std::string coreset_to_text(const CriticalSet& coreset) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < coreset.points.size(); ++i) {
    out << coreset.points.weights[i] << '\t';
    append_csv_coords(out, coreset.points.coords[i]);
    out << '\n';
  }
  return out.str();
}

std::string matrix_to_text(const Eigen::MatrixXd& m) {
  std::ostringstream out;
  out.precision(17);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ' ';
      out << m(r, c);
    }
    out << '\n';
  }
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << content;
  if (!out) throw Error("write failed: " + path);
}

}  // namespace pgc
