#pragma once

#include <string>

#include "pgc/critical_set.hpp"
#include "pgc/embedding.hpp"
#include "pgc/graph.hpp"

namespace pgc {

/// "vertex<TAB>c1,...,ck" per vertex, original ids.
std::string embedding_to_text(const EmbeddingMap& map, const Graph& g);

/// "weight<TAB>c1,...,cd'" per coreset point.
std::string coreset_to_text(const CriticalSet& coreset);

/// Row-major matrix text: one row per line, space-separated entries.
std::string matrix_to_text(const Eigen::MatrixXd& m);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace pgc
