#include "pgc/sbm.hpp"

#include <numeric>

#include "pgc/errors.hpp"
#include "pgc/random.hpp"

namespace pgc {

std::pair<Graph, Partition> generate_sbm(const std::vector<int>& blocks, double p_in, double p_out,
                                         std::uint64_t seed) {
  if (blocks.empty()) throw Error("sbm: need at least one block");
  for (int size : blocks) {
    if (size < 1) throw Error("sbm: block sizes must be positive");
  }
  if (p_in <= 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0) {
    throw Error("sbm: probabilities must be in [0,1] with p_in > 0");
  }
  if (p_in <= p_out) throw Error("sbm: planted structure requires p_in > p_out");

  const int n = std::accumulate(blocks.begin(), blocks.end(), 0);
  std::vector<int> block_of(n);
  {
    int v = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (int i = 0; i < blocks[b]; ++i) block_of[v++] = static_cast<int>(b);
    }
  }

  Rng rng(seed);
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  std::vector<int> degree(n, 0);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double p = block_of[u] == block_of[v] ? p_in : p_out;
      if (rng.uniform() < p) {
        edges.emplace_back(u, v);
        ++degree[u];
        ++degree[v];
      }
    }
  }

  // Repair isolated vertices: attach to a random same-block neighbor
  // (or any other vertex when the block is a singleton).
  for (int u = 0; u < n; ++u) {
    if (degree[u] > 0) continue;
    std::vector<int> candidates;
    for (int v = 0; v < n; ++v) {
      if (v != u && block_of[v] == block_of[u]) candidates.push_back(v);
    }
    if (candidates.empty()) {
      for (int v = 0; v < n; ++v) {
        if (v != u) candidates.push_back(v);
      }
    }
    if (candidates.empty()) throw Error("sbm: cannot repair isolated vertex in 1-vertex graph");
    const int v = candidates[rng.uniform_below(candidates.size())];
    edges.emplace_back(std::min(u, v), std::max(u, v));
    ++degree[u];
    ++degree[v];
  }

  Partition labels;
  labels.assignment = std::move(block_of);
  labels.k = static_cast<int>(blocks.size());
  return {Graph::from_edges(edges), labels};
}

}  // namespace pgc
