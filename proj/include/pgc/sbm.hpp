#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pgc/graph.hpp"

namespace pgc {

/// Stochastic block model: intra-block edges with probability p_in,
/// inter-block with p_out (p_in > p_out). A vertex left isolated is
/// repaired by attaching it to a seeded-random in-block neighbor, so the
/// returned graph always satisfies the pipeline's degree >= 1 requirement.
/// Deterministic per seed; also returns the planted labels.
std::pair<Graph, Partition> generate_sbm(const std::vector<int>& blocks, double p_in, double p_out,
                                         std::uint64_t seed);

}  // namespace pgc
