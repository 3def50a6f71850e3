#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pgc/critical_set.hpp"
#include "pgc/embedding.hpp"
#include "pgc/graph.hpp"
#include "pgc/hst.hpp"
#include "pgc/kmedian.hpp"
#include "pgc/sdp.hpp"

namespace pgc {

/// Sequential-composition budget over the three noisy stages.
struct PrivacyBudget {
  bool disabled = false;
  double embedding_epsilon = 0.0;
  double delta = 0.0;
  double coreset_epsilon = 0.0;
  double hst_epsilon = 0.0;

  double total_epsilon() const { return embedding_epsilon + coreset_epsilon + hst_epsilon; }
  double total_delta() const { return delta; }
};

struct ExplanationEntry {
  double exp_value = 0.0;
  double fixed_center_cost = 0.0;
  double baseline_cost = 0.0;
  int pinned_coreset_index = -1;
};

/// Per-query contrastive explanations keyed by (compact) vertex id.
struct ExplanationSet {
  std::map<int, ExplanationEntry> entries;
};

struct PipelineConfig {
  int k = 2;
  // Privacy: either a finite total epsilon, or privacy_disabled set
  // explicitly. An infinite epsilon without the flag is rejected.
  double epsilon = 1.0;
  double delta = 1e-5;
  bool privacy_disabled = false;
  double embedding_split = 0.5;
  double coreset_split = 0.25;
  double hst_split = 0.25;

  double lambda = 1.0;  // SDP trade-off, also enters the noise variance
  double b = 0.4;       // volume balance lower bound
  SdpConfig sdp;        // lambda/b copied from above at run time

  EigenOrder eigen_order = EigenOrder::smallest;
  int d_prime_cap = 20;  // d' = min(embedding dimension, cap)
  double alpha = 0.5;
  double beta = 0.1;
  int p = 1;
  double lambda_p_alpha = 1.0;

  int kmedian_max_iter = 100;
  int coreset_retries = 3;

  void validate() const;
  double embedding_epsilon() const;
  double coreset_epsilon() const;
  double hst_epsilon() const;
};

struct PipelineDiagnostics {
  int sdp_iterations = 0;
  double sdp_objective = 0.0;
  bool sdp_converged = false;
  FeasibilityResiduals sdp_residuals;
  double eigen_residual = 0.0;
  int coreset_size = 0;
  double coreset_total_weight = 0.0;
  int coreset_retries_used = 0;
  int hst_depth = 0;
  double hst_delta = 0.0;
  int hst_leaf_count = 0;
  int kmedian_iterations = 0;
  double kmedian_cost = 0.0;
  std::vector<double> kmedian_cost_history;
  int empty_vertex_clusters = 0;  // centers that attracted no graph vertex
};

struct PipelineResult {
  Partition partition;
  ExplanationSet explanations;
  PrivacyBudget budget;
  PipelineDiagnostics diagnostics;

  // Stage artifacts, kept for inspection and dumps.
  GramSolution gram;
  EmbeddingMap embedding;
  std::vector<Eigen::VectorXd> reduced_points;
  CriticalSet coreset;
  HstTree tree;
  CenterSet initial_centers;
  ClusterModel model;
};

/// Full run: SDP -> noisy spectral embedding -> reduce/rescale -> private
/// coreset + scaled cost -> HST initialization -> k-median on the critical
/// set -> nearest-center extension to all vertices -> per-query pinned-
/// center explanations. Deterministic per (graph, config, seed). Stage
/// errors are rethrown with the stage name prefixed.
PipelineResult run_pipeline(const Graph& g, int k, const std::vector<int>& query_vertices,
                            const PipelineConfig& cfg, std::uint64_t rng_seed);

/// Serializes a result to the versioned JSON document described in the
/// README. Byte-identical for identical runs.
std::string result_to_json(const PipelineResult& result, const Graph& g, const PipelineConfig& cfg,
                           std::uint64_t rng_seed);

}  // namespace pgc
