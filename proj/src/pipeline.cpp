#include "pgc/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "pgc/errors.hpp"
#include "pgc/random.hpp"

namespace pgc {

namespace {

constexpr std::uint64_t kSeedEmbedding = 1;
constexpr std::uint64_t kSeedProjection = 2;
constexpr std::uint64_t kSeedCoreset = 3;
constexpr std::uint64_t kSeedHstBuild = 4;
constexpr std::uint64_t kSeedHstScores = 5;

template <typename Fn>
auto run_stage(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(std::string(stage) + ": " + e.what());
  }
}

}  // namespace

void PipelineConfig::validate() const {
  if (k < 1) throw Error("config: k must be positive");
  if (!privacy_disabled) {
    if (!std::isfinite(epsilon) || epsilon <= 0.0) {
      throw Error("config: a finite positive epsilon is required unless privacy is disabled explicitly");
    }
    if (delta <= 0.0 || delta >= 1.0) throw Error("config: delta must be in (0,1)");
    if (embedding_split <= 0.0 || coreset_split <= 0.0 || hst_split <= 0.0 ||
        std::fabs(embedding_split + coreset_split + hst_split - 1.0) > 1e-9) {
      throw Error("config: budget splits must be positive and sum to 1");
    }
  }
  if (b <= 0.0 || b >= 1.0) throw Error("config: b must be in (0,1)");
  if (lambda <= 0.0) throw Error("config: lambda must be positive");
  if (p != 1 && p != 2) throw Error("config: p must be 1 or 2");
  if (beta <= 0.0 || beta >= 1.0) throw Error("config: beta must be in (0,1)");
  if (alpha <= 0.0) throw Error("config: alpha must be positive");
  if (d_prime_cap < 1) throw Error("config: d' cap must be positive");
  if (kmedian_max_iter < 1) throw Error("config: kmedian_max_iter must be positive");
}

double PipelineConfig::embedding_epsilon() const {
  return privacy_disabled ? std::numeric_limits<double>::infinity() : epsilon * embedding_split;
}
double PipelineConfig::coreset_epsilon() const {
  return privacy_disabled ? std::numeric_limits<double>::infinity() : epsilon * coreset_split;
}
double PipelineConfig::hst_epsilon() const {
  return privacy_disabled ? std::numeric_limits<double>::infinity() : epsilon * hst_split;
}

PipelineResult run_pipeline(const Graph& g, int k, const std::vector<int>& query_vertices,
                            const PipelineConfig& cfg, std::uint64_t rng_seed) {
  cfg.validate();
  const int n = g.vertex_count();
  if (k < 1 || k > n) throw Error("pipeline: k must be in [1, n]");
  for (int q : query_vertices) {
    if (q < 0 || q >= n) throw Error("pipeline: query vertex " + std::to_string(q) + " out of range");
  }
  for (int v = 0; v < n; ++v) {
    if (g.degree(v) == 0) throw DegreeZeroError("pipeline: vertex " + std::to_string(v) + " is isolated");
  }

  PipelineResult result;
  result.budget.disabled = cfg.privacy_disabled;
  result.budget.embedding_epsilon = cfg.privacy_disabled ? 0.0 : cfg.epsilon * cfg.embedding_split;
  result.budget.delta = cfg.privacy_disabled ? 0.0 : cfg.delta;
  result.budget.coreset_epsilon = cfg.privacy_disabled ? 0.0 : cfg.epsilon * cfg.coreset_split;
  result.budget.hst_epsilon = cfg.privacy_disabled ? 0.0 : cfg.epsilon * cfg.hst_split;

  // Stage 1: Gram matrix relaxation.
  SdpConfig sdp_cfg = cfg.sdp;
  sdp_cfg.lambda = cfg.lambda;
  sdp_cfg.b = cfg.b;
  result.gram = run_stage("sdp", [&] { return solve_sdp(g, sdp_cfg); });
  result.diagnostics.sdp_iterations = result.gram.iterations;
  result.diagnostics.sdp_objective = result.gram.objective_value;
  result.diagnostics.sdp_converged = result.gram.converged;
  result.diagnostics.sdp_residuals = result.gram.feasibility;

  // Stage 2: noisy spectral embedding.
  NoiseSpec spec;
  spec.epsilon = cfg.embedding_epsilon();
  spec.delta = cfg.delta;
  spec.lambda = cfg.lambda;
  spec.m = g.edge_count();
  result.embedding = run_stage("embedding", [&] {
    return spectral_embed(result.gram, g, k, spec, derive_seed(rng_seed, kSeedEmbedding),
                          cfg.eigen_order);
  });
  result.diagnostics.eigen_residual = result.embedding.eigen_residual;

  // Stage 3: dimension reduction, private coreset, scaled cost.
  ReductionParams params;
  params.d = k;
  params.d_prime = std::min(k, cfg.d_prime_cap);
  params.n = n;
  params.beta = cfg.beta;
  params.alpha = cfg.alpha;
  params.p = cfg.p;
  params.lambda_p_alpha = cfg.lambda_p_alpha;

  std::vector<Eigen::VectorXd> embedded(n);
  for (int v = 0; v < n; ++v) embedded[v] = result.embedding.vertex_coords(v);
  result.reduced_points = run_stage("reduce", [&] {
    return reduce_and_rescale(embedded, params, derive_seed(rng_seed, kSeedProjection));
  });

  result.coreset = run_stage("coreset", [&] {
    int attempt = 0;
    for (;;) {
      try {
        return private_coreset(result.reduced_points, params.zeta(), cfg.coreset_epsilon(),
                               cfg.beta, derive_seed(rng_seed, kSeedCoreset + attempt));
      } catch (const EmptyCoresetError&) {
        if (++attempt > cfg.coreset_retries) throw;
        ++result.diagnostics.coreset_retries_used;
      }
    }
  });
  result.diagnostics.coreset_size = static_cast<int>(result.coreset.points.size());
  result.diagnostics.coreset_total_weight = result.coreset.points.total_weight();
  run_stage("coreset", [&] { return estimate_cost(result.coreset, k, n, cfg.beta, cfg.p); });

  // Stage 4: HST initialization. The tree sees coreset coordinates in grid
  // units (1 = one cell width): initialization is scale-invariant, and the
  // base-2 depth rule needs diameters above 1 to resolve any hierarchy on
  // these sub-unit embeddings.
  WeightedPoints hst_points = result.coreset.points;
  for (auto& c : hst_points.coords) c /= params.zeta();
  result.tree = run_stage("hst", [&] {
    return build_hst(hst_points, derive_seed(rng_seed, kSeedHstBuild));
  });
  run_stage("hst", [&] {
    noisy_scores(result.tree, cfg.hst_epsilon(), derive_seed(rng_seed, kSeedHstScores));
    return 0;
  });
  result.diagnostics.hst_depth = result.tree.depth;
  result.diagnostics.hst_delta = result.tree.delta;
  result.diagnostics.hst_leaf_count = result.tree.leaf_count();
  result.initial_centers = run_stage("hst", [&] {
    const std::vector<int> roots = select_subtree_roots(result.tree, k);
    return descend_to_leaves(result.tree, roots);
  });

  // Stage 5: k-median on the critical set.
  result.model = run_stage("kmedian", [&] {
    return kmedian(result.coreset.points, k, result.initial_centers.center_indices,
                   cfg.kmedian_max_iter, cfg.p);
  });
  result.diagnostics.kmedian_iterations = result.model.iterations;
  result.diagnostics.kmedian_cost = result.model.cost;
  result.diagnostics.kmedian_cost_history = result.model.cost_history;

  // Stage 6: extend the clustering to every vertex by nearest center in
  // the reduced embedding space (ties to the lowest center position).
  result.partition.k = k;
  result.partition.assignment.resize(n);
  std::vector<int> vertices_per_center(k, 0);
  for (int v = 0; v < n; ++v) {
    int best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
      const double dist =
          euclidean(result.reduced_points[v], result.coreset.points.coords[result.model.centers[c]]);
      if (dist < best_dist) {
        best_dist = dist;
        best = c;
      }
    }
    result.partition.assignment[v] = best;
    ++vertices_per_center[best];
  }
  result.diagnostics.empty_vertex_clusters =
      static_cast<int>(std::count(vertices_per_center.begin(), vertices_per_center.end(), 0));

  // Stage 7: contrastive explanations for the query set.
  for (int q : query_vertices) {
    ExplanationEntry entry;
    entry.baseline_cost = result.coreset.cost_s_eps;
    // Pin the coreset point nearest to the query's reduced embedding.
    int pinned = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < result.coreset.points.size(); ++i) {
      const double dist = euclidean(result.reduced_points[q], result.coreset.points.coords[i]);
      if (dist < best_dist) {
        best_dist = dist;
        pinned = static_cast<int>(i);
      }
    }
    entry.pinned_coreset_index = pinned;
    entry.fixed_center_cost = run_stage("explanation", [&] {
      return fixed_center_cost(result.coreset.points, k, pinned,
                               result.initial_centers.center_indices, cfg.kmedian_max_iter, cfg.p);
    });
    entry.exp_value =
        explanation_value(entry.baseline_cost, entry.fixed_center_cost, n, cfg.beta, cfg.p);
    result.explanations.entries[q] = entry;
  }

  return result;
}

std::string result_to_json(const PipelineResult& result, const Graph& g, const PipelineConfig& cfg,
                           std::uint64_t rng_seed) {
  using json = nlohmann::ordered_json;
  json doc;
  doc["schema_version"] = 1;
  doc["n"] = g.vertex_count();
  doc["m"] = g.edge_count();
  doc["k"] = result.partition.k;
  doc["seed"] = rng_seed;

  json config;
  config["privacy_disabled"] = cfg.privacy_disabled;
  if (!cfg.privacy_disabled) {
    config["epsilon"] = cfg.epsilon;
    config["delta"] = cfg.delta;
  }
  config["lambda"] = cfg.lambda;
  config["b"] = cfg.b;
  config["p"] = cfg.p;
  config["alpha"] = cfg.alpha;
  config["beta"] = cfg.beta;
  config["d_prime_cap"] = cfg.d_prime_cap;
  config["lambda_p_alpha"] = cfg.lambda_p_alpha;
  config["eigen_order"] = cfg.eigen_order == EigenOrder::largest ? "largest" : "smallest";
  doc["config"] = config;

  json ids = json::array();
  for (std::int64_t id : g.original_ids()) ids.push_back(id);
  doc["original_ids"] = ids;

  doc["assignment"] = result.partition.assignment;

  json centers = json::array();
  for (std::size_t c = 0; c < result.model.centers.size(); ++c) {
    const int idx = result.model.centers[c];
    json center;
    center["coreset_index"] = idx;
    center["weight"] = result.coreset.points.weights[idx];
    center["coords"] = std::vector<double>(
        result.coreset.points.coords[idx].data(),
        result.coreset.points.coords[idx].data() + result.coreset.points.coords[idx].size());
    centers.push_back(center);
  }
  doc["centers"] = centers;
  doc["cost"] = result.model.cost;
  doc["cost_s_eps"] = result.coreset.cost_s_eps;

  json explanations = json::object();
  for (const auto& [vertex, entry] : result.explanations.entries) {
    json e;
    e["exp"] = entry.exp_value;
    e["fixed_cost"] = entry.fixed_center_cost;
    e["baseline_cost"] = entry.baseline_cost;
    e["pinned_coreset_index"] = entry.pinned_coreset_index;
    explanations[std::to_string(g.original_id(vertex))] = e;
  }
  doc["explanations"] = explanations;

  json budget;
  budget["privacy_disabled"] = result.budget.disabled;
  if (result.budget.disabled) {
    budget["embedding_epsilon"] = nullptr;
    budget["delta"] = nullptr;
    budget["coreset_epsilon"] = nullptr;
    budget["hst_epsilon"] = nullptr;
    budget["total_epsilon"] = nullptr;
    budget["total_delta"] = nullptr;
  } else {
    budget["embedding_epsilon"] = result.budget.embedding_epsilon;
    budget["delta"] = result.budget.delta;
    budget["coreset_epsilon"] = result.budget.coreset_epsilon;
    budget["hst_epsilon"] = result.budget.hst_epsilon;
    budget["total_epsilon"] = result.budget.total_epsilon();
    budget["total_delta"] = result.budget.total_delta();
  }
  doc["budget"] = budget;

  json diag;
  diag["sdp_iterations"] = result.diagnostics.sdp_iterations;
  diag["sdp_objective"] = result.diagnostics.sdp_objective;
  diag["sdp_converged"] = result.diagnostics.sdp_converged;
  diag["sdp_diag_residual"] = result.diagnostics.sdp_residuals.diag_residual;
  diag["sdp_min_eigenvalue"] = result.diagnostics.sdp_residuals.min_eigenvalue;
  diag["sdp_min_entry"] = result.diagnostics.sdp_residuals.min_entry;
  diag["sdp_volume_slack"] = result.diagnostics.sdp_residuals.volume_slack;
  diag["eigen_residual"] = result.diagnostics.eigen_residual;
  diag["coreset_size"] = result.diagnostics.coreset_size;
  diag["coreset_total_weight"] = result.diagnostics.coreset_total_weight;
  diag["coreset_retries_used"] = result.diagnostics.coreset_retries_used;
  diag["hst_depth"] = result.diagnostics.hst_depth;
  diag["hst_delta"] = result.diagnostics.hst_delta;
  diag["hst_leaf_count"] = result.diagnostics.hst_leaf_count;
  diag["kmedian_iterations"] = result.diagnostics.kmedian_iterations;
  diag["kmedian_cost"] = result.diagnostics.kmedian_cost;
  diag["kmedian_cost_history"] = result.diagnostics.kmedian_cost_history;
  diag["empty_vertex_clusters"] = result.diagnostics.empty_vertex_clusters;
  doc["diagnostics"] = diag;

  return doc.dump(2) + "\n";
}

}  // namespace pgc
