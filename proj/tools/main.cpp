// Command line driver: run the clustering pipeline, evaluate results
// against label files, generate synthetic block-model graphs, and compare
// k-median initialization strategies.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pgc/errors.hpp"
#include "pgc/graph.hpp"
#include "pgc/io.hpp"
#include "pgc/kmedian.hpp"
#include "pgc/metrics.hpp"
#include "pgc/pipeline.hpp"
#include "pgc/random.hpp"
#include "pgc/sbm.hpp"

namespace {

using json = nlohmann::ordered_json;

pgc::EdgeListFormat parse_format(const std::string& name) {
  if (name == "tsv") return pgc::EdgeListFormat::tsv;
  if (name == "csv") return pgc::EdgeListFormat::csv;
  throw pgc::Error("unknown format: " + name);
}

struct RunOptions {
  std::string graph_path;
  std::string format = "tsv";
  int k = 2;
  double epsilon = 0.0;
  bool privacy_disabled = false;
  double delta = 1e-5;
  double lambda = 1.0;
  double b = 0.4;
  int p = 1;
  double alpha = 0.5;
  double beta = 0.1;
  int d_prime = 20;
  double lambda_p_alpha = 1.0;
  std::string eigen_order = "smallest";
  double embedding_split = 0.5;
  double coreset_split = 0.25;
  double hst_split = 0.25;
  std::vector<std::int64_t> queries;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string dump_gram, dump_embedding, dump_coreset, dump_hst;
};

pgc::PipelineConfig to_config(const RunOptions& opt) {
  pgc::PipelineConfig cfg;
  cfg.k = opt.k;
  cfg.privacy_disabled = opt.privacy_disabled;
  cfg.epsilon = opt.privacy_disabled ? std::numeric_limits<double>::infinity() : opt.epsilon;
  cfg.delta = opt.delta;
  cfg.lambda = opt.lambda;
  cfg.b = opt.b;
  cfg.p = opt.p;
  cfg.alpha = opt.alpha;
  cfg.beta = opt.beta;
  cfg.d_prime_cap = opt.d_prime;
  cfg.lambda_p_alpha = opt.lambda_p_alpha;
  cfg.eigen_order =
      opt.eigen_order == "largest" ? pgc::EigenOrder::largest : pgc::EigenOrder::smallest;
  cfg.embedding_split = opt.embedding_split;
  cfg.coreset_split = opt.coreset_split;
  cfg.hst_split = opt.hst_split;
  return cfg;
}

bool verbose_logging() {
  const char* env = std::getenv("PGC_VERBOSE");
  return env != nullptr && env[0] != '\0' && env[0] != '0';
}

void log_diagnostics(const pgc::PipelineResult& result) {
  if (!verbose_logging()) return;
  const auto& d = result.diagnostics;
  std::cerr << "sdp: " << d.sdp_iterations << " iterations, objective " << d.sdp_objective
            << (d.sdp_converged ? "" : " (not converged)") << "\n"
            << "embedding: eigen residual " << d.eigen_residual << "\n"
            << "coreset: " << d.coreset_size << " cells, weight " << d.coreset_total_weight
            << ", retries " << d.coreset_retries_used << "\n"
            << "hst: depth " << d.hst_depth << ", diameter " << d.hst_delta << " (grid units), "
            << d.hst_leaf_count << " leaves\n"
            << "kmedian: " << d.kmedian_iterations << " iterations, cost " << d.kmedian_cost
            << "\n";
}

int command_run(const RunOptions& opt) {
  const pgc::EdgeListFormat format = parse_format(opt.format);
  const pgc::Graph g = pgc::load_graph_file(opt.graph_path, format);
  const pgc::PipelineConfig cfg = to_config(opt);

  std::vector<int> queries;
  for (std::int64_t q : opt.queries) {
    const int v = g.compact_id(q);
    if (v < 0) throw pgc::Error("query vertex " + std::to_string(q) + " not in graph");
    queries.push_back(v);
  }

  const pgc::PipelineResult result = pgc::run_pipeline(g, opt.k, queries, cfg, opt.seed);
  log_diagnostics(result);
  const std::string doc = pgc::result_to_json(result, g, cfg, opt.seed);
  if (opt.out_path.empty()) {
    std::cout << doc;
  } else {
    pgc::write_text_file(opt.out_path, doc);
  }

  if (!opt.dump_gram.empty()) pgc::write_text_file(opt.dump_gram, pgc::matrix_to_text(result.gram.x1));
  if (!opt.dump_embedding.empty()) {
    pgc::write_text_file(opt.dump_embedding, pgc::embedding_to_text(result.embedding, g));
  }
  if (!opt.dump_coreset.empty()) {
    pgc::write_text_file(opt.dump_coreset, pgc::coreset_to_text(result.coreset));
  }
  if (!opt.dump_hst.empty()) pgc::write_text_file(opt.dump_hst, result.tree.dump());
  return 0;
}

int command_eval(const std::string& result_path, const std::string& labels_path,
                 const std::string& format_name) {
  std::ifstream in(result_path);
  if (!in) throw pgc::Error("cannot open result file: " + result_path);
  json doc = json::parse(in);

  const std::vector<std::int64_t> original_ids = doc.at("original_ids").get<std::vector<std::int64_t>>();
  pgc::Partition pred;
  pred.assignment = doc.at("assignment").get<std::vector<int>>();
  pred.k = doc.at("k").get<int>();

  std::ifstream labels_in(labels_path);
  if (!labels_in) throw pgc::Error("cannot open label file: " + labels_path);
  std::stringstream buffer;
  buffer << labels_in.rdbuf();
  const auto pairs = pgc::load_label_pairs(buffer.str(), parse_format(format_name));

  std::map<std::int64_t, int> position;
  for (std::size_t i = 0; i < original_ids.size(); ++i) position[original_ids[i]] = static_cast<int>(i);

  pgc::Partition truth;
  truth.assignment.assign(original_ids.size(), -1);
  std::map<std::string, int> label_ids;
  for (const auto& [vertex, label] : pairs) {
    const auto it = position.find(vertex);
    if (it == position.end()) throw pgc::LabelMismatchError("labeled vertex " + std::to_string(vertex) + " not in result");
    const auto [lit, _] = label_ids.try_emplace(label, static_cast<int>(label_ids.size()));
    truth.assignment[it->second] = lit->second;
  }
  for (std::size_t i = 0; i < truth.assignment.size(); ++i) {
    if (truth.assignment[i] == -1) {
      throw pgc::LabelMismatchError("vertex " + std::to_string(original_ids[i]) + " has no label");
    }
  }
  truth.k = static_cast<int>(label_ids.size());

  const pgc::MetricsReport report = pgc::compute_metrics(pred, truth);
  json out;
  out["n"] = report.n;
  out["k_pred"] = report.k_pred;
  out["k_true"] = report.k_true;
  out["nmi"] = report.nmi;
  out["purity"] = report.purity;
  out["acc"] = report.acc;
  out["ari"] = report.ari;
  out["f1"] = report.f1;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int command_sbm(const std::vector<int>& blocks, double p_in, double p_out, std::uint64_t seed,
                const std::string& graph_out, const std::string& labels_out) {
  const auto [g, labels] = pgc::generate_sbm(blocks, p_in, p_out, seed);
  std::ostringstream graph_text;
  graph_text << "# stochastic block model: blocks";
  for (int b : blocks) graph_text << ' ' << b;
  graph_text << ", p_in " << p_in << ", p_out " << p_out << ", seed " << seed << "\n";
  for (const auto& [u, v] : g.edges()) graph_text << u << '\t' << v << '\n';
  pgc::write_text_file(graph_out, graph_text.str());

  std::ostringstream labels_text;
  for (int v = 0; v < g.vertex_count(); ++v) {
    labels_text << v << '\t' << labels.assignment[v] << '\n';
  }
  pgc::write_text_file(labels_out, labels_text.str());
  std::cout << "wrote " << g.vertex_count() << " vertices, " << g.edge_count() << " edges\n";
  return 0;
}

int command_initcost(const RunOptions& opt, int num_seeds, const std::string& out_path) {
  const pgc::EdgeListFormat format = parse_format(opt.format);
  const pgc::Graph g = pgc::load_graph_file(opt.graph_path, format);
  const pgc::PipelineConfig cfg = to_config(opt);

  json rows = json::array();
  int hst_no_worse_than_uniform = 0;
  for (int s = 0; s < num_seeds; ++s) {
    const std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(s);
    const pgc::PipelineResult result = pgc::run_pipeline(g, opt.k, {}, cfg, seed);
    const pgc::WeightedPoints& pts = result.coreset.points;

    const std::vector<int> hst_init = result.initial_centers.center_indices;
    const std::vector<int> uniform_init =
        pgc::init_uniform(pts, opt.k, pgc::derive_seed(seed, 1001));
    const std::vector<int> farthest_init = pgc::init_farthest(pts, opt.k);

    json row;
    row["seed"] = seed;
    row["hst_initial"] = pgc::assignment_cost(pts, hst_init, cfg.p);
    row["hst_final"] = pgc::kmedian(pts, opt.k, hst_init, cfg.kmedian_max_iter, cfg.p).cost;
    row["uniform_initial"] = pgc::assignment_cost(pts, uniform_init, cfg.p);
    row["uniform_final"] = pgc::kmedian(pts, opt.k, uniform_init, cfg.kmedian_max_iter, cfg.p).cost;
    row["farthest_initial"] = pgc::assignment_cost(pts, farthest_init, cfg.p);
    row["farthest_final"] = pgc::kmedian(pts, opt.k, farthest_init, cfg.kmedian_max_iter, cfg.p).cost;
    if (row["hst_initial"].get<double>() <= row["uniform_initial"].get<double>()) {
      ++hst_no_worse_than_uniform;
    }
    rows.push_back(row);
  }

  json summary;
  summary["seeds"] = num_seeds;
  summary["hst_initial_no_worse_than_uniform"] = hst_no_worse_than_uniform;
  json doc;
  doc["rows"] = rows;
  doc["summary"] = summary;

  std::cout << "seed  hst(init/final)  uniform(init/final)  farthest(init/final)\n";
  for (const auto& row : rows) {
    std::cout << row["seed"] << "  " << row["hst_initial"].get<double>() << " / "
              << row["hst_final"].get<double>() << "  " << row["uniform_initial"].get<double>()
              << " / " << row["uniform_final"].get<double>() << "  "
              << row["farthest_initial"].get<double>() << " / "
              << row["farthest_final"].get<double>() << "\n";
  }
  std::cout << "hst initial cost no worse than uniform in " << hst_no_worse_than_uniform << " of "
            << num_seeds << " seeds\n";
  if (!out_path.empty()) pgc::write_text_file(out_path, doc.dump(2) + "\n");
  return 0;
}

void add_pipeline_options(CLI::App* cmd, RunOptions& opt) {
  cmd->add_option("--graph", opt.graph_path, "edge list file")->required();
  cmd->add_option("--format", opt.format, "tsv or csv")->check(CLI::IsMember({"tsv", "csv"}));
  cmd->add_option("--k", opt.k, "number of clusters")->required();
  cmd->add_option("--epsilon", opt.epsilon, "total privacy budget");
  cmd->add_flag("--privacy-disabled", opt.privacy_disabled,
                "disable all noise (must be explicit)");
  cmd->add_option("--delta", opt.delta, "privacy slack for the Gaussian stage");
  cmd->add_option("--lambda", opt.lambda, "SDP trade-off coefficient");
  cmd->add_option("--b", opt.b, "volume balance lower bound, in (0,1)");
  cmd->add_option("--p", opt.p, "distance exponent (1 or 2)");
  cmd->add_option("--alpha", opt.alpha, "coreset error parameter");
  cmd->add_option("--beta", opt.beta, "failure probability parameter, in (0,1)");
  cmd->add_option("--d-prime", opt.d_prime, "reduced dimension cap");
  cmd->add_option("--lambda-p-alpha", opt.lambda_p_alpha, "coreset grid distortion constant");
  cmd->add_option("--eigen-order", opt.eigen_order, "smallest or largest")
      ->check(CLI::IsMember({"smallest", "largest"}));
  cmd->add_option("--embedding-split", opt.embedding_split, "embedding share of epsilon");
  cmd->add_option("--coreset-split", opt.coreset_split, "coreset share of epsilon");
  cmd->add_option("--hst-split", opt.hst_split, "HST share of epsilon");
  cmd->add_option("--seed", opt.seed, "master random seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"differentially private graph clustering with contrastive explanations"};
  app.require_subcommand(1);

  RunOptions run_opt;
  CLI::App* run_cmd = app.add_subcommand("run", "run the full clustering pipeline");
  add_pipeline_options(run_cmd, run_opt);
  run_cmd->add_option("--queries", run_opt.queries, "vertex ids to explain")->delimiter(',');
  run_cmd->add_option("--out", run_opt.out_path, "result JSON path (stdout if omitted)");
  run_cmd->add_option("--dump-gram", run_opt.dump_gram, "write the Gram matrix (row-major text)");
  run_cmd->add_option("--dump-embedding", run_opt.dump_embedding, "write per-vertex coordinates");
  run_cmd->add_option("--dump-coreset", run_opt.dump_coreset, "write the weighted coreset");
  run_cmd->add_option("--dump-hst", run_opt.dump_hst, "write the scored tree");

  std::string eval_result, eval_labels, eval_format = "tsv";
  CLI::App* eval_cmd = app.add_subcommand("eval", "score a result against ground-truth labels");
  eval_cmd->add_option("--result", eval_result, "result JSON from `run`")->required();
  eval_cmd->add_option("--labels", eval_labels, "vertex<sep>label file")->required();
  eval_cmd->add_option("--format", eval_format, "tsv or csv")->check(CLI::IsMember({"tsv", "csv"}));

  std::vector<int> sbm_blocks;
  double sbm_p_in = 0.5, sbm_p_out = 0.05;
  std::uint64_t sbm_seed = 0;
  std::string sbm_graph_out, sbm_labels_out;
  CLI::App* sbm_cmd = app.add_subcommand("sbm", "generate a planted-partition benchmark graph");
  sbm_cmd->add_option("--blocks", sbm_blocks, "block sizes")->required()->delimiter(',');
  sbm_cmd->add_option("--p-in", sbm_p_in, "intra-block edge probability");
  sbm_cmd->add_option("--p-out", sbm_p_out, "inter-block edge probability");
  sbm_cmd->add_option("--seed", sbm_seed, "random seed");
  sbm_cmd->add_option("--out-graph", sbm_graph_out, "edge list output path")->required();
  sbm_cmd->add_option("--out-labels", sbm_labels_out, "label output path")->required();

  RunOptions init_opt;
  int init_seeds = 10;
  std::string init_out;
  CLI::App* init_cmd =
      app.add_subcommand("initcost", "compare k-median initialization strategies");
  add_pipeline_options(init_cmd, init_opt);
  init_cmd->add_option("--seeds", init_seeds, "number of seeds (base taken from --seed)");
  init_cmd->add_option("--out", init_out, "optional JSON output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      if (!run_opt.privacy_disabled && run_opt.epsilon <= 0.0) {
        std::cerr << "error: either --epsilon > 0 or --privacy-disabled is required\n";
        return 2;
      }
      return command_run(run_opt);
    }
    if (*eval_cmd) return command_eval(eval_result, eval_labels, eval_format);
    if (*sbm_cmd) return command_sbm(sbm_blocks, sbm_p_in, sbm_p_out, sbm_seed, sbm_graph_out, sbm_labels_out);
    if (*init_cmd) {
      if (!init_opt.privacy_disabled && init_opt.epsilon <= 0.0) {
        std::cerr << "error: either --epsilon > 0 or --privacy-disabled is required\n";
        return 2;
      }
      return command_initcost(init_opt, init_seeds, init_out);
    }
  } catch (const pgc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
