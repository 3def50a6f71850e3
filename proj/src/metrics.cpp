#include "pgc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "pgc/errors.hpp"

namespace pgc {

namespace {

std::vector<std::vector<double>> contingency(const Partition& pred, const Partition& truth) {
  std::vector<std::vector<double>> table(pred.k, std::vector<double>(truth.k, 0.0));
  for (std::size_t i = 0; i < pred.assignment.size(); ++i) {
    table[pred.assignment[i]][truth.assignment[i]] += 1.0;
  }
  return table;
}

double entropy(const std::vector<double>& sizes, double n) {
  double h = 0.0;
  for (double s : sizes) {
    if (s > 0.0) h -= (s / n) * std::log(s / n);
  }
  return h;
}

double choose2(double x) { return 0.5 * x * (x - 1.0); }

/// Hungarian algorithm (potentials form) on a square cost matrix;
/// returns the minimum total cost.
double hungarian_min_cost(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0);  // match[col] = row, 1-based
  for (int row = 1; row <= n; ++row) {
    std::vector<double> min_slack(n + 1, std::numeric_limits<double>::infinity());
    std::vector<int> slack_origin(n + 1, 0);
    std::vector<bool> visited(n + 1, false);
    int col0 = 0;
    match[0] = row;
    do {
      visited[col0] = true;
      const int row0 = match[col0];
      double delta = std::numeric_limits<double>::infinity();
      int col1 = -1;
      for (int col = 1; col <= n; ++col) {
        if (visited[col]) continue;
        const double current = cost[row0 - 1][col - 1] - u[row0] - v[col];
        if (current < min_slack[col]) {
          min_slack[col] = current;
          slack_origin[col] = col0;
        }
        if (min_slack[col] < delta) {
          delta = min_slack[col];
          col1 = col;
        }
      }
      for (int col = 0; col <= n; ++col) {
        if (visited[col]) {
          u[match[col]] += delta;
          v[col] -= delta;
        } else {
          min_slack[col] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    while (col0 != 0) {
      const int col1 = slack_origin[col0];
      match[col0] = match[col1];
      col0 = col1;
    }
  }
  double total = 0.0;
  for (int col = 1; col <= n; ++col) {
    if (match[col] > 0) total += cost[match[col] - 1][col - 1];
  }
  return total;
}

}  // namespace

MetricsReport compute_metrics(const Partition& pred, const Partition& truth) {
  if (pred.assignment.size() != truth.assignment.size() || pred.assignment.empty()) {
    throw LabelMismatchError("metrics: partitions cover different vertex sets");
  }
  pred.validate(static_cast<int>(pred.assignment.size()));
  truth.validate(static_cast<int>(truth.assignment.size()));
  const double n = static_cast<double>(pred.assignment.size());
  const auto table = contingency(pred, truth);

  std::vector<double> pred_sizes(pred.k, 0.0), truth_sizes(truth.k, 0.0);
  for (int i = 0; i < pred.k; ++i) {
    for (int j = 0; j < truth.k; ++j) {
      pred_sizes[i] += table[i][j];
      truth_sizes[j] += table[i][j];
    }
  }

  MetricsReport report;
  report.n = static_cast<int>(n);
  report.k_pred = pred.k;
  report.k_true = truth.k;

  // NMI, arithmetic-mean normalization.
  const double h_pred = entropy(pred_sizes, n);
  const double h_truth = entropy(truth_sizes, n);
  double mutual = 0.0;
  for (int i = 0; i < pred.k; ++i) {
    for (int j = 0; j < truth.k; ++j) {
      const double nij = table[i][j];
      if (nij > 0.0) {
        mutual += (nij / n) * std::log(n * nij / (pred_sizes[i] * truth_sizes[j]));
      }
    }
  }
  if (h_pred + h_truth > 0.0) {
    report.nmi = std::clamp(2.0 * mutual / (h_pred + h_truth), 0.0, 1.0);
  } else {
    report.nmi = 1.0;  // both partitions trivial, hence identical
  }

  // Purity.
  double purity_sum = 0.0;
  for (int i = 0; i < pred.k; ++i) {
    purity_sum += *std::max_element(table[i].begin(), table[i].end());
  }
  report.purity = purity_sum / n;

  // ACC via optimal one-to-one matching on the zero-padded square table.
  const int side = std::max(pred.k, truth.k);
  std::vector<std::vector<double>> cost(side, std::vector<double>(side, 0.0));
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      const double overlap = (i < pred.k && j < truth.k) ? table[i][j] : 0.0;
      cost[i][j] = -overlap;
    }
  }
  report.acc = -hungarian_min_cost(cost) / n;

  // ARI, pair-counting closed form.
  double index = 0.0;
  for (int i = 0; i < pred.k; ++i) {
    for (int j = 0; j < truth.k; ++j) index += choose2(table[i][j]);
  }
  double sum_pred = 0.0, sum_truth = 0.0;
  for (double s : pred_sizes) sum_pred += choose2(s);
  for (double s : truth_sizes) sum_truth += choose2(s);
  const double total_pairs = choose2(n);
  const double expected = sum_pred * sum_truth / total_pairs;
  const double maximum = 0.5 * (sum_pred + sum_truth);
  report.ari = maximum == expected ? 1.0 : (index - expected) / (maximum - expected);

  // Pairwise F1 over same-cluster pairs.
  const double tp = index;
  const double fp = sum_pred - tp;
  const double fn = sum_truth - tp;
  if (tp + fp == 0.0 && tp + fn == 0.0) {
    report.f1 = 1.0;  // both all-singleton
  } else if (tp == 0.0) {
    report.f1 = 0.0;
  } else {
    const double precision = tp / (tp + fp);
    const double recall = tp / (tp + fn);
    report.f1 = 2.0 * precision * recall / (precision + recall);
  }
  return report;
}

}  // namespace pgc
