#pragma once

#include "pgc/graph.hpp"

namespace pgc {

/// External clustering-agreement scores between a predicted and a ground
/// truth partition of the same vertex set.
///
/// Conventions: NMI normalizes mutual information by the arithmetic mean
/// of the two entropies; ACC maximizes accuracy over one-to-one cluster/
/// label matchings (Hungarian on the zero-padded confusion matrix); F1 is
/// the pairwise same-cluster F1.
struct MetricsReport {
  double nmi = 0.0;
  double purity = 0.0;
  double acc = 0.0;
  double ari = 0.0;
  double f1 = 0.0;
  int n = 0;
  int k_true = 0;
  int k_pred = 0;
};

/// Throws LabelMismatchError when the partitions cover different vertex
/// counts.
MetricsReport compute_metrics(const Partition& pred, const Partition& truth);

}  // namespace pgc
