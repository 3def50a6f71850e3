#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pgc/graph.hpp"

namespace pgc {

/// Solver settings for the Gram-matrix relaxation.
struct SdpConfig {
  double lambda = 1.0;  // structural fidelity / separation trade-off
  double b = 0.4;       // lower bound on volume balance, must be in (0,1)
  int max_iterations = 5000;
  double step_size = 1.0;  // initial gradient step, adapted by backtracking
  double feasibility_tolerance = 1e-6;
  double objective_tolerance = 1e-8;  // relative objective change stop rule
  int projection_cycles = 60;         // Dykstra passes per projection call

  void validate() const;
};

/// Constraint residuals of a candidate Gram matrix, all recomputable from
/// the matrix alone.
struct FeasibilityResiduals {
  double diag_residual = 0.0;   // max_i |X_ii - 1/n|
  double min_eigenvalue = 0.0;  // of the symmetrized matrix
  double min_entry = 0.0;
  double volume_slack = 0.0;  // max(0, b m^2 / n - <D L_V D, X>)

  bool within(double tol) const {
    return diag_residual <= tol && min_eigenvalue >= -tol && min_entry >= -tol &&
           volume_slack <= tol;
  }
};

struct GramSolution {
  Eigen::MatrixXd x1;
  double objective_value = 0.0;
  FeasibilityResiduals feasibility;
  int iterations = 0;
  bool converged = false;  // false flags NonConvergence; best iterate is still returned
  std::vector<double> objective_history;  // accepted line-search iterates, non-increasing
};

struct ProjectionResult {
  Eigen::MatrixXd matrix;
  FeasibilityResiduals residuals;
  bool converged = false;
};

/// <L_G, X> + (n / (lambda m)) * ||D^{1/2} X D^{1/2}||_F^2.
double sdp_objective(const Eigen::MatrixXd& x, const Graph& g, double lambda);

/// Residuals of x against the feasible region for balance bound b.
FeasibilityResiduals feasibility_residuals(const Eigen::MatrixXd& x, const Graph& g, double b);

/// Dykstra cyclic projection onto the intersection of {X psd}, {X >= 0},
/// {X_ii = 1/n} and the volume half-space. Non-convergence within `cycles`
/// passes is flagged on the result, not thrown.
ProjectionResult project_feasible(const Eigen::MatrixXd& x, const Graph& g, double b, int cycles,
                                  double tolerance = 1e-9);

/// Projected gradient descent with backtracking line search from
/// X = (1/n) I. Deterministic; the objective over accepted iterates is
/// non-increasing. A solution that never reaches feasibility tolerance is
/// returned with converged = false.
GramSolution solve_sdp(const Graph& g, const SdpConfig& cfg);

}  // namespace pgc
