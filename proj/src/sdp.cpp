#include "pgc/sdp.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "pgc/errors.hpp"

namespace pgc {

namespace {

Eigen::VectorXd degree_vector(const Graph& g) {
  Eigen::VectorXd d(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) d(v) = g.degree(v);
  return d;
}

/// D L_V D with L_V the Laplacian of the complete graph on V (n I - J):
/// entries n d_i^2 on the diagonal minus d_i d_j everywhere.
Eigen::MatrixXd volume_constraint_matrix(const Graph& g) {
  const Eigen::VectorXd d = degree_vector(g);
  const int n = g.vertex_count();
  Eigen::MatrixXd a = -(d * d.transpose());
  a.diagonal().array() += static_cast<double>(n) * d.array().square();
  return a;
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& x) { return 0.5 * (x + x.transpose()); }

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd s = symmetrized(x);
  // Cholesky probe: an already-PSD iterate skips the eigendecomposition.
  Eigen::MatrixXd shifted = s;
  shifted.diagonal().array() += 1e-12;
  if (Eigen::LLT<Eigen::MatrixXd>(shifted).info() == Eigen::Success) return s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
  const Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
}

struct VolumeHalfspace {
  Eigen::MatrixXd a;
  double bound = 0.0;      // b m^2 / n
  double norm_sq = 0.0;    // ||a||_F^2

  double inner(const Eigen::MatrixXd& x) const { return a.cwiseProduct(x).sum(); }

  Eigen::MatrixXd project(const Eigen::MatrixXd& x) const {
    const double value = inner(x);
    if (value >= bound) return x;
    return x + ((bound - value) / norm_sq) * a;
  }
};

VolumeHalfspace make_halfspace(const Graph& g, double b) {
  VolumeHalfspace h;
  h.a = volume_constraint_matrix(g);
  const double m = g.edge_count();
  h.bound = b * m * m / g.vertex_count();
  h.norm_sq = h.a.squaredNorm();
  return h;
}

}  // namespace

void SdpConfig::validate() const {
  if (lambda <= 0.0) throw Error("sdp: lambda must be positive");
  if (max_iterations < 1) throw Error("sdp: max_iterations must be >= 1");
  if (step_size <= 0.0) throw Error("sdp: step_size must be positive");
  if (feasibility_tolerance <= 0.0 || objective_tolerance <= 0.0) {
    throw Error("sdp: tolerances must be positive");
  }
}

double sdp_objective(const Eigen::MatrixXd& x, const Graph& g, double lambda) {
  const int n = g.vertex_count();
  if (x.rows() != n || x.cols() != n) {
    throw DimensionMismatchError("objective: matrix is " + std::to_string(x.rows()) + "x" +
                                 std::to_string(x.cols()) + ", graph has n=" + std::to_string(n));
  }
  const auto [laplacian, degrees] = laplacian_and_degrees(g);
  const Eigen::VectorXd d = degrees.diagonal();
  const double cut_term = laplacian.cwiseProduct(x).sum();
  // ||D^{1/2} X D^{1/2}||_F^2 = sum_ij d_i d_j X_ij^2
  const Eigen::MatrixXd weights = d * d.transpose();
  const double frob_term = weights.cwiseProduct(x.cwiseProduct(x)).sum();
  return cut_term + (static_cast<double>(n) / (lambda * g.edge_count())) * frob_term;
}

FeasibilityResiduals feasibility_residuals(const Eigen::MatrixXd& x, const Graph& g, double b) {
  const int n = g.vertex_count();
  FeasibilityResiduals r;
  r.diag_residual = (x.diagonal().array() - 1.0 / n).abs().maxCoeff();
  r.min_entry = x.minCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(symmetrized(x));
  r.min_eigenvalue = eig.eigenvalues().minCoeff();
  const VolumeHalfspace h = make_halfspace(g, b);
  r.volume_slack = std::max(0.0, h.bound - h.inner(x));
  return r;
}

ProjectionResult project_feasible(const Eigen::MatrixXd& x, const Graph& g, double b, int cycles,
                                  double tolerance) {
  const int n = g.vertex_count();
  if (x.rows() != n || x.cols() != n) {
    throw DimensionMismatchError("project_feasible: matrix/graph size mismatch");
  }
  const VolumeHalfspace halfspace = make_halfspace(g, b);

  Eigen::MatrixXd current = symmetrized(x);
  // Dykstra correction terms, one per constraint set.
  Eigen::MatrixXd corr_psd = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd corr_nonneg = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd corr_diag = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd corr_volume = Eigen::MatrixXd::Zero(n, n);

  ProjectionResult result;
  for (int cycle = 0; cycle < cycles; ++cycle) {
    const Eigen::MatrixXd before = current;

    Eigen::MatrixXd y = current + corr_psd;
    current = project_psd(y);
    corr_psd = y - current;

    y = current + corr_nonneg;
    current = y.cwiseMax(0.0);
    corr_nonneg = y - current;

    y = current + corr_diag;
    current = y;
    current.diagonal().setConstant(1.0 / n);
    corr_diag = y - current;

    y = current + corr_volume;
    current = halfspace.project(y);
    corr_volume = y - current;

    const double delta = (current - before).norm();
    if (delta <= tolerance * 0.01) break;
  }

  result.matrix = current;
  result.residuals = feasibility_residuals(current, g, b);
  result.converged = result.residuals.within(std::max(tolerance, 1e-12));
  return result;
}

GramSolution solve_sdp(const Graph& g, const SdpConfig& cfg) {
  cfg.validate();
  const int n = g.vertex_count();
  const double m = g.edge_count();
  const auto [laplacian, degrees] = laplacian_and_degrees(g);
  const Eigen::VectorXd d = degrees.diagonal();
  const Eigen::MatrixXd degree_outer = d * d.transpose();
  const double frob_coeff = static_cast<double>(n) / (cfg.lambda * m);

  const auto objective_of = [&](const Eigen::MatrixXd& x) {
    return laplacian.cwiseProduct(x).sum() +
           frob_coeff * degree_outer.cwiseProduct(x.cwiseProduct(x)).sum();
  };
  const auto gradient_of = [&](const Eigen::MatrixXd& x) {
    return Eigen::MatrixXd(laplacian + 2.0 * frob_coeff * degree_outer.cwiseProduct(x));
  };
  const auto project = [&](const Eigen::MatrixXd& x) {
    return project_feasible(x, g, cfg.b, cfg.projection_cycles, cfg.feasibility_tolerance);
  };

  GramSolution best;
  ProjectionResult proj = project((1.0 / n) * Eigen::MatrixXd::Identity(n, n));
  Eigen::MatrixXd x = proj.matrix;
  double fx = objective_of(x);

  best.x1 = x;
  best.objective_value = fx;
  best.feasibility = proj.residuals;
  best.converged = proj.converged;
  best.objective_history.push_back(fx);

  double step = cfg.step_size;
  int stall_count = 0;
  int iter = 0;
  for (; iter < cfg.max_iterations; ++iter) {
    const Eigen::MatrixXd grad = gradient_of(x);
    bool accepted = false;
    Eigen::MatrixXd candidate;
    ProjectionResult candidate_proj;
    double f_candidate = 0.0;

    double t = step;
    for (int backtrack = 0; backtrack < 60 && t > 1e-18; ++backtrack) {
      candidate_proj = project(x - t * grad);
      candidate = candidate_proj.matrix;
      f_candidate = objective_of(candidate);
      const double move = (candidate - x).squaredNorm();
      // A projection that lands back on x makes no progress; keep halving.
      if (move > 1e-28 && f_candidate <= fx - 1e-4 * move / std::max(t, 1e-12)) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;

    const double previous = fx;
    x = candidate;
    fx = f_candidate;
    best.objective_history.push_back(fx);
    step = std::min(t * 1.5, cfg.step_size * 16.0);

    if (candidate_proj.converged &&
        (fx < best.objective_value || !best.converged)) {
      best.x1 = x;
      best.objective_value = fx;
      best.feasibility = candidate_proj.residuals;
      best.converged = true;
    }

    const double rel_change = std::fabs(previous - fx) / std::max(1.0, std::fabs(previous));
    stall_count = rel_change <= cfg.objective_tolerance ? stall_count + 1 : 0;
    if (stall_count >= 3) {
      ++iter;
      break;
    }
  }

  // Final polish: pull the incumbent tight against the constraint set.
  ProjectionResult polish =
      project_feasible(best.converged ? best.x1 : x, g, cfg.b, 4 * cfg.projection_cycles,
                       cfg.feasibility_tolerance);
  const double f_polished = objective_of(polish.matrix);
  if (polish.converged || !best.converged) {
    best.x1 = polish.matrix;
    best.objective_value = f_polished;
    best.feasibility = polish.residuals;
    best.converged = polish.converged;
  }

  best.iterations = iter;
  return best;
}

}  // namespace pgc
