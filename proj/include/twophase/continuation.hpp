#pragma once

#include <Eigen/Core>
#include <vector>

#include "twophase/overdet.hpp"
#include "twophase/radial.hpp"
#include "twophase/solver.hpp"

namespace twophase {

struct NewtonConfig {
  double tolerance = 1e-9; // sup-norm target for the projected residual
  int max_iterations = 25;
  enum class Jacobian { DiagonalThenFd, DiagonalOnly, FullFd };
  Jacobian jacobian = Jacobian::DiagonalThenFd;
  double fd_step = 1e-5;
  double damping = 1.0;
  double sigma_margin = 1e-3; // refused distance to critical conductivities

  void validate() const;
};

struct GSolveResult {
  ShapeCoeffs g;
  double residual = 0.0;
  int iterations = 0;
  DEstimators d;
  std::vector<double> history; // residual per iteration
};

/// Given a small core perturbation f and non-critical conductivity, find the
/// outer perturbation g making (D_f, Omega_g) a solution of the
/// curvature-overdetermined problem. Quasi-Newton preconditioned by the
/// exact diagonal linearization 1/beta_k, with a full finite-difference
/// Jacobian fallback when contraction stalls.
GSolveResult solve_for_g(const ProblemParams& params, const ShapeCoeffs& f,
                         const Discretization& disc,
                         const NewtonConfig& config = {});
GSolveResult solve_for_g(const ProblemParams& params, const ShapeCoeffs& f,
                         const Discretization& disc, const NewtonConfig& config,
                         const ShapeCoeffs& initial_guess);

/// Degrees spanning the symmetry-invariant subspace used for branch tracing:
/// multiples of k (cosine only) in 2D, all zonal degrees in dim >= 3.
std::vector<int> invariant_degrees(int dim, int k, int truncation);

/// Projection onto the invariant subspace (zeroes everything else).
ShapeCoeffs symmetry_reduce(const ShapeCoeffs& coeffs, int k);

struct BranchPoint {
  double eps = 0.0;
  double sigma = 0.0;
  double lambda = 0.0; // sigma - s_k
  ShapeCoeffs g;
  double residual = 0.0;
  double d = 0.0; // integral estimator
};

struct BranchResult {
  int degree = 0;
  double critical_sigma = 0.0;
  std::vector<BranchPoint> points;
  bool completed = false;
  std::string message;
};

/// Trace the symmetry-breaking branch through (g, sigma) = (0, s_k): for each
/// amplitude eps solve the augmented system {projected residual = 0 on the
/// invariant subspace, degree-k coefficient = eps} for (g, sigma).
/// A Newton failure truncates the branch and reports partial results.
BranchResult trace_branch(int dim, double core_radius, int k,
                          const std::vector<double>& eps_schedule,
                          const Discretization& disc,
                          const NewtonConfig& config = {});

struct OnePhaseResult {
  ShapeCoeffs g;
  double residual = 0.0;
  int iterations = 0;
  Eigen::VectorXd barycenter;
};

/// One-phase barycenter-augmented system: find g with Bar(Omega_g) equal to
/// the target and the degree >= 2 part of the projected residual zero.
/// The degree-1 (translation) modes are pinned by the barycenter equations.
/// For dim >= 3 the target must lie on the x_1 axis.
OnePhaseResult one_phase_augmented_solve(const Eigen::VectorXd& barycenter_target,
                                         int dim, const Discretization& disc,
                                         const NewtonConfig& config = {});

} // namespace twophase
