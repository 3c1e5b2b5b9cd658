#include "twophase/continuation.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "twophase/parallel.hpp"

namespace twophase {

namespace {

struct ModeRef {
  int degree;
  ModeKind kind;
};

std::vector<ModeRef> unknown_modes(int dim, bool with_sine, int truncation,
                                   int min_degree = 1) {
  std::vector<ModeRef> modes;
  for (int k = min_degree; k <= truncation; ++k) {
    if (dim == 2) {
      modes.push_back({k, ModeKind::Cos});
      if (with_sine) modes.push_back({k, ModeKind::Sin});
    } else {
      modes.push_back({k, ModeKind::Zonal});
    }
  }
  return modes;
}

std::string history_string(const std::vector<double>& history) {
  std::ostringstream os;
  for (size_t i = 0; i < history.size(); ++i)
    os << (i ? ", " : "") << history[i];
  return os.str();
}

} // namespace

void NewtonConfig::validate() const {
  if (!(tolerance >= 1e-12))
    throw InputError("NewtonConfig: tolerance must stay above the solver "
                     "residual floor (>= 1e-12)");
  if (max_iterations < 1)
    throw InputError("NewtonConfig: max_iterations must be >= 1");
  if (!(fd_step > 0.0)) throw InputError("NewtonConfig: fd_step must be > 0");
  if (!(damping > 0.0 && damping <= 1.0))
    throw InputError("NewtonConfig: damping must lie in (0,1]");
  if (!(sigma_margin >= 0.0))
    throw InputError("NewtonConfig: sigma_margin must be >= 0");
}

GSolveResult solve_for_g(const ProblemParams& params, const ShapeCoeffs& f,
                         const Discretization& disc,
                         const NewtonConfig& config) {
  return solve_for_g(params, f, disc, config,
                     ShapeCoeffs(params.dim, disc.truncation));
}

GSolveResult solve_for_g(const ProblemParams& params, const ShapeCoeffs& f,
                         const Discretization& disc, const NewtonConfig& config,
                         const ShapeCoeffs& initial_guess) {
  params.validate();
  disc.validate();
  config.validate();

  if (!params.one_phase()) {
    for (const CriticalValue& cv :
         critical_spectrum(params.dim, params.core_radius, 32)) {
      if (std::abs(params.sigma - cv.value) <= config.sigma_margin) {
        std::ostringstream os;
        os << "solve_for_g: sigma = " << params.sigma
           << " is within the margin of the critical value s_" << cv.degree
           << " = " << cv.value;
        throw InputError(os.str());
      }
    }
  }

  const int K = disc.truncation;
  const bool with_sine = params.dim == 2 && !f.reflection_symmetric();
  const auto modes = unknown_modes(params.dim, with_sine, K);

  std::vector<double> beta(K + 1, 0.0);
  for (int k = 1; k <= K; ++k) {
    beta[k] = linearized_eigenvalue(k, params);
    if (std::abs(beta[k]) < 1e-8) {
      std::ostringstream os;
      os << "solve_for_g: linearized map is nearly singular on degree " << k
         << " (eigenvalue " << beta[k] << "); the iteration has no "
         << "invertible preconditioner there";
      throw InputError(os.str());
    }
  }

  ShapeCoeffs g(params.dim, K);
  for (const Mode& m : initial_guess.modes()) g.set(m.degree, m.kind, m.value);

  GSolveResult out;
  bool use_fd = config.jacobian == NewtonConfig::Jacobian::FullFd;
  int stall = 0;
  double prev_sup = 0.0;

  for (int iter = 0; iter <= config.max_iterations; ++iter) {
    const OverdetResidual res = overdet_residual(params, f, g, disc);
    out.history.push_back(res.sup);
    if (res.sup <= config.tolerance) {
      out.g = g;
      out.residual = res.sup;
      out.iterations = iter;
      out.d = res.d;
      return out;
    }
    if (iter == config.max_iterations) break;

    if (!use_fd && iter > 0 && res.sup > 0.5 * prev_sup) {
      if (++stall >= 2 &&
          config.jacobian == NewtonConfig::Jacobian::DiagonalThenFd)
        use_fd = true;
    }
    prev_sup = res.sup;

    if (!use_fd) {
      for (const ModeRef& m : modes)
        g.add(m.degree, m.kind,
              -config.damping * res.modal.coefficient(m.degree, m.kind) /
                  beta[m.degree]);
      continue;
    }

    const int n = static_cast<int>(modes.size());
    Eigen::MatrixXd J(n, n);
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i)
      rhs[i] = -res.modal.coefficient(modes[i].degree, modes[i].kind);
    parallel_for(n, [&](int col) {
      const double h = config.fd_step;
      ShapeCoeffs gp = g, gm = g;
      gp.add(modes[col].degree, modes[col].kind, h);
      gm.add(modes[col].degree, modes[col].kind, -h);
      const OverdetResidual rp = overdet_residual(params, f, gp, disc);
      const OverdetResidual rm = overdet_residual(params, f, gm, disc);
      for (int i = 0; i < n; ++i)
        J(i, col) = (rp.modal.coefficient(modes[i].degree, modes[i].kind) -
                     rm.modal.coefficient(modes[i].degree, modes[i].kind)) /
                    (2.0 * h);
    });
    const Eigen::VectorXd delta = J.colPivHouseholderQr().solve(rhs);
    for (int i = 0; i < n; ++i)
      g.add(modes[i].degree, modes[i].kind, config.damping * delta[i]);
  }

  throw NumericalError("solve_for_g: no convergence after " +
                       std::to_string(config.max_iterations) +
                       " iterations; residual history: " +
                       history_string(out.history));
}

std::vector<int> invariant_degrees(int dim, int k, int truncation) {
  if (k < 2) throw InputError("invariant_degrees: k must be >= 2");
  std::vector<int> degrees;
  if (dim == 2) {
    for (int d = k; d <= truncation; d += k) degrees.push_back(d);
  } else {
    for (int d = 1; d <= truncation; ++d) degrees.push_back(d);
  }
  return degrees;
}

ShapeCoeffs symmetry_reduce(const ShapeCoeffs& coeffs, int k) {
  const auto degrees =
      invariant_degrees(coeffs.dim(), k, coeffs.truncation());
  ShapeCoeffs out(coeffs.dim(), coeffs.truncation());
  const ModeKind kind = coeffs.dim() == 2 ? ModeKind::Cos : ModeKind::Zonal;
  for (int d : degrees) out.set(d, kind, coeffs.coefficient(d, kind));
  return out;
}

BranchResult trace_branch(int dim, double core_radius, int k,
                          const std::vector<double>& eps_schedule,
                          const Discretization& disc,
                          const NewtonConfig& config) {
  disc.validate();
  config.validate();
  const CriticalValue cv = critical_conductivity(k, dim, core_radius);
  if (!cv.admissible) {
    std::ostringstream os;
    os << "trace_branch: (k, N, R) = (" << k << ", " << dim << ", "
       << core_radius << ") violates the nondegeneracy condition";
    throw InputError(os.str());
  }
  if (k > disc.truncation)
    throw InputError("trace_branch: k exceeds the truncation");

  const int K = disc.truncation;
  const ModeKind kind = dim == 2 ? ModeKind::Cos : ModeKind::Zonal;
  const auto degrees = invariant_degrees(dim, k, K);
  const int m = static_cast<int>(degrees.size());

  BranchResult out;
  out.degree = k;
  out.critical_sigma = cv.value;

  const ShapeCoeffs no_core(dim, 0);
  double sigma = cv.value;

  for (double eps : eps_schedule) {
    if (eps == 0.0) {
      ProblemParams params{dim, core_radius, sigma};
      const OverdetResidual res =
          overdet_residual(params, no_core, ShapeCoeffs(dim, K), disc);
      out.points.push_back({0.0, cv.value, 0.0, ShapeCoeffs(dim, K), res.sup,
                            res.d.integral});
      continue;
    }

    // Predictor: pure degree-k harmonic at the pinned amplitude, warm sigma.
    ShapeCoeffs g(dim, K);
    g.set(k, kind, eps);

    bool converged = false;
    std::vector<double> history;
    for (int iter = 0; iter < config.max_iterations; ++iter) {
      ProblemParams params{dim, core_radius, sigma};
      const OverdetResidual res = overdet_residual(params, no_core, g, disc);
      history.push_back(res.sup);
      if (res.sup <= config.tolerance) {
        out.points.push_back({eps, sigma, sigma - cv.value, g, res.sup,
                              res.d.integral});
        converged = true;
        break;
      }

      // Unknowns: sigma and the invariant coefficients other than degree k.
      Eigen::VectorXd rhs(m);
      for (int i = 0; i < m; ++i)
        rhs[i] = -res.modal.coefficient(degrees[i], kind);
      // Columns: sigma first, then the invariant coefficients other than
      // the pinned degree k.
      std::vector<int> free_degrees;
      for (int d : degrees)
        if (d != k) free_degrees.push_back(d);
      Eigen::MatrixXd J(m, m);
      parallel_for(m, [&](int col) {
        if (col == 0) {
          const double h = config.fd_step * std::max(1.0, std::abs(sigma));
          const ProblemParams pp{dim, core_radius, sigma + h};
          const ProblemParams pm{dim, core_radius, sigma - h};
          const OverdetResidual rp = overdet_residual(pp, no_core, g, disc);
          const OverdetResidual rm = overdet_residual(pm, no_core, g, disc);
          for (int i = 0; i < m; ++i)
            J(i, 0) = (rp.modal.coefficient(degrees[i], kind) -
                       rm.modal.coefficient(degrees[i], kind)) /
                      (2.0 * h);
          return;
        }
        const int d = free_degrees[col - 1];
        const double h = config.fd_step;
        ShapeCoeffs gp = g, gm = g;
        gp.add(d, kind, h);
        gm.add(d, kind, -h);
        const ProblemParams params_loc{dim, core_radius, sigma};
        const OverdetResidual rp = overdet_residual(params_loc, no_core, gp, disc);
        const OverdetResidual rm = overdet_residual(params_loc, no_core, gm, disc);
        for (int i = 0; i < m; ++i)
          J(i, col) = (rp.modal.coefficient(degrees[i], kind) -
                       rm.modal.coefficient(degrees[i], kind)) /
                      (2.0 * h);
      });

      const Eigen::VectorXd delta = J.colPivHouseholderQr().solve(rhs);
      sigma += config.damping * delta[0];
      for (size_t i = 0; i < free_degrees.size(); ++i)
        g.add(free_degrees[i], kind, config.damping * delta[i + 1]);
    }

    if (!converged) {
      out.completed = false;
      std::ostringstream os;
      os << "trace_branch: Newton failed at eps = " << eps
         << "; residual history: " << history_string(history);
      out.message = os.str();
      return out;
    }
  }
  out.completed = true;
  return out;
}

OnePhaseResult one_phase_augmented_solve(
    const Eigen::VectorXd& barycenter_target, int dim,
    const Discretization& disc, const NewtonConfig& config) {
  disc.validate();
  config.validate();
  if (barycenter_target.size() != dim)
    throw InputError("one_phase_augmented_solve: target size != dim");
  if (dim >= 3)
    for (int i = 1; i < dim; ++i)
      if (barycenter_target[i] != 0.0)
        throw InputError(
            "one_phase_augmented_solve: dim >= 3 targets must lie on the "
            "x_1 axis");

  const ProblemParams params{dim, 0.0, 1.0};
  const int K = disc.truncation;
  const ShapeCoeffs no_core(dim, 0);
  const QuadratureRule bar_rule = default_quadrature(dim, K);
  const int nbar = dim == 2 ? 2 : 1;
  const auto all_modes = unknown_modes(dim, dim == 2, K);
  const int n = static_cast<int>(all_modes.size());

  auto equations = [&](const ShapeCoeffs& g, const OverdetResidual& res,
                       Eigen::VectorXd& eq) {
    const BoundaryCurve curve{dim, 1.0, g};
    const Eigen::VectorXd bar = barycenter(curve, bar_rule);
    for (int i = 0; i < nbar; ++i) eq[i] = bar[i] - barycenter_target[i];
    int row = nbar;
    for (const ModeRef& m : all_modes)
      if (m.degree >= 2) eq[row++] = res.modal.coefficient(m.degree, m.kind);
  };

  const int neq = nbar + (n - nbar);
  if (neq != n)
    throw NumericalError("one_phase_augmented_solve: system not square");

  ShapeCoeffs g(dim, K);
  OnePhaseResult out;
  for (int iter = 0; iter <= config.max_iterations; ++iter) {
    const OverdetResidual res = overdet_residual(params, no_core, g, disc);
    Eigen::VectorXd eq(n);
    equations(g, res, eq);
    const double norm = eq.cwiseAbs().maxCoeff();
    if (norm <= config.tolerance) {
      out.g = g;
      out.residual = res.sup;
      out.iterations = iter;
      out.barycenter = barycenter(BoundaryCurve{dim, 1.0, g}, bar_rule);
      return out;
    }
    if (iter == config.max_iterations) break;

    Eigen::MatrixXd J(n, n);
    parallel_for(n, [&](int col) {
      const double h = config.fd_step;
      ShapeCoeffs gp = g, gm = g;
      gp.add(all_modes[col].degree, all_modes[col].kind, h);
      gm.add(all_modes[col].degree, all_modes[col].kind, -h);
      const OverdetResidual rp = overdet_residual(params, no_core, gp, disc);
      const OverdetResidual rm = overdet_residual(params, no_core, gm, disc);
      Eigen::VectorXd eqp(n), eqm(n);
      equations(gp, rp, eqp);
      equations(gm, rm, eqm);
      J.col(col) = (eqp - eqm) / (2.0 * h);
    });
    const Eigen::VectorXd delta = J.colPivHouseholderQr().solve(-eq);
    for (int i = 0; i < n; ++i)
      g.add(all_modes[i].degree, all_modes[i].kind, config.damping * delta[i]);
  }
  throw NumericalError("one_phase_augmented_solve: no convergence after " +
                       std::to_string(config.max_iterations) + " iterations");
}

} // namespace twophase
