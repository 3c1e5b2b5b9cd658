#include "twophase/overdet.hpp"

#include <cmath>

namespace twophase {

namespace {

QuadratureRule boundary_rule(const SpectralSolution& sol) {
  return default_quadrature(sol.params().dim,
                            sol.discretization().truncation);
}

std::vector<double> normal_derivatives(const SpectralSolution& sol,
                                       const BoundaryCurve& curve,
                                       const QuadratureRule& rule,
                                       Phase phase) {
  std::vector<double> out(rule.size());
  for (size_t j = 0; j < rule.size(); ++j) {
    const double theta = rule.nodes[j];
    const Eigen::VectorXd x = curve.point(theta);
    const Eigen::VectorXd n = curve.outward_normal(theta);
    out[j] = sol.gradient(x, phase).dot(n);
  }
  return out;
}

} // namespace

double second_normal_derivative(const SpectralSolution& sol,
                                const BoundaryCurve& curve, double theta) {
  const Eigen::VectorXd x = curve.point(theta);
  const Eigen::VectorXd n = curve.outward_normal(theta);
  return n.dot(sol.hessian(x, Phase::Outer) * n);
}

OverdetResidual overdet_residual(const SpectralSolution& sol) {
  const BoundaryCurve& curve = sol.outer_boundary();
  const QuadratureRule rule = boundary_rule(sol);

  OverdetResidual res;
  res.thetas = rule.nodes;
  res.nodal.resize(rule.size());
  double wsum = 0.0, wmean = 0.0;
  for (size_t j = 0; j < rule.size(); ++j) {
    res.nodal[j] = second_normal_derivative(sol, curve, rule.nodes[j]);
    const double w = rule.weights[j] * curve.metric_factor(rule.nodes[j]);
    wsum += w;
    wmean += w * res.nodal[j];
  }
  res.mean = wmean / wsum;
  res.projected.resize(rule.size());
  for (size_t j = 0; j < rule.size(); ++j) {
    res.projected[j] = res.nodal[j] - res.mean;
    res.sup = std::max(res.sup, std::abs(res.projected[j]));
  }
  // Modal reporting stays in the flat sphere basis; degree >= 1 coefficients
  // do not depend on the mean convention.
  res.modal =
      analyze(res.nodal, rule, sol.discretization().truncation).coeffs;
  res.d = extract_d(sol);
  return res;
}

OverdetResidual overdet_residual(const ProblemParams& params,
                                 const ShapeCoeffs& f, const ShapeCoeffs& g,
                                 const Discretization& disc) {
  return overdet_residual(solve_transmission(params, f, g, disc));
}

DEstimators extract_d(const SpectralSolution& sol) {
  const BoundaryCurve& curve = sol.outer_boundary();
  const QuadratureRule rule = boundary_rule(sol);
  const auto dn = normal_derivatives(sol, curve, rule, Phase::Outer);

  DEstimators est;
  double wsum = 0.0, acc = 0.0, inv_h = 0.0;
  double lo = 0.0, hi = 0.0;
  for (size_t j = 0; j < rule.size(); ++j) {
    const double h = curve.mean_curvature(rule.nodes[j]);
    if (!(h > 0.0))
      throw NumericalError(
          "extract_d: mean curvature not positive at theta = " +
          std::to_string(rule.nodes[j]));
    const double w = rule.weights[j] * curve.metric_factor(rule.nodes[j]);
    const double pointwise = -h * dn[j];
    wsum += w;
    acc += w * pointwise;
    inv_h += w / h;
    if (j == 0) lo = hi = pointwise;
    lo = std::min(lo, pointwise);
    hi = std::max(hi, pointwise);
  }
  est.pointwise_mean = acc / wsum;
  est.spread = hi - lo;
  est.integral = volume(curve, rule) / inv_h;
  return est;
}

double heintze_karcher_gap(const BoundaryCurve& curve,
                           const QuadratureRule& rule) {
  const double inv_h = surface_integral(curve, rule, [&](double theta) {
    const double h = curve.mean_curvature(theta);
    if (!(h > 0.0))
      throw NumericalError(
          "heintze_karcher_gap: mean curvature not positive at theta = " +
          std::to_string(theta));
    return 1.0 / h;
  });
  const double n = curve.dim;
  return inv_h - n / (n - 1.0) * volume(curve, rule);
}

double divergence_identity_gap(const SpectralSolution& sol) {
  const BoundaryCurve& curve = sol.outer_boundary();
  const QuadratureRule rule = boundary_rule(sol);
  const auto dn = normal_derivatives(sol, curve, rule, Phase::Outer);
  double flux = 0.0;
  for (size_t j = 0; j < rule.size(); ++j)
    flux += rule.weights[j] * curve.metric_factor(rule.nodes[j]) * dn[j];
  return volume(curve, rule) + flux;
}

double interface_flux_gap(const SpectralSolution& sol) {
  const BoundaryCurve& curve = sol.core_boundary();
  const QuadratureRule rule = boundary_rule(sol);
  const double sigma = sol.params().sigma;
  double jump = 0.0;
  for (size_t j = 0; j < rule.size(); ++j) {
    const double theta = rule.nodes[j];
    const Eigen::VectorXd x = curve.point(theta);
    const Eigen::VectorXd n = curve.outward_normal(theta);
    const double d = sigma * sol.gradient(x, Phase::Inner).dot(n) -
                     sol.gradient(x, Phase::Outer).dot(n);
    jump += rule.weights[j] * curve.metric_factor(theta) * d;
  }
  return jump;
}

SerrinResidual serrin_residual(const SpectralSolution& sol) {
  const BoundaryCurve& curve = sol.outer_boundary();
  const QuadratureRule rule = boundary_rule(sol);
  const auto dn = normal_derivatives(sol, curve, rule, Phase::Outer);
  double wsum = 0.0, acc = 0.0;
  for (size_t j = 0; j < rule.size(); ++j) {
    const double w = rule.weights[j] * curve.metric_factor(rule.nodes[j]);
    wsum += w;
    acc += w * dn[j];
  }
  SerrinResidual res;
  res.c = volume(curve, rule) / wsum;
  const double mean = acc / wsum;
  res.projected.resize(rule.size());
  for (size_t j = 0; j < rule.size(); ++j) {
    res.projected[j] = dn[j] - mean;
    res.sup = std::max(res.sup, std::abs(res.projected[j]));
  }
  return res;
}

ShapeCoeffs fd_linearization(const ProblemParams& params,
                             const ShapeCoeffs& direction, double step,
                             const Discretization& disc, FdScheme scheme) {
  if (!(step > 0.0)) throw InputError("fd_linearization: step must be > 0");
  auto scaled = [&](double s) {
    ShapeCoeffs g(direction.dim(), direction.truncation());
    for (const Mode& m : direction.modes()) g.set(m.degree, m.kind, s * m.value);
    return g;
  };
  const ShapeCoeffs none(params.dim, 0);
  const OverdetResidual rp = overdet_residual(params, none, scaled(step), disc);

  ShapeCoeffs out(params.dim, disc.truncation);
  auto assign = [&](const ShapeCoeffs& hi, const ShapeCoeffs& lo, double den) {
    for (int k = 1; k <= disc.truncation; ++k) {
      if (params.dim == 2) {
        out.set(k, ModeKind::Cos,
                (hi.coefficient(k, ModeKind::Cos) -
                 lo.coefficient(k, ModeKind::Cos)) / den);
        out.set(k, ModeKind::Sin,
                (hi.coefficient(k, ModeKind::Sin) -
                 lo.coefficient(k, ModeKind::Sin)) / den);
      } else {
        out.set(k, ModeKind::Zonal,
                (hi.coefficient(k, ModeKind::Zonal) -
                 lo.coefficient(k, ModeKind::Zonal)) / den);
      }
    }
  };
  if (scheme == FdScheme::Forward) {
    const OverdetResidual r0 = overdet_residual(params, none, none, disc);
    assign(rp.modal, r0.modal, step);
    return out;
  }
  const OverdetResidual rm = overdet_residual(params, none, scaled(-step), disc);
  assign(rp.modal, rm.modal, 2.0 * step);
  return out;
}

std::vector<double> surface_laplacian(const BoundaryCurve& curve,
                                      const QuadratureRule& rule,
                                      const std::vector<double>& values,
                                      int truncation) {
  const AnalysisResult series = analyze(values, rule, truncation);
  std::vector<double> out(rule.size());
  const int n = curve.dim;
  for (size_t j = 0; j < rule.size(); ++j) {
    const double theta = rule.nodes[j];
    const Derivs phi = synthesize_derivs(series.coeffs, theta);
    const Derivs rho = curve.radius_derivs(theta);
    const double jac2 = rho.value * rho.value + rho.d1 * rho.d1;
    const double jac_ratio = (rho.value * rho.d1 + rho.d1 * rho.d2) / jac2;
    double meridian = 0.0;
    if (n > 2) {
      const double st = std::sin(theta);
      const double cot_phi1 =
          std::abs(st) < 1e-9 ? phi.d2 : std::cos(theta) / st * phi.d1;
      meridian = (n - 2) * (rho.d1 / rho.value * phi.d1 + cot_phi1);
    }
    out[j] = (phi.d2 + meridian - phi.d1 * jac_ratio) / jac2;
  }
  return out;
}

} // namespace twophase
