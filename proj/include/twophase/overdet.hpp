#pragma once

#include <vector>

#include "twophase/solver.hpp"

namespace twophase {

/// Two estimators of the proportionality constant d in du/dn = -d/H.
struct DEstimators {
  double integral = 0.0;       // |Omega| / int_{dOmega} 1/H  (quadrature-stable)
  double pointwise_mean = 0.0; // surface-weighted mean of -H du/dn
  double spread = 0.0;         // max - min of the pointwise values
};

/// Mean-projected second normal derivative on the outer boundary.
/// Vanishing projection (at solver-residual level) characterizes solutions
/// of the curvature-overdetermined problem.
struct OverdetResidual {
  std::vector<double> thetas;
  std::vector<double> nodal;     // d2u/dn2 at the nodes
  double mean = 0.0;             // removed constant, surface-measure weighted
  std::vector<double> projected; // nodal - mean
  double sup = 0.0;              // sup |projected|
  ShapeCoeffs modal;             // flat-basis expansion of the nodal values
  DEstimators d;
};

/// n.(D^2u n) at the boundary point of the curve at the given angle,
/// with the geometric outward normal.
double second_normal_derivative(const SpectralSolution& sol,
                                const BoundaryCurve& curve, double theta);

OverdetResidual overdet_residual(const SpectralSolution& sol);
OverdetResidual overdet_residual(const ProblemParams& params,
                                 const ShapeCoeffs& f, const ShapeCoeffs& g,
                                 const Discretization& disc);

/// Errors if the mean curvature is not positive somewhere on the boundary.
DEstimators extract_d(const SpectralSolution& sol);

/// int_{dOmega} 1/H - N/(N-1) |Omega|; nonnegative, zero exactly for balls.
double heintze_karcher_gap(const BoundaryCurve& curve,
                           const QuadratureRule& rule);

/// |Omega| + int_{dOmega} du/dn; vanishes for every converged state.
double divergence_identity_gap(const SpectralSolution& sol);

/// int_{dD} [sigma du/dn] dS; vanishes for every converged state.
double interface_flux_gap(const SpectralSolution& sol);

struct SerrinResidual {
  std::vector<double> projected; // mean-projected du/dn on the outer boundary
  double sup = 0.0;
  double c = 0.0; // |Omega| / |dOmega|
};

SerrinResidual serrin_residual(const SpectralSolution& sol);

enum class FdScheme { Central, Forward };

/// Directional finite-difference derivative of the overdetermined map at the
/// trivial pair, as modal coefficients (diagonal with the linearized
/// eigenvalues on harmonic directions).
ShapeCoeffs fd_linearization(const ProblemParams& params,
                             const ShapeCoeffs& direction, double step,
                             const Discretization& disc,
                             FdScheme scheme = FdScheme::Central);

/// Laplace-Beltrami of a nodal restriction on the curve, computed spectrally
/// from the analyzed series and the curve metric.
std::vector<double> surface_laplacian(const BoundaryCurve& curve,
                                      const QuadratureRule& rule,
                                      const std::vector<double>& values,
                                      int truncation);

} // namespace twophase
