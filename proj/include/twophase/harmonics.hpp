#pragma once

#include <vector>

#include "twophase/quadrature.hpp"
#include "twophase/types.hpp"

namespace twophase {

/// Eigenvalue of -Delta_tau on degree-k spherical harmonics: k(N+k-2).
long long laplace_beltrami_eigenvalue(int k, int dim);

/// Dimension of the degree-k harmonic eigenspace (reporting only).
long long harmonic_multiplicity(int k, int dim);

/// L2(S^{N-1})-normalized zonal harmonic of degree k at t = cos(polar angle).
/// dim == 2 gives cos(k*theta)/sqrt(pi); dim == 3 is Legendre up to norm.
double zonal_eval(int k, int dim, double t);

/// Value of the L2-normalized zonal harmonic at the pole t = 1.
double zonal_pole_value(int k, int dim);

struct Derivs {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Pole-normalized zonal basis function \hat Y_k (value 1 at theta = 0)
/// with derivatives in the polar angle theta.
Derivs zonal_basis_theta_derivs(int k, int dim, double theta);

/// Pole-normalized zonal basis values with derivatives in t = cos(theta),
/// all degrees 0..kmax at once (dim >= 3).
void zonal_basis_table(int dim, int kmax, double t, std::vector<Derivs>& out);

/// Basis function behind a single ShapeCoeffs mode, with theta-derivatives.
Derivs shape_basis_eval(int dim, int degree, ModeKind kind, double theta);

double synthesize_at(const ShapeCoeffs& coeffs, double theta);
Derivs synthesize_derivs(const ShapeCoeffs& coeffs, double theta);
std::vector<double> synthesize(const ShapeCoeffs& coeffs,
                               const std::vector<double>& thetas);

struct AnalysisResult {
  ShapeCoeffs coeffs; // degrees 1..truncation in the ShapeCoeffs basis
  double mean = 0.0;  // discarded degree-0 component (mean over the sphere)
};

/// Expand nodal values (sampled at the rule's nodes) into ShapeCoeffs.
/// Rejects truncations the rule cannot resolve without aliasing.
AnalysisResult analyze(const std::vector<double>& values,
                       const QuadratureRule& rule, int truncation);

} // namespace twophase
