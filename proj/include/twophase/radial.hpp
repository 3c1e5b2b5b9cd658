#pragma once

#include <vector>

#include "twophase/harmonics.hpp"
#include "twophase/types.hpp"

namespace twophase {

/// Solution of the concentric configuration at radius r:
/// (1-R^2)/(2N) + (R^2-r^2)/(2N sigma) inside the core, (1-r^2)/(2N) outside.
double trivial_solution_value(const ProblemParams& params, double r);

/// Proportionality constant of the concentric pair: (N-1)/N for every sigma.
double trivial_d(const ProblemParams& params);

/// Radial coefficients of the degree-k shape-derivative mode (two-phase):
/// inner profile B r^k, outer profile C r^{2-N-k} + D r^k, common
/// denominator F = N(N-2+k+k*sigma)R^{2-N-2k} + kN(1-sigma) > 0.
struct ModeCoefficients {
  int degree = 1;
  double inner = 0.0;       // B_k
  double outer_decay = 0.0; // C_k
  double outer_grow = 0.0;  // D_k
  double denom = 0.0;       // F
};

ModeCoefficients mode_coefficients(int k, const ProblemParams& params);

/// Degree-k shape-derivative radial profile with first and second
/// r-derivatives; r^k/N everywhere in the one-phase case.
Derivs shape_derivative_mode(int k, const ProblemParams& params, double r);

/// Eigenvalue of the linearized overdetermined map on degree-k perturbations
/// of the outer boundary.
double linearized_eigenvalue(int k, const ProblemParams& params);

/// One-phase limit k(k-1)/N.
double linearized_eigenvalue_one_phase(int k, int dim);

/// Conductivity at which the degree-k eigenvalue vanishes, with the
/// nondegeneracy flag k(k-1)R^{2-N-2k} < (k+N-2)(k+N-1) and the derivative
/// of the eigenvalue in sigma at the critical point.
struct CriticalValue {
  int degree = 0;
  double value = 0.0; // s_k, defined only when admissible
  bool admissible = false;
  double slope = 0.0; // d beta_k / d sigma at s_k, defined only when admissible
};

CriticalValue critical_conductivity(int k, int dim, double core_radius);

/// All admissible critical values for 2 <= k <= kmax, sorted by degree.
std::vector<CriticalValue> critical_spectrum(int dim, double core_radius,
                                             int kmax = 32);

/// Conductivity at which the degree-1 (translation) eigenvalue vanishes,
/// located by a bracketed scan; reported without interpretation.
double beta_one_zero_sigma(int dim, double core_radius);

} // namespace twophase
