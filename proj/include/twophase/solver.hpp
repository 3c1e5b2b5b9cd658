#pragma once

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "twophase/geometry.hpp"
#include "twophase/types.hpp"

namespace twophase {

struct Discretization {
  int truncation = 16;  // K, angular truncation of the expansions
  int collocation = 64; // M, collocation nodes per interface
  double rank_tolerance = 1e-12;
  double residual_warn = 1e-8;

  void validate() const; // requires M >= 2 (K+1)
};

/// Sup defects measured on a verification grid 4x finer than collocation.
struct ResidualReport {
  double dirichlet = 0.0;       // sup |u| on the outer boundary
  double interface_value = 0.0; // sup |[u]| on the core boundary
  double interface_flux = 0.0;  // sup |[sigma du/dn]| on the core boundary
  bool warning = false;         // overall() above the warn threshold

  double overall() const;
};

enum class Phase { Auto, Inner, Outer };

/// Harmonic-expansion solution of the two-phase transmission problem
///   -sigma_c Lap u = 1 in D_f,   -Lap u = 1 in Omega_g \ D_f,
///   [u] = [sigma du/dn] = 0 on dD_f,   u = 0 on dOmega_g.
/// The PDE is satisfied exactly by construction (particular term -|x|^2/(2N
/// sigma_phase) plus harmonics); only the boundary conditions carry defects.
class SpectralSolution {
public:
  double value(const Eigen::VectorXd& x, Phase phase = Phase::Auto) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x,
                           Phase phase = Phase::Auto) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x,
                          Phase phase = Phase::Auto) const;

  const ProblemParams& params() const { return params_; }
  const Discretization& discretization() const { return disc_; }
  const ResidualReport& residual() const { return residual_; }
  const BoundaryCurve& core_boundary() const; // only when two-phase
  const BoundaryCurve& outer_boundary() const { return outer_; }

  /// Expansion coefficients of one angular family, indexed by degree.
  /// 2D families are cos and sin; dim >= 3 has a single zonal family.
  /// The degree-0 outer_decay entry multiplies log(r) in 2D and r^{2-N}
  /// in higher dimension.
  struct FamilyCoeffs {
    ModeKind kind = ModeKind::Cos;
    std::vector<double> inner;       // degree 0.. (absent in one-phase)
    std::vector<double> outer_grow;  // degree 0..
    std::vector<double> outer_decay; // degree 0.. (absent in one-phase)
  };
  const std::vector<FamilyCoeffs>& families() const { return families_; }

private:
  friend SpectralSolution solve_transmission(const ProblemParams&,
                                             const ShapeCoeffs&,
                                             const ShapeCoeffs&,
                                             const Discretization&);
  ProblemParams params_;
  Discretization disc_;
  BoundaryCurve core_;
  BoundaryCurve outer_;
  bool two_phase_ = false;
  std::vector<FamilyCoeffs> families_;
  ResidualReport residual_;

  Phase classify(const Eigen::VectorXd& x, Phase requested, double& r) const;
};

/// Assemble and solve the boundary-collocation least-squares system.
/// Columns are scaled to unit max-magnitude over the collocation set and the
/// factorization is rank-tolerant; a defect report from the verification
/// grid is always attached.
SpectralSolution solve_transmission(const ProblemParams& params,
                                    const ShapeCoeffs& f, const ShapeCoeffs& g,
                                    const Discretization& disc);

} // namespace twophase
