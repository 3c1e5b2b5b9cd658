#pragma once

#include <Eigen/Core>
#include <functional>

#include "twophase/harmonics.hpp"
#include "twophase/quadrature.hpp"
#include "twophase/types.hpp"

namespace twophase {

/// Star-shaped boundary rho(theta) = base_radius + perturbation(theta),
/// a graph over the sphere. In dim >= 3 the boundary is a surface of
/// revolution about the x_1 axis and theta is the polar angle; points and
/// normals are returned as meridian representatives in the (x_1, x_2) plane.
struct BoundaryCurve {
  int dim = 2;
  double base_radius = 1.0;
  ShapeCoeffs perturbation;

  static BoundaryCurve ball(int dim, double radius);
  static BoundaryCurve perturbed(double base_radius, const ShapeCoeffs& coeffs);

  double radius(double theta) const;
  Derivs radius_derivs(double theta) const; // rho, rho', rho'' in theta

  Eigen::VectorXd point(double theta) const;
  Eigen::VectorXd outward_normal(double theta) const;

  /// Tangential divergence of the outward normal; (N-1)/rho on a sphere.
  double mean_curvature(double theta) const;

  /// dS relative to the sphere measure: rho^{N-2} sqrt(rho^2 + rho'^2).
  double metric_factor(double theta) const;

  /// Star-shapedness: rho > 0 at the rule's nodes.
  void validate(const QuadratureRule& rule) const;
};

double volume(const BoundaryCurve& curve, const QuadratureRule& rule);
double surface_area(const BoundaryCurve& curve, const QuadratureRule& rule);
double surface_integral(const BoundaryCurve& curve, const QuadratureRule& rule,
                        const std::function<double(double)>& integrand);

/// Unnormalized first moment int_Omega x of the enclosed domain.
Eigen::VectorXd barycenter(const BoundaryCurve& curve,
                           const QuadratureRule& rule);

struct TranslatedBallGraph {
  ShapeCoeffs coeffs; // zero-mean part in the truncated basis
  double mean = 0.0;  // removed mean (handled by callers as a base shift)
};

/// Graph over the sphere of the ball of radius base_radius centered at
/// offset: rho(theta) = y.th + sqrt(base^2 - |y|^2 + (y.th)^2).
/// For dim >= 3 the offset must lie on the x_1 axis.
TranslatedBallGraph translated_ball_graph(int dim,
                                          const Eigen::VectorXd& offset,
                                          double base_radius, int truncation);

} // namespace twophase
