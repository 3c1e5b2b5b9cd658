#pragma once

#include <vector>

#include "twophase/types.hpp"

namespace twophase {

/// Quadrature over the unit sphere S^{N-1} for axisymmetric integrands.
///
/// dim == 2: uniform (trapezoid) nodes theta_j in [0, 2pi), spectrally
/// accurate for periodic integrands; sum w_j f(theta_j) ~ int_{S^1} f dtheta.
///
/// dim >= 3: Gauss nodes in t = cos(theta) for the weight (1-t^2)^{(N-3)/2}
/// (Gauss-Legendre for N = 3), with the |S^{N-2}| azimuthal factor folded
/// into the weights; sum w_j f(theta_j) ~ int_{S^{N-1}} f(polar angle) dS.
struct QuadratureRule {
  int dim = 2;
  std::vector<double> nodes;     // polar angle theta
  std::vector<double> cos_nodes; // cos(theta), kept exact for zonal rules
  std::vector<double> weights;   // positive, sum = |S^{N-1}|
  int design_order = 0; // 2D: max resolved Fourier mode; zonal: poly exactness in t

  size_t size() const { return nodes.size(); }
  double integrate(const std::vector<double>& values) const;
};

QuadratureRule sphere_quadrature(int dim, int node_count);

/// Node counts oversample the shape truncation K by a wide margin so that
/// quadrature error stays negligible against solver tolerances.
int default_node_count(int dim, int truncation);
QuadratureRule default_quadrature(int dim, int truncation);

double sphere_surface_area(int dim); // |S^{N-1}|
double unit_ball_volume(int dim);    // |B_1|

} // namespace twophase
