#include "twophase/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

namespace twophase {

namespace {

// Gauss rule for int_{-1}^1 f(t) (1-t^2)^alpha dt via Golub-Welsch.
// Monic Jacobi(alpha,alpha) recurrence: a_k = 0,
// b_k = k(k+2*alpha) / ((2k+2*alpha+1)(2k+2*alpha-1)).
void gauss_gegenbauer(double alpha, int n, std::vector<double>& t,
                      std::vector<double>& w) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (int k = 1; k < n; ++k) {
    const double bk = k * (k + 2.0 * alpha) /
                      ((2.0 * k + 2.0 * alpha + 1.0) * (2.0 * k + 2.0 * alpha - 1.0));
    sub[k - 1] = std::sqrt(bk);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw NumericalError("quadrature: tridiagonal eigensolve failed");

  const double mu0 = std::pow(2.0, 2.0 * alpha + 1.0) *
                     std::tgamma(alpha + 1.0) * std::tgamma(alpha + 1.0) /
                     std::tgamma(2.0 * alpha + 2.0);
  t.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    t[i] = es.eigenvalues()[i];
    const double v0 = es.eigenvectors()(0, i);
    w[i] = mu0 * v0 * v0;
  }
}

} // namespace

double QuadratureRule::integrate(const std::vector<double>& values) const {
  if (values.size() != weights.size())
    throw InputError("quadrature: value count does not match rule size");
  double s = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) s += weights[i] * values[i];
  return s;
}

QuadratureRule sphere_quadrature(int dim, int node_count) {
  if (dim < 2) throw InputError("sphere_quadrature: dim must be >= 2");
  if (node_count < 4) throw InputError("sphere_quadrature: need >= 4 nodes");

  QuadratureRule rule;
  rule.dim = dim;
  if (dim == 2) {
    const double h = 2.0 * std::numbers::pi / node_count;
    rule.nodes.resize(node_count);
    rule.cos_nodes.resize(node_count);
    rule.weights.assign(node_count, h);
    for (int j = 0; j < node_count; ++j) {
      rule.nodes[j] = h * j;
      rule.cos_nodes[j] = std::cos(rule.nodes[j]);
    }
    rule.design_order = node_count / 2 - 1;
    return rule;
  }

  const double alpha = 0.5 * (dim - 3);
  std::vector<double> t, w;
  gauss_gegenbauer(alpha, node_count, t, w);
  const double azimuthal = sphere_surface_area(dim - 1);
  rule.nodes.resize(node_count);
  rule.cos_nodes = t;
  rule.weights.resize(node_count);
  for (int i = 0; i < node_count; ++i) {
    rule.nodes[i] = std::acos(std::clamp(t[i], -1.0, 1.0));
    rule.weights[i] = azimuthal * w[i];
  }
  rule.design_order = 2 * node_count - 1;
  return rule;
}

int default_node_count(int dim, int truncation) {
  return dim == 2 ? std::max(64, 8 * truncation) : std::max(48, 6 * truncation);
}

QuadratureRule default_quadrature(int dim, int truncation) {
  return sphere_quadrature(dim, default_node_count(dim, truncation));
}

double sphere_surface_area(int dim) {
  // |S^{N-1}| = 2 pi^{N/2} / Gamma(N/2); |S^0| = 2 is the N = 1 endpoint
  // needed as the azimuthal factor of zonal rules in dim 3.
  return 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

double unit_ball_volume(int dim) { return sphere_surface_area(dim) / dim; }

} // namespace twophase
