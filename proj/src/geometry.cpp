#include "twophase/geometry.hpp"

#include <cmath>

namespace twophase {

BoundaryCurve BoundaryCurve::ball(int dim, double radius) {
  return {dim, radius, ShapeCoeffs(dim, 0)};
}

BoundaryCurve BoundaryCurve::perturbed(double base_radius,
                                       const ShapeCoeffs& coeffs) {
  return {coeffs.dim(), base_radius, coeffs};
}

double BoundaryCurve::radius(double theta) const {
  return base_radius + synthesize_at(perturbation, theta);
}

Derivs BoundaryCurve::radius_derivs(double theta) const {
  Derivs d = synthesize_derivs(perturbation, theta);
  d.value += base_radius;
  return d;
}

Eigen::VectorXd BoundaryCurve::point(double theta) const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
  const double rho = radius(theta);
  x[0] = rho * std::cos(theta);
  x[1] = rho * std::sin(theta);
  return x;
}

Eigen::VectorXd BoundaryCurve::outward_normal(double theta) const {
  const Derivs d = radius_derivs(theta);
  const double rho = d.value;
  const double slope = d.d1 / rho;
  const double w = std::sqrt(1.0 + slope * slope);
  const double c = std::cos(theta), s = std::sin(theta);
  Eigen::VectorXd n = Eigen::VectorXd::Zero(dim);
  // (e_r - (rho'/rho) e_theta) / |...| with e_r = (c, s), e_theta = (-s, c)
  n[0] = (c + slope * s) / w;
  n[1] = (s - slope * c) / w;
  return n;
}

double BoundaryCurve::mean_curvature(double theta) const {
  const Derivs d = radius_derivs(theta);
  const double rho = d.value, d1 = d.d1, d2 = d.d2;
  if (dim == 2) {
    const double s2 = rho * rho + d1 * d1;
    return (rho * rho + 2.0 * d1 * d1 - rho * d2) / (s2 * std::sqrt(s2));
  }
  // Level-set divergence of n = grad(r - rho(theta)) / |...| evaluated at
  // r = rho, written with W = sqrt(1 + (rho'/rho)^2).
  const double w2 = 1.0 + (d1 / rho) * (d1 / rho);
  const double w = std::sqrt(w2);
  const double st = std::sin(theta);
  // cot(theta) * rho' tends to rho'' at the poles (rho' vanishes there).
  const double cot_term =
      std::abs(st) < 1e-9 ? d2 : std::cos(theta) / st * d1;
  double h = (dim - 1) / (rho * w) + d1 * d1 / (rho * rho * rho * w2 * w);
  h -= ((dim - 2) * cot_term + d2 - d1 * d1 * d2 / (rho * rho * w2)) /
       (rho * rho * w);
  return h;
}

double BoundaryCurve::metric_factor(double theta) const {
  const Derivs d = radius_derivs(theta);
  return std::pow(d.value, dim - 2) *
         std::sqrt(d.value * d.value + d.d1 * d.d1);
}

void BoundaryCurve::validate(const QuadratureRule& rule) const {
  if (rule.dim != dim) throw InputError("BoundaryCurve: rule dim mismatch");
  perturbation.validate();
  for (double theta : rule.nodes)
    if (!(radius(theta) > 0.0))
      throw InputError("BoundaryCurve: radius not positive at theta = " +
                       std::to_string(theta) + " (not star-shaped)");
}

double volume(const BoundaryCurve& curve, const QuadratureRule& rule) {
  double acc = 0.0;
  for (size_t j = 0; j < rule.size(); ++j)
    acc += rule.weights[j] * std::pow(curve.radius(rule.nodes[j]), curve.dim);
  return acc / curve.dim;
}

double surface_area(const BoundaryCurve& curve, const QuadratureRule& rule) {
  return surface_integral(curve, rule, [](double) { return 1.0; });
}

double surface_integral(const BoundaryCurve& curve, const QuadratureRule& rule,
                        const std::function<double(double)>& integrand) {
  double acc = 0.0;
  for (size_t j = 0; j < rule.size(); ++j)
    acc += rule.weights[j] * curve.metric_factor(rule.nodes[j]) *
           integrand(rule.nodes[j]);
  return acc;
}

Eigen::VectorXd barycenter(const BoundaryCurve& curve,
                           const QuadratureRule& rule) {
  Eigen::VectorXd bar = Eigen::VectorXd::Zero(curve.dim);
  const int p = curve.dim + 1;
  for (size_t j = 0; j < rule.size(); ++j) {
    const double theta = rule.nodes[j];
    const double m = rule.weights[j] * std::pow(curve.radius(theta), p) / p;
    bar[0] += m * std::cos(theta);
    if (curve.dim == 2) bar[1] += m * std::sin(theta);
  }
  return bar;
}

TranslatedBallGraph translated_ball_graph(int dim,
                                          const Eigen::VectorXd& offset,
                                          double base_radius, int truncation) {
  if (offset.size() != dim)
    throw InputError("translated_ball_graph: offset size must equal dim");
  const double y2 = offset.squaredNorm();
  if (!(std::sqrt(y2) < base_radius))
    throw InputError("translated_ball_graph: |offset| must be < base_radius");
  if (dim >= 3)
    for (int i = 1; i < dim; ++i)
      if (offset[i] != 0.0)
        throw InputError(
            "translated_ball_graph: dim >= 3 offsets must lie on the x_1 axis");

  const QuadratureRule rule = default_quadrature(dim, truncation);
  std::vector<double> values(rule.size());
  for (size_t j = 0; j < rule.size(); ++j) {
    const double theta = rule.nodes[j];
    double proj = offset[0] * std::cos(theta);
    if (dim == 2) proj += offset[1] * std::sin(theta);
    values[j] =
        proj + std::sqrt(base_radius * base_radius - y2 + proj * proj);
  }
  AnalysisResult res = analyze(values, rule, truncation);
  return {res.coeffs, res.mean};
}

} // namespace twophase
