#include "twophase/harmonics.hpp"

#include <cmath>
#include <numbers>

namespace twophase {

namespace {

// Gegenbauer C_k^lambda (Chebyshev T_k when lambda = 0) with t-derivatives,
// all degrees 0..kmax at once via the differentiated three-term recurrence.
void gegenbauer_table(double lambda, int kmax, double t,
                      std::vector<Derivs>& out) {
  out.assign(kmax + 1, Derivs{});
  out[0] = {1.0, 0.0, 0.0};
  if (kmax == 0) return;
  if (lambda == 0.0)
    out[1] = {t, 1.0, 0.0};
  else
    out[1] = {2.0 * lambda * t, 2.0 * lambda, 0.0};
  for (int k = 2; k <= kmax; ++k) {
    double ak, gk;
    if (lambda == 0.0) {
      ak = 2.0;
      gk = 1.0;
    } else {
      ak = 2.0 * (k + lambda - 1.0) / k;
      gk = (k + 2.0 * lambda - 2.0) / k;
    }
    const Derivs& p = out[k - 1];
    const Derivs& q = out[k - 2];
    out[k].value = ak * t * p.value - gk * q.value;
    out[k].d1 = ak * (p.value + t * p.d1) - gk * q.d1;
    out[k].d2 = ak * (2.0 * p.d1 + t * p.d2) - gk * q.d2;
  }
}

double gegenbauer_lambda(int dim) { return 0.5 * (dim - 2); }

// ||C_k^lambda||_{L2(S^{N-1})}^2 for lambda = (N-2)/2 > 0.
double zonal_norm_sq(int k, int dim) {
  const double lambda = gegenbauer_lambda(dim);
  const double line = std::numbers::pi * std::pow(2.0, 1.0 - 2.0 * lambda) *
                      std::exp(std::lgamma(k + 2.0 * lambda) -
                               std::lgamma(k + 1.0) - 2.0 * std::lgamma(lambda)) /
                      (k + lambda);
  return sphere_surface_area(dim - 1) * line;
}

// C_k^lambda(1) = Gamma(k+2*lambda) / (Gamma(2*lambda) k!) for lambda > 0.
double gegenbauer_at_one(int k, int dim) {
  const double lambda = gegenbauer_lambda(dim);
  return std::exp(std::lgamma(k + 2.0 * lambda) - std::lgamma(2.0 * lambda) -
                  std::lgamma(k + 1.0));
}

} // namespace

long long laplace_beltrami_eigenvalue(int k, int dim) {
  if (k < 0) throw InputError("eigenvalue: degree must be >= 0");
  return static_cast<long long>(k) * (dim + k - 2);
}

long long harmonic_multiplicity(int k, int dim) {
  if (k < 0) throw InputError("multiplicity: degree must be >= 0");
  if (k == 0) return 1;
  auto binom = [](long long n, long long r) -> long long {
    if (r < 0 || r > n) return 0;
    long long v = 1;
    for (long long i = 1; i <= r; ++i) v = v * (n - r + i) / i;
    return v;
  };
  return binom(dim + k - 1, k) - binom(dim + k - 3, k - 2);
}

double zonal_eval(int k, int dim, double t) {
  if (k < 0) throw InputError("zonal_eval: degree must be >= 0");
  if (std::abs(t) > 1.0 + 1e-12) throw InputError("zonal_eval: |t| must be <= 1");
  t = std::clamp(t, -1.0, 1.0);
  if (k == 0) return 1.0 / std::sqrt(sphere_surface_area(dim));
  if (dim == 2)
    return std::cos(k * std::acos(t)) / std::sqrt(std::numbers::pi);
  std::vector<Derivs> table;
  gegenbauer_table(gegenbauer_lambda(dim), k, t, table);
  return table[k].value / std::sqrt(zonal_norm_sq(k, dim));
}

double zonal_pole_value(int k, int dim) {
  if (k == 0) return 1.0 / std::sqrt(sphere_surface_area(dim));
  if (dim == 2) return 1.0 / std::sqrt(std::numbers::pi);
  return gegenbauer_at_one(k, dim) / std::sqrt(zonal_norm_sq(k, dim));
}

Derivs zonal_basis_theta_derivs(int k, int dim, double theta) {
  if (dim == 2) {
    const double c = std::cos(k * theta), s = std::sin(k * theta);
    return {c, -k * s, -static_cast<double>(k) * k * c};
  }
  const double t = std::cos(theta), st = std::sin(theta);
  std::vector<Derivs> table;
  gegenbauer_table(gegenbauer_lambda(dim), k, t, table);
  const double scale = 1.0 / gegenbauer_at_one(k, dim);
  const Derivs& g = table[k];
  return {scale * g.value, -scale * st * g.d1,
          scale * (-t * g.d1 + st * st * g.d2)};
}

void zonal_basis_table(int dim, int kmax, double t, std::vector<Derivs>& out) {
  if (dim < 3) throw InputError("zonal_basis_table: dim must be >= 3");
  gegenbauer_table(gegenbauer_lambda(dim), kmax, t, out);
  for (int k = 0; k <= kmax; ++k) {
    const double scale = 1.0 / gegenbauer_at_one(k, dim);
    out[k].value *= scale;
    out[k].d1 *= scale;
    out[k].d2 *= scale;
  }
}

Derivs shape_basis_eval(int dim, int degree, ModeKind kind, double theta) {
  if (degree < 1) throw InputError("shape_basis_eval: degree must be >= 1");
  if (dim == 2) {
    const double c = std::cos(degree * theta), s = std::sin(degree * theta);
    const double k2 = static_cast<double>(degree) * degree;
    if (kind == ModeKind::Sin) return {s, degree * c, -k2 * s};
    return {c, -degree * s, -k2 * c};
  }
  if (kind != ModeKind::Zonal)
    throw InputError("shape_basis_eval: dim >= 3 uses zonal modes");
  return zonal_basis_theta_derivs(degree, dim, theta);
}

double synthesize_at(const ShapeCoeffs& coeffs, double theta) {
  return synthesize_derivs(coeffs, theta).value;
}

Derivs synthesize_derivs(const ShapeCoeffs& coeffs, double theta) {
  Derivs acc{};
  const int K = coeffs.truncation();
  if (K == 0) return acc;
  if (coeffs.dim() == 2) {
    for (int k = 1; k <= K; ++k) {
      const double a = coeffs.cos_or_zonal(k), b = coeffs.sin(k);
      if (a == 0.0 && b == 0.0) continue;
      const double c = std::cos(k * theta), s = std::sin(k * theta);
      const double k2 = static_cast<double>(k) * k;
      acc.value += a * c + b * s;
      acc.d1 += k * (-a * s + b * c);
      acc.d2 += -k2 * (a * c + b * s);
    }
    return acc;
  }
  const double t = std::cos(theta), st = std::sin(theta);
  std::vector<Derivs> table;
  gegenbauer_table(gegenbauer_lambda(coeffs.dim()), K, t, table);
  for (int k = 1; k <= K; ++k) {
    const double a = coeffs.cos_or_zonal(k);
    if (a == 0.0) continue;
    const double scale = a / gegenbauer_at_one(k, coeffs.dim());
    acc.value += scale * table[k].value;
    acc.d1 += scale * (-st * table[k].d1);
    acc.d2 += scale * (-t * table[k].d1 + st * st * table[k].d2);
  }
  return acc;
}

std::vector<double> synthesize(const ShapeCoeffs& coeffs,
                               const std::vector<double>& thetas) {
  std::vector<double> out(thetas.size());
  for (size_t i = 0; i < thetas.size(); ++i)
    out[i] = synthesize_at(coeffs, thetas[i]);
  return out;
}

AnalysisResult analyze(const std::vector<double>& values,
                       const QuadratureRule& rule, int truncation) {
  if (values.size() != rule.size())
    throw InputError("analyze: value count does not match rule size");
  if (truncation < 0) throw InputError("analyze: truncation must be >= 0");

  AnalysisResult res;
  res.coeffs = ShapeCoeffs(rule.dim, truncation);
  const size_t M = rule.size();

  if (rule.dim == 2) {
    if (truncation > rule.design_order)
      throw InputError("analyze: truncation " + std::to_string(truncation) +
                       " aliases on " + std::to_string(M) + " nodes");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(M);
    res.mean = mean;
    for (int k = 1; k <= truncation; ++k) {
      double a = 0.0, b = 0.0;
      for (size_t j = 0; j < M; ++j) {
        a += values[j] * std::cos(k * rule.nodes[j]);
        b += values[j] * std::sin(k * rule.nodes[j]);
      }
      res.coeffs.set(k, ModeKind::Cos, 2.0 * a / static_cast<double>(M));
      res.coeffs.set(k, ModeKind::Sin, 2.0 * b / static_cast<double>(M));
    }
    return res;
  }

  if (2 * truncation > rule.design_order)
    throw InputError("analyze: truncation " + std::to_string(truncation) +
                     " exceeds the rule's exactness order");
  double mass = 0.0;
  for (size_t j = 0; j < M; ++j) mass += rule.weights[j] * values[j];
  res.mean = mass / sphere_surface_area(rule.dim);

  // Projection against L2-normalized zonals, rescaled to the pole-normalized
  // ShapeCoeffs basis.
  std::vector<Derivs> table;
  std::vector<double> proj(truncation + 1, 0.0);
  for (size_t j = 0; j < M; ++j) {
    gegenbauer_table(gegenbauer_lambda(rule.dim), truncation, rule.cos_nodes[j],
                     table);
    for (int k = 1; k <= truncation; ++k)
      proj[k] += rule.weights[j] * values[j] * table[k].value;
  }
  for (int k = 1; k <= truncation; ++k) {
    const double nsq = zonal_norm_sq(k, rule.dim);
    const double coeff = proj[k] / nsq * gegenbauer_at_one(k, rule.dim);
    res.coeffs.set(k, ModeKind::Zonal, coeff);
  }
  return res;
}

} // namespace twophase
