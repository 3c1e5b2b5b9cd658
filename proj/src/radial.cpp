#include "twophase/radial.hpp"

#include <cmath>

namespace twophase {

namespace {

// The critical-value identities involve cancellations at the zero of the
// degree-k eigenvalue; long double internals keep them at the 1e-10 level.
long double radial_power(long double R, int dim, int k) {
  // R^{2-N-2k}
  return std::pow(R, static_cast<long double>(2 - dim - 2 * k));
}

long double denom_F(int k, int dim, long double sigma, long double pw) {
  return dim * (dim - 2 + k + k * sigma) * pw + k * dim * (1.0L - sigma);
}

} // namespace

double trivial_solution_value(const ProblemParams& params, double r) {
  params.validate();
  if (r < 0.0 || r > 1.0)
    throw InputError("trivial_solution_value: r must lie in [0,1]");
  const double N = params.dim, R = params.core_radius;
  if (r < R)
    return (1.0 - R * R) / (2.0 * N) +
           (R * R - r * r) / (2.0 * N * params.sigma);
  return (1.0 - r * r) / (2.0 * N);
}

double trivial_d(const ProblemParams& params) {
  return static_cast<double>(params.dim - 1) / params.dim;
}

ModeCoefficients mode_coefficients(int k, const ProblemParams& params) {
  params.validate();
  if (k < 1) throw InputError("mode_coefficients: degree must be >= 1");
  if (params.one_phase())
    throw InputError("mode_coefficients: no core; use the one-phase profile");
  const int N = params.dim;
  const long double sigma = params.sigma;
  const long double pw = radial_power(params.core_radius, N, k);
  const long double F = denom_F(k, N, sigma, pw);
  ModeCoefficients mc;
  mc.degree = k;
  mc.denom = static_cast<double>(F);
  mc.inner = static_cast<double>((N - 2 + 2 * k) * pw / F);
  mc.outer_decay = static_cast<double>((1.0L - sigma) * k / F);
  mc.outer_grow = static_cast<double>((N - 2 + k + k * sigma) * pw / F);
  return mc;
}

Derivs shape_derivative_mode(int k, const ProblemParams& params, double r) {
  if (k < 1) throw InputError("shape_derivative_mode: degree must be >= 1");
  auto power = [&](double coeff, double expo) -> Derivs {
    if (coeff == 0.0) return {};
    const double v = coeff * std::pow(r, expo);
    if (r == 0.0) {
      // Only nonnegative exponents reach r = 0 (inner/one-phase profile).
      Derivs d{};
      if (expo == 0.0) d.value = coeff;
      if (expo == 1.0) d.d1 = coeff;
      if (expo == 2.0) d.d2 = 2.0 * coeff;
      return d;
    }
    return {v, expo * v / r, expo * (expo - 1.0) * v / (r * r)};
  };
  auto combine = [](Derivs a, Derivs b) -> Derivs {
    return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2};
  };

  if (params.one_phase()) return power(1.0 / params.dim, k);

  const ModeCoefficients mc = mode_coefficients(k, params);
  if (r < params.core_radius) return power(mc.inner, k);
  return combine(power(mc.outer_decay, 2.0 - params.dim - k),
                 power(mc.outer_grow, k));
}

double linearized_eigenvalue(int k, const ProblemParams& params) {
  params.validate();
  if (k < 1) throw InputError("linearized_eigenvalue: degree must be >= 1");
  const int N = params.dim;
  if (params.one_phase()) return linearized_eigenvalue_one_phase(k, N);
  const long double sigma = params.sigma;
  const long double pw = radial_power(params.core_radius, N, k);
  const long double numer =
      (2.0L - N - k) * (1.0L - N - k) * (1.0L - sigma) +
      (k - 1.0L) * (N - 2 + k + k * sigma) * pw;
  return static_cast<double>(k * numer / denom_F(k, N, sigma, pw));
}

double linearized_eigenvalue_one_phase(int k, int dim) {
  if (k < 1) throw InputError("linearized_eigenvalue: degree must be >= 1");
  return static_cast<double>(k) * (k - 1) / dim;
}

CriticalValue critical_conductivity(int k, int dim, double core_radius) {
  if (k < 2) throw InputError("critical_conductivity: degree must be >= 2");
  if (!(core_radius > 0.0 && core_radius < 1.0))
    throw InputError("critical_conductivity: core radius must lie in (0,1)");
  CriticalValue cv;
  cv.degree = k;
  const long double pw = radial_power(core_radius, dim, k);
  const long double a = (k + dim - 2.0L) * (k + dim - 1.0L);
  const long double b = k * (k - 1.0L) * pw;
  cv.admissible = b < a;
  if (!cv.admissible) return cv;
  const long double sk =
      (k + dim - 2.0L) * (k + dim - 1.0L + (k - 1.0L) * pw) / (a - b);
  cv.value = static_cast<double>(sk);
  cv.slope = static_cast<double>(k * (-a + b) / denom_F(k, dim, sk, pw));
  return cv;
}

std::vector<CriticalValue> critical_spectrum(int dim, double core_radius,
                                             int kmax) {
  if (kmax < 2) throw InputError("critical_spectrum: kmax must be >= 2");
  std::vector<CriticalValue> out;
  for (int k = 2; k <= kmax; ++k) {
    CriticalValue cv = critical_conductivity(k, dim, core_radius);
    if (cv.admissible) out.push_back(cv);
  }
  return out;
}

double beta_one_zero_sigma(int dim, double core_radius) {
  ProblemParams params{dim, core_radius, 1.0};
  auto b1 = [&](double s) {
    ProblemParams p = params;
    p.sigma = s;
    return linearized_eigenvalue(1, p);
  };
  double lo = 1e-3, hi = 1e3;
  if (b1(lo) * b1(hi) > 0.0)
    throw NumericalError("beta_one_zero_sigma: no sign change in [1e-3, 1e3]");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (b1(lo) * b1(mid) <= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace twophase
