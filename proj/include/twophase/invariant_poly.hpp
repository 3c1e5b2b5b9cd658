#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "twophase/types.hpp"

namespace twophase {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational on arbitrary-precision integers, always normalized
/// (positive denominator, gcd 1).
struct Rational {
  BigInt num = 0;
  BigInt den = 1;

  Rational() = default;
  Rational(long long n) : num(n) {}
  Rational(BigInt n, BigInt d);

  bool is_zero() const { return num == 0; }
  std::string num_str() const { return num.str(); }
  std::string den_str() const { return den.str(); }
  double to_double() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b);
};

/// Term c * x_1^a * |x'|^{2b} of a polynomial invariant under rotations of
/// x' = (x_2, ..., x_N).
struct MonomialTerm {
  int x1_power = 0;  // a
  int xp_sq_power = 0; // b
  Rational coeff;
};

using InvariantPolynomial = std::vector<MonomialTerm>;

/// Exact Laplacian of x_1^a |x'|^{2b} in R^N:
///   a(a-1) x_1^{a-2} |x'|^{2b} + 2b(2b+N-3) x_1^a |x'|^{2b-2},
/// obtained by symbolic differentiation with div x' = N-1 (the e_1 . x' cross
/// term vanishes). Terms with zero coefficient are dropped.
InvariantPolynomial laplacian_of_monomial(int a, int b, int dim);

InvariantPolynomial laplacian(const InvariantPolynomial& poly, int dim);

/// Degree-k homogeneous polynomial sum_i a_i x_1^{2i(+1)} |x'|^{2(j-i)}
/// (j = floor(k/2)) with exactly-zero Laplacian, normalized a_j = 1.
/// The coefficients are found by exact elimination on the harmonicity
/// system built from laplacian_of_monomial, not from any closed recursion.
struct InvariantHarmonicPoly {
  int dim = 2;
  int degree = 1;
  std::vector<Rational> coeffs; // a_0 .. a_j

  InvariantPolynomial terms() const;
  bool odd() const { return degree % 2 != 0; }
};

InvariantHarmonicPoly invariant_harmonic_poly(int k, int dim);

/// Rank deficiency of the harmonicity linear system on the (j+1)-coefficient
/// family, by exact Gaussian elimination (expected: exactly 1).
int harmonicity_nullity(int k, int dim);

/// Evaluate the polynomial on the unit sphere with x_1 = cos(theta),
/// |x'| = sin(theta).
double restrict_to_sphere(const InvariantHarmonicPoly& poly, double theta);
double restrict_to_sphere(const InvariantPolynomial& poly, double theta);

} // namespace twophase
