#include "twophase/invariant_poly.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace twophase {

Rational::Rational(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) {
  if (den == 0) throw InputError("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  BigInt g = boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

double Rational::to_double() const {
  return num.convert_to<double>() / den.convert_to<double>();
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
}
Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
}
Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num * b.num, a.den * b.den);
}
Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw InputError("Rational: division by zero");
  return Rational(a.num * b.den, a.den * b.num);
}
bool operator==(const Rational& a, const Rational& b) {
  return a.num == b.num && a.den == b.den;
}

InvariantPolynomial laplacian_of_monomial(int a, int b, int dim) {
  if (a < 0 || b < 0)
    throw InputError("laplacian_of_monomial: powers must be >= 0");
  InvariantPolynomial out;
  const long long c1 = static_cast<long long>(a) * (a - 1);
  if (c1 != 0) out.push_back({a - 2, b, Rational(c1)});
  // div(2b x_1^a |x'|^{2b-2} x') with div x' = N-1 and grad|x'|^{2b-2}.x' =
  // (2b-2)|x'|^{2b-2}; the 4ab x_1^{a-1}|x'|^{2b-2} x'.e_1 cross term is zero.
  const long long c2 = 2LL * b * (2LL * b + dim - 3);
  if (c2 != 0) out.push_back({a, b - 1, Rational(c2)});
  return out;
}

InvariantPolynomial laplacian(const InvariantPolynomial& poly, int dim) {
  std::map<std::pair<int, int>, Rational> acc;
  for (const auto& term : poly) {
    for (const auto& piece :
         laplacian_of_monomial(term.x1_power, term.xp_sq_power, dim)) {
      auto key = std::make_pair(piece.x1_power, piece.xp_sq_power);
      auto it = acc.find(key);
      if (it == acc.end())
        acc.emplace(key, term.coeff * piece.coeff);
      else
        it->second = it->second + term.coeff * piece.coeff;
    }
  }
  InvariantPolynomial out;
  for (const auto& [key, coeff] : acc)
    if (!coeff.is_zero()) out.push_back({key.first, key.second, coeff});
  return out;
}

namespace {

// Harmonicity system for P = sum_i a_i x_1^{p(i)} |x'|^{2(j-i)} with
// p(i) = 2i (+1 if odd): one equation per monomial of Delta P.
// Returns the (rows x (j+1)) exact matrix.
std::vector<std::vector<Rational>> harmonicity_matrix(int k, int dim) {
  const int j = k / 2;
  const int odd = k % 2;
  std::map<std::pair<int, int>, std::vector<Rational>> rows;
  for (int i = 0; i <= j; ++i) {
    const InvariantPolynomial lap =
        laplacian_of_monomial(2 * i + odd, j - i, dim);
    for (const auto& term : lap) {
      auto key = std::make_pair(term.x1_power, term.xp_sq_power);
      auto& row = rows[key];
      if (row.empty()) row.assign(j + 1, Rational(0));
      row[i] = row[i] + term.coeff;
    }
  }
  std::vector<std::vector<Rational>> mat;
  for (auto& [key, row] : rows) mat.push_back(std::move(row));
  return mat;
}

// Exact Gaussian elimination; returns rank, leaves mat in echelon form.
int eliminate(std::vector<std::vector<Rational>>& mat) {
  const int rows = static_cast<int>(mat.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(mat[0].size());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (!mat[r][col].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(mat[rank], mat[pivot]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || mat[r][col].is_zero()) continue;
      const Rational factor = mat[r][col] / mat[rank][col];
      for (int c = col; c < cols; ++c)
        mat[r][c] = mat[r][c] - factor * mat[rank][c];
    }
    ++rank;
  }
  return rank;
}

} // namespace

InvariantPolynomial InvariantHarmonicPoly::terms() const {
  InvariantPolynomial out;
  const int j = degree / 2;
  const int odd = degree % 2;
  for (int i = 0; i <= j; ++i)
    if (!coeffs[i].is_zero()) out.push_back({2 * i + odd, j - i, coeffs[i]});
  return out;
}

InvariantHarmonicPoly invariant_harmonic_poly(int k, int dim) {
  if (k < 1) throw InputError("invariant_harmonic_poly: degree must be >= 1");
  if (dim < 2) throw InputError("invariant_harmonic_poly: dim must be >= 2");

  const int j = k / 2;
  InvariantHarmonicPoly poly;
  poly.dim = dim;
  poly.degree = k;
  poly.coeffs.assign(j + 1, Rational(0));
  poly.coeffs[j] = Rational(1); // leading monomial x_1^k

  auto mat = harmonicity_matrix(k, dim);
  const int rank = eliminate(mat);
  if (rank != j)
    throw NumericalError("invariant_harmonic_poly: unexpected rank " +
                         std::to_string(rank));
  // Back-substitute the a_j = 1 normalization through the echelon rows.
  for (int r = rank - 1; r >= 0; --r) {
    int lead = -1;
    for (int c = 0; c <= j; ++c)
      if (!mat[r][c].is_zero()) {
        lead = c;
        break;
      }
    Rational rhs(0);
    for (int c = lead + 1; c <= j; ++c)
      rhs = rhs - mat[r][c] * poly.coeffs[c];
    poly.coeffs[lead] = rhs / mat[r][lead];
  }

  if (!laplacian(poly.terms(), dim).empty())
    throw NumericalError("invariant_harmonic_poly: nonzero Laplacian");
  return poly;
}

int harmonicity_nullity(int k, int dim) {
  const int j = k / 2;
  auto mat = harmonicity_matrix(k, dim);
  return (j + 1) - eliminate(mat);
}

double restrict_to_sphere(const InvariantHarmonicPoly& poly, double theta) {
  return restrict_to_sphere(poly.terms(), theta);
}

double restrict_to_sphere(const InvariantPolynomial& poly, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  double acc = 0.0;
  for (const auto& term : poly)
    acc += term.coeff.to_double() * std::pow(c, term.x1_power) *
           std::pow(s * s, term.xp_sq_power);
  return acc;
}

} // namespace twophase
