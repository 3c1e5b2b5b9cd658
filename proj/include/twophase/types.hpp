#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace twophase {

/// Invalid user input (bad parameters, malformed configs, schema violations).
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure (rank-deficient systems, non-convergence, sign violations).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Configuration of the concentric reference pair: outer unit ball, core ball
/// of radius R, conductivity sigma_c in the core and 1 in the shell.
/// R = 0 encodes the empty core (one-phase problem).
struct ProblemParams {
  int dim = 2;              // N >= 2
  double core_radius = 0.0; // R in [0,1)
  double sigma = 1.0;       // sigma_c > 0

  bool one_phase() const { return core_radius == 0.0; }
  void validate() const;
};

enum class ModeKind { Cos, Sin, Zonal };

const char* mode_kind_name(ModeKind kind);
ModeKind mode_kind_from_name(const std::string& name);

struct Mode {
  int degree = 1;
  ModeKind kind = ModeKind::Cos;
  double value = 0.0;
};

/// Zero-mean boundary perturbation as a truncated harmonic coefficient vector.
///
/// In dimension 2 a coefficient v on (k, cos) contributes v*cos(k*theta) and
/// on (k, sin) v*sin(k*theta). In dimension N >= 3 only axisymmetric (zonal)
/// modes exist: v on (k, zonal) contributes v*\hat Y_k(theta) where
/// \hat Y_k is the degree-k zonal harmonic scaled to 1 at the pole
/// (Legendre P_k(cos theta) for N = 3). Degree 0 is structurally absent,
/// so every synthesized function has zero mean on the sphere.
class ShapeCoeffs {
public:
  ShapeCoeffs() = default;
  ShapeCoeffs(int dim, int truncation);

  static ShapeCoeffs zero(int dim, int truncation);
  static ShapeCoeffs single(int dim, int degree, ModeKind kind, double value,
                            int truncation);
  static ShapeCoeffs from_modes(int dim, const std::vector<Mode>& modes,
                                int truncation);

  int dim() const { return dim_; }
  int truncation() const { return truncation_; }

  double coefficient(int degree, ModeKind kind) const;
  void set(int degree, ModeKind kind, double value);
  void add(int degree, ModeKind kind, double value);

  // Dense per-degree access, index by degree in [1, truncation].
  double cos_or_zonal(int degree) const { return primary_.at(degree - 1); }
  double sin(int degree) const;

  bool is_zero() const;
  bool reflection_symmetric() const; // no sine content (always true for N >= 3)
  int max_active_degree() const;
  double coeff_abs_sum() const; // cheap sup-norm bound for the synthesis

  std::vector<Mode> modes() const; // sparse view, zeros skipped
  void validate() const;

private:
  int dim_ = 2;
  int truncation_ = 0;
  std::vector<double> primary_; // cos (2D) or zonal (N >= 3), degree i+1
  std::vector<double> sine_;    // 2D only
};

} // namespace twophase
