#include "twophase/types.hpp"

#include <algorithm>
#include <cmath>

namespace twophase {

void ProblemParams::validate() const {
  if (dim < 2) throw InputError("dim must be >= 2, got " + std::to_string(dim));
  if (!(core_radius >= 0.0 && core_radius < 1.0))
    throw InputError("core_radius must lie in [0,1), got " +
                     std::to_string(core_radius));
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw InputError("sigma must be positive, got " + std::to_string(sigma));
}

const char* mode_kind_name(ModeKind kind) {
  switch (kind) {
    case ModeKind::Cos: return "cos";
    case ModeKind::Sin: return "sin";
    case ModeKind::Zonal: return "zonal";
  }
  return "?";
}

ModeKind mode_kind_from_name(const std::string& name) {
  if (name == "cos") return ModeKind::Cos;
  if (name == "sin") return ModeKind::Sin;
  if (name == "zonal") return ModeKind::Zonal;
  throw InputError("unknown mode kind '" + name + "' (expected cos|sin|zonal)");
}

ShapeCoeffs::ShapeCoeffs(int dim, int truncation)
    : dim_(dim), truncation_(truncation),
      primary_(static_cast<size_t>(std::max(truncation, 0)), 0.0),
      sine_(dim == 2 ? static_cast<size_t>(std::max(truncation, 0)) : 0, 0.0) {
  if (dim < 2) throw InputError("ShapeCoeffs: dim must be >= 2");
  if (truncation < 0) throw InputError("ShapeCoeffs: truncation must be >= 0");
}

ShapeCoeffs ShapeCoeffs::zero(int dim, int truncation) {
  return ShapeCoeffs(dim, truncation);
}

ShapeCoeffs ShapeCoeffs::single(int dim, int degree, ModeKind kind,
                                double value, int truncation) {
  ShapeCoeffs c(dim, std::max(truncation, degree));
  c.set(degree, kind, value);
  return c;
}

ShapeCoeffs ShapeCoeffs::from_modes(int dim, const std::vector<Mode>& modes,
                                    int truncation) {
  int needed = truncation;
  for (const auto& m : modes) needed = std::max(needed, m.degree);
  ShapeCoeffs c(dim, needed);
  for (const auto& m : modes) c.add(m.degree, m.kind, m.value);
  return c;
}

namespace {
void check_mode(int dim, int degree, ModeKind kind, int truncation) {
  if (degree < 1)
    throw InputError("mode degree must be >= 1 (zero mean is structural), got " +
                     std::to_string(degree));
  if (degree > truncation)
    throw InputError("mode degree " + std::to_string(degree) +
                     " exceeds truncation " + std::to_string(truncation));
  if (dim == 2 && kind == ModeKind::Zonal)
    throw InputError("zonal modes are for dim >= 3; use cos/sin in dim 2");
  if (dim >= 3 && kind != ModeKind::Zonal)
    throw InputError("dim >= 3 supports zonal modes only");
}
} // namespace

double ShapeCoeffs::coefficient(int degree, ModeKind kind) const {
  check_mode(dim_, degree, kind, truncation_);
  if (kind == ModeKind::Sin) return sine_[degree - 1];
  return primary_[degree - 1];
}

void ShapeCoeffs::set(int degree, ModeKind kind, double value) {
  check_mode(dim_, degree, kind, truncation_);
  if (kind == ModeKind::Sin)
    sine_[degree - 1] = value;
  else
    primary_[degree - 1] = value;
}

void ShapeCoeffs::add(int degree, ModeKind kind, double value) {
  check_mode(dim_, degree, kind, truncation_);
  if (kind == ModeKind::Sin)
    sine_[degree - 1] += value;
  else
    primary_[degree - 1] += value;
}

double ShapeCoeffs::sin(int degree) const {
  if (dim_ != 2) return 0.0;
  return sine_.at(degree - 1);
}

bool ShapeCoeffs::is_zero() const {
  auto nonzero = [](double v) { return v != 0.0; };
  return std::none_of(primary_.begin(), primary_.end(), nonzero) &&
         std::none_of(sine_.begin(), sine_.end(), nonzero);
}

bool ShapeCoeffs::reflection_symmetric() const {
  return std::none_of(sine_.begin(), sine_.end(),
                      [](double v) { return v != 0.0; });
}

int ShapeCoeffs::max_active_degree() const {
  int k = 0;
  for (int i = 0; i < truncation_; ++i) {
    const bool active = primary_[i] != 0.0 || (dim_ == 2 && sine_[i] != 0.0);
    if (active) k = i + 1;
  }
  return k;
}

double ShapeCoeffs::coeff_abs_sum() const {
  double s = 0.0;
  for (double v : primary_) s += std::abs(v);
  for (double v : sine_) s += std::abs(v);
  return s;
}

std::vector<Mode> ShapeCoeffs::modes() const {
  std::vector<Mode> out;
  for (int k = 1; k <= truncation_; ++k) {
    if (primary_[k - 1] != 0.0)
      out.push_back({k, dim_ == 2 ? ModeKind::Cos : ModeKind::Zonal,
                     primary_[k - 1]});
    if (dim_ == 2 && sine_[k - 1] != 0.0)
      out.push_back({k, ModeKind::Sin, sine_[k - 1]});
  }
  return out;
}

void ShapeCoeffs::validate() const {
  if (dim_ < 2) throw InputError("ShapeCoeffs: dim must be >= 2");
  for (double v : primary_)
    if (!std::isfinite(v)) throw InputError("ShapeCoeffs: non-finite coefficient");
  for (double v : sine_)
    if (!std::isfinite(v)) throw InputError("ShapeCoeffs: non-finite coefficient");
}

} // namespace twophase
