#include "twophase/solver.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace twophase {

namespace {

using Complex = std::complex<double>;

enum Block { kInner = 0, kGrow = 1, kDecay = 2 };

struct ColumnMeta {
  int family; // index into family list
  Block block;
  int degree;
};

// ------------------------------------------------------------------ 2D terms

struct Tables2D {
  Complex z;
  std::vector<Complex> pos; // z^0 .. z^{K}
  std::vector<Complex> neg; // z^{-1} .. z^{-(K+2)}
};

void build_tables_2d(double x0, double x1, int K, bool need_neg, Tables2D& T) {
  T.z = Complex(x0, x1);
  T.pos.resize(K + 1);
  T.pos[0] = 1.0;
  for (int k = 1; k <= K; ++k) T.pos[k] = T.pos[k - 1] * T.z;
  if (need_neg) {
    const Complex zi = 1.0 / T.z;
    T.neg.resize(K + 3);
    T.neg[0] = 1.0; // z^0 sentinel; T.neg[m] = z^{-m}
    for (int m = 1; m <= K + 2; ++m) T.neg[m] = T.neg[m - 1] * zi;
  }
}

struct ComplexDerivs {
  Complex F{}, F1{}, F2{};
};

ComplexDerivs holomorphic_term(const Tables2D& T, int degree, bool decay) {
  ComplexDerivs d;
  const double k = degree;
  if (!decay) {
    d.F = T.pos[degree];
    d.F1 = degree >= 1 ? k * T.pos[degree - 1] : Complex(0.0);
    d.F2 = degree >= 2 ? k * (k - 1.0) * T.pos[degree - 2] : Complex(0.0);
    return d;
  }
  if (degree == 0) { // log z
    d.F = std::log(std::abs(T.z));
    d.F1 = T.neg[1];
    d.F2 = -T.neg[2];
    return d;
  }
  d.F = T.neg[degree];
  d.F1 = -k * T.neg[degree + 1];
  d.F2 = k * (k + 1.0) * T.neg[degree + 2];
  return d;
}

// u = Re F (cos family) or Im F (sin family); sin-family decaying terms use
// r^{-k} sin(k theta) = -Im z^{-k}.
double part_sign(ModeKind kind, bool decay, double& sign) {
  sign = (kind == ModeKind::Sin && decay) ? -1.0 : 1.0;
  return sign;
}

double term_value_2d(const ComplexDerivs& d, ModeKind kind, bool decay) {
  double sign;
  part_sign(kind, decay, sign);
  return sign * (kind == ModeKind::Sin ? d.F.imag() : d.F.real());
}

void term_grad_2d(const ComplexDerivs& d, ModeKind kind, bool decay,
                  double* g) {
  double sign;
  part_sign(kind, decay, sign);
  if (kind == ModeKind::Sin) {
    g[0] = sign * d.F1.imag();
    g[1] = sign * d.F1.real();
  } else {
    g[0] = d.F1.real();
    g[1] = -d.F1.imag();
  }
}

void term_hess_2d(const ComplexDerivs& d, ModeKind kind, bool decay,
                  Eigen::MatrixXd& h) {
  double sign;
  part_sign(kind, decay, sign);
  if (kind == ModeKind::Sin) {
    h(0, 0) = sign * d.F2.imag();
    h(0, 1) = h(1, 0) = sign * d.F2.real();
    h(1, 1) = -sign * d.F2.imag();
  } else {
    h(0, 0) = d.F2.real();
    h(0, 1) = h(1, 0) = -d.F2.imag();
    h(1, 1) = -d.F2.real();
  }
}

// --------------------------------------------------------------- zonal terms

struct TablesZonal {
  double r = 0.0, t = 0.0;
  Eigen::VectorXd xhat;
  std::vector<Derivs> P;    // pole-normalized, derivatives in t
  std::vector<double> rpos; // r^0 .. r^{K}
  std::vector<double> rneg; // rneg[k] = r^{2-N-k}, k = 0..K
};

void build_tables_zonal(const Eigen::VectorXd& x, int dim, int K,
                        bool need_neg, TablesZonal& T) {
  T.r = x.norm();
  T.xhat = x / T.r;
  T.t = std::clamp(T.xhat[0], -1.0, 1.0);
  zonal_basis_table(dim, K, T.t, T.P);
  T.rpos.resize(K + 1);
  T.rpos[0] = 1.0;
  for (int k = 1; k <= K; ++k) T.rpos[k] = T.rpos[k - 1] * T.r;
  if (need_neg) {
    T.rneg.resize(K + 1);
    T.rneg[0] = std::pow(T.r, 2 - dim);
    for (int k = 1; k <= K; ++k) T.rneg[k] = T.rneg[k - 1] / T.r;
  }
}

double zonal_exponent(int degree, Block block, int dim) {
  return block == kDecay ? 2.0 - dim - degree : static_cast<double>(degree);
}

double term_value_zonal(const TablesZonal& T, int degree, Block block,
                        int dim) {
  const double rm = block == kDecay ? T.rneg[degree] : T.rpos[degree];
  (void)dim;
  return rm * T.P[degree].value;
}

void term_grad_zonal(const TablesZonal& T, int degree, Block block, int dim,
                     Eigen::VectorXd& g) {
  const double m = zonal_exponent(degree, block, dim);
  const double rm = block == kDecay ? T.rneg[degree] : T.rpos[degree];
  const Derivs& P = T.P[degree];
  const double radial = m * P.value - T.t * P.d1;
  g = (rm / T.r) * (radial * T.xhat);
  g[0] += (rm / T.r) * P.d1;
}

void term_hess_zonal(const TablesZonal& T, int degree, Block block, int dim,
                     Eigen::MatrixXd& h) {
  const double m = zonal_exponent(degree, block, dim);
  const double rm = block == kDecay ? T.rneg[degree] : T.rpos[degree];
  const Derivs& P = T.P[degree];
  const double t = T.t;
  const double gamma = m * P.value - t * P.d1;
  const double alpha = (m - 2.0) * gamma - (m - 1.0) * t * P.d1 + t * t * P.d2;
  const double beta = (m - 1.0) * P.d1 - t * P.d2;
  const double s = rm / (T.r * T.r);
  h = s * alpha * (T.xhat * T.xhat.transpose());
  h += s * gamma * Eigen::MatrixXd::Identity(dim, dim);
  for (int i = 0; i < dim; ++i) {
    h(0, i) += s * beta * T.xhat[i];
    h(i, 0) += s * beta * T.xhat[i];
  }
  h(0, 0) += s * P.d2;
}

// ------------------------------------------------------------------ assembly

struct FamilyLayout {
  ModeKind kind;
  int min_degree; // 0 for cos/zonal, 1 for sin
};

std::vector<FamilyLayout> family_layout(int dim, bool with_sine) {
  if (dim >= 3) return {{ModeKind::Zonal, 0}};
  std::vector<FamilyLayout> fams = {{ModeKind::Cos, 0}};
  if (with_sine) fams.push_back({ModeKind::Sin, 1});
  return fams;
}

std::vector<double> collocation_angles(int dim, int count) {
  std::vector<double> nodes;
  if (dim == 2) {
    nodes.resize(count);
    for (int i = 0; i < count; ++i)
      nodes[i] = 2.0 * std::numbers::pi * i / count;
  } else {
    nodes = sphere_quadrature(dim, count).nodes;
  }
  return nodes;
}

std::vector<double> verification_angles(int dim, int count) {
  std::vector<double> nodes;
  if (dim == 2) {
    nodes.resize(count);
    for (int i = 0; i < count; ++i)
      nodes[i] = 2.0 * std::numbers::pi * (i + 0.5) / count;
  } else {
    nodes = sphere_quadrature(dim, count).nodes;
  }
  return nodes;
}

double sup_abs_on_grid(const ShapeCoeffs& coeffs, int samples = 1024) {
  double sup = 0.0;
  const double span =
      coeffs.dim() == 2 ? 2.0 * std::numbers::pi : std::numbers::pi;
  for (int i = 0; i <= samples; ++i)
    sup = std::max(sup, std::abs(synthesize_at(coeffs, span * i / samples)));
  return sup;
}

} // namespace

void Discretization::validate() const {
  if (truncation < 0) throw InputError("Discretization: truncation must be >= 0");
  if (collocation < 4) throw InputError("Discretization: collocation must be >= 4");
  if (collocation < 2 * (truncation + 1))
    throw InputError("Discretization: collocation " +
                     std::to_string(collocation) +
                     " undersamples truncation " + std::to_string(truncation) +
                     " (need >= 2(K+1))");
  if (!(rank_tolerance > 0.0 && rank_tolerance < 1.0))
    throw InputError("Discretization: rank tolerance must lie in (0,1)");
}

double ResidualReport::overall() const {
  return std::max({dirichlet, interface_value, interface_flux});
}

const BoundaryCurve& SpectralSolution::core_boundary() const {
  if (!two_phase_)
    throw InputError("SpectralSolution: one-phase solution has no core");
  return core_;
}

Phase SpectralSolution::classify(const Eigen::VectorXd& x, Phase requested,
                                 double& r) const {
  if (x.size() != params_.dim)
    throw InputError("SpectralSolution: point dimension mismatch");
  r = x.norm();
  double theta;
  if (params_.dim == 2)
    theta = std::atan2(x[1], x[0]);
  else
    theta = std::acos(std::clamp(r == 0.0 ? 1.0 : x[0] / r, -1.0, 1.0));
  const double rho_g = outer_.radius(theta);
  if (r > rho_g * (1.0 + 1e-9) + 1e-12)
    throw InputError("SpectralSolution: point lies outside the domain");
  if (requested != Phase::Auto) {
    if (requested == Phase::Inner && !two_phase_)
      throw InputError("SpectralSolution: no inner phase (one-phase solution)");
    return requested;
  }
  if (!two_phase_) return Phase::Outer;
  return r < core_.radius(theta) ? Phase::Inner : Phase::Outer;
}

double SpectralSolution::value(const Eigen::VectorXd& x, Phase phase) const {
  double r;
  const Phase ph = classify(x, phase, r);
  const double sig = ph == Phase::Inner ? params_.sigma : 1.0;
  double u = -r * r / (2.0 * params_.dim * sig);
  const int K = disc_.truncation;

  if (r == 0.0) {
    for (const auto& fam : families_) {
      const auto& coeffs = ph == Phase::Inner ? fam.inner : fam.outer_grow;
      if (fam.kind != ModeKind::Sin && !coeffs.empty()) u += coeffs[0];
    }
    return u;
  }

  if (params_.dim == 2) {
    Tables2D T;
    build_tables_2d(x[0], x[1], K, ph == Phase::Outer && two_phase_, T);
    for (const auto& fam : families_) {
      const auto& grow = ph == Phase::Inner ? fam.inner : fam.outer_grow;
      for (size_t k = 0; k < grow.size(); ++k) {
        if (grow[k] == 0.0) continue;
        u += grow[k] * term_value_2d(holomorphic_term(T, static_cast<int>(k), false),
                                     fam.kind, false);
      }
      if (ph == Phase::Outer && two_phase_) {
        for (size_t k = 0; k < fam.outer_decay.size(); ++k) {
          if (fam.outer_decay[k] == 0.0) continue;
          u += fam.outer_decay[k] *
               term_value_2d(holomorphic_term(T, static_cast<int>(k), true),
                             fam.kind, true);
        }
      }
    }
    return u;
  }

  TablesZonal T;
  build_tables_zonal(x, params_.dim, K, ph == Phase::Outer && two_phase_, T);
  const auto& fam = families_[0];
  const auto& grow = ph == Phase::Inner ? fam.inner : fam.outer_grow;
  for (size_t k = 0; k < grow.size(); ++k)
    if (grow[k] != 0.0)
      u += grow[k] * term_value_zonal(T, static_cast<int>(k), kGrow, params_.dim);
  if (ph == Phase::Outer && two_phase_)
    for (size_t k = 0; k < fam.outer_decay.size(); ++k)
      if (fam.outer_decay[k] != 0.0)
        u += fam.outer_decay[k] *
             term_value_zonal(T, static_cast<int>(k), kDecay, params_.dim);
  return u;
}

Eigen::VectorXd SpectralSolution::gradient(const Eigen::VectorXd& x,
                                           Phase phase) const {
  double r;
  const Phase ph = classify(x, phase, r);
  const double sig = ph == Phase::Inner ? params_.sigma : 1.0;
  Eigen::VectorXd g = -x / (params_.dim * sig);
  const int K = disc_.truncation;

  if (r == 0.0) {
    // Only degree-1 harmonics contribute to the gradient at the center.
    for (const auto& fam : families_) {
      const auto& grow = ph == Phase::Inner ? fam.inner : fam.outer_grow;
      if (grow.size() <= 1 || K < 1) continue;
      const double c = grow[1];
      if (fam.kind == ModeKind::Sin)
        g[1] += c;
      else
        g[0] += c;
    }
    return g;
  }

  if (params_.dim == 2) {
    Tables2D T;
    build_tables_2d(x[0], x[1], K, ph == Phase::Outer && two_phase_, T);
    double tg[2];
    for (const auto& fam : families_) {
      const auto& grow = ph == Phase::Inner ? fam.inner : fam.outer_grow;
      for (size_t k = 0; k < grow.size(); ++k) {
        if (grow[k] == 0.0) continue;
        term_grad_2d(holomorphic_term(T, static_cast<int>(k), false), fam.kind,
                     false, tg);
        g[0] += grow[k] * tg[0];
        g[1] += grow[k] * tg[1];
      }
      if (ph == Phase::Outer && two_phase_) {
        for (size_t k = 0; k < fam.outer_decay.size(); ++k) {
          if (fam.outer_decay[k] == 0.0) continue;
          term_grad_2d(holomorphic_term(T, static_cast<int>(k), true), fam.kind,
                       true, tg);
          g[0] += fam.outer_decay[k] * tg[0];
          g[1] += fam.outer_decay[k] * tg[1];
        }
      }
    }
    return g;
  }

  TablesZonal T;
  build_tables_zonal(x, params_.dim, K, ph == Phase::Outer && two_phase_, T);
  Eigen::VectorXd tg(params_.dim);
  const auto& fam = families_[0];
  const auto& grow = ph == Phase::Inner ? fam.inner : fam.outer_grow;
  for (size_t k = 0; k < grow.size(); ++k) {
    if (grow[k] == 0.0) continue;
    term_grad_zonal(T, static_cast<int>(k), kGrow, params_.dim, tg);
    g += grow[k] * tg;
  }
  if (ph == Phase::Outer && two_phase_)
    for (size_t k = 0; k < fam.outer_decay.size(); ++k) {
      if (fam.outer_decay[k] == 0.0) continue;
      term_grad_zonal(T, static_cast<int>(k), kDecay, params_.dim, tg);
      g += fam.outer_decay[k] * tg;
    }
  return g;
}

Eigen::MatrixXd SpectralSolution::hessian(const Eigen::VectorXd& x,
                                          Phase phase) const {
  double r;
  const Phase ph = classify(x, phase, r);
  const double sig = ph == Phase::Inner ? params_.sigma : 1.0;
  const int N = params_.dim;
  Eigen::MatrixXd h =
      -Eigen::MatrixXd::Identity(N, N) / (static_cast<double>(N) * sig);
  const int K = disc_.truncation;

  if (r == 0.0) {
    // Only degree-2 harmonics contribute to the Hessian at the center.
    if (K < 2) return h;
    if (N == 2) {
      for (const auto& fam : families_) {
        const auto& grow = ph == Phase::Inner ? fam.inner : fam.outer_grow;
        if (grow.size() <= 2) continue;
        const double c = grow[2];
        if (fam.kind == ModeKind::Sin) {
          h(0, 1) += 2.0 * c;
          h(1, 0) += 2.0 * c;
        } else {
          h(0, 0) += 2.0 * c;
          h(1, 1) -= 2.0 * c;
        }
      }
      return h;
    }
    const auto& grow =
        ph == Phase::Inner ? families_[0].inner : families_[0].outer_grow;
    if (grow.size() > 2 && grow[2] != 0.0) {
      // r^2 \hat Y_2 is the quadratic A x_1^2 + B |x'|^2 with A = 1,
      // B = \hat Y_2(0) = -1/(N-1).
      const double B = zonal_basis_theta_derivs(2, N, std::numbers::pi / 2).value;
      for (int i = 0; i < N; ++i) h(i, i) += grow[2] * 2.0 * (i == 0 ? 1.0 : B);
    }
    return h;
  }

  if (N == 2) {
    Tables2D T;
    build_tables_2d(x[0], x[1], K, ph == Phase::Outer && two_phase_, T);
    Eigen::MatrixXd th(2, 2);
    for (const auto& fam : families_) {
      const auto& grow = ph == Phase::Inner ? fam.inner : fam.outer_grow;
      for (size_t k = 0; k < grow.size(); ++k) {
        if (grow[k] == 0.0) continue;
        term_hess_2d(holomorphic_term(T, static_cast<int>(k), false), fam.kind,
                     false, th);
        h += grow[k] * th;
      }
      if (ph == Phase::Outer && two_phase_) {
        for (size_t k = 0; k < fam.outer_decay.size(); ++k) {
          if (fam.outer_decay[k] == 0.0) continue;
          term_hess_2d(holomorphic_term(T, static_cast<int>(k), true), fam.kind,
                       true, th);
          h += fam.outer_decay[k] * th;
        }
      }
    }
    return h;
  }

  TablesZonal T;
  build_tables_zonal(x, N, K, ph == Phase::Outer && two_phase_, T);
  Eigen::MatrixXd th(N, N);
  const auto& fam = families_[0];
  const auto& grow = ph == Phase::Inner ? fam.inner : fam.outer_grow;
  for (size_t k = 0; k < grow.size(); ++k) {
    if (grow[k] == 0.0) continue;
    term_hess_zonal(T, static_cast<int>(k), kGrow, N, th);
    h += grow[k] * th;
  }
  if (ph == Phase::Outer && two_phase_)
    for (size_t k = 0; k < fam.outer_decay.size(); ++k) {
      if (fam.outer_decay[k] == 0.0) continue;
      term_hess_zonal(T, static_cast<int>(k), kDecay, N, th);
      h += fam.outer_decay[k] * th;
    }
  return h;
}

SpectralSolution solve_transmission(const ProblemParams& params,
                                    const ShapeCoeffs& f, const ShapeCoeffs& g,
                                    const Discretization& disc) {
  params.validate();
  disc.validate();
  f.validate();
  g.validate();
  const int N = params.dim;
  if (f.dim() != N || g.dim() != N)
    throw InputError("solve_transmission: shape dimension mismatch");
  const bool two_phase = !params.one_phase();
  if (!two_phase && !f.is_zero())
    throw InputError("solve_transmission: core perturbation given but R = 0");

  SpectralSolution sol;
  sol.params_ = params;
  sol.disc_ = disc;
  sol.two_phase_ = two_phase;
  sol.core_ = BoundaryCurve{N, params.core_radius, f};
  sol.outer_ = BoundaryCurve{N, 1.0, g};

  // Perturbative-regime guard: amplitudes stay well below the interface gap
  // and the interfaces may not touch.
  const double gap = 1.0 - params.core_radius;
  const double sup_f = sup_abs_on_grid(f), sup_g = sup_abs_on_grid(g);
  if (sup_f >= 0.3 * gap || sup_g >= 0.3 * gap) {
    std::ostringstream os;
    os << "solve_transmission: perturbation amplitude (sup |f| = " << sup_f
       << ", sup |g| = " << sup_g << ") exceeds 0.3 x interface gap " << gap;
    throw InputError(os.str());
  }
  {
    const int probe = 1024;
    const double span = N == 2 ? 2.0 * std::numbers::pi : std::numbers::pi;
    for (int i = 0; i <= probe; ++i) {
      const double theta = span * i / probe;
      const double rg = sol.outer_.radius(theta);
      const double rf = two_phase ? sol.core_.radius(theta) : 0.0;
      if (!(rg > 0.0) || (two_phase && !(rf > 0.0)))
        throw InputError("solve_transmission: boundary radius not positive");
      if (two_phase && rf >= rg)
        throw InputError(
            "solve_transmission: interfaces touch or cross at theta = " +
            std::to_string(theta));
    }
  }

  const int K = disc.truncation;
  const bool with_sine =
      N == 2 && !(f.reflection_symmetric() && g.reflection_symmetric());
  const auto fams = family_layout(N, with_sine);

  // Column list.
  std::vector<ColumnMeta> cols;
  for (int fi = 0; fi < static_cast<int>(fams.size()); ++fi) {
    if (two_phase)
      for (int k = fams[fi].min_degree; k <= K; ++k)
        cols.push_back({fi, kInner, k});
    for (int k = fams[fi].min_degree; k <= K; ++k)
      cols.push_back({fi, kGrow, k});
    if (two_phase)
      for (int k = fams[fi].min_degree; k <= K; ++k)
        cols.push_back({fi, kDecay, k});
  }
  const int ncols = static_cast<int>(cols.size());

  const int M = disc.collocation;
  const auto outer_nodes = collocation_angles(N, M);
  const auto core_nodes = two_phase ? collocation_angles(N, M)
                                    : std::vector<double>{};
  const int nrows = static_cast<int>(outer_nodes.size()) +
                    2 * static_cast<int>(core_nodes.size());

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nrows, ncols);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(nrows);

  auto fill_point_rows = [&](const Eigen::VectorXd& x,
                             const Eigen::VectorXd* normal, int row_u,
                             int row_flux, bool on_core) {
    const double r2 = x.squaredNorm();
    if (N == 2) {
      Tables2D T;
      build_tables_2d(x[0], x[1], K, two_phase, T);
      double tg[2];
      for (int c = 0; c < ncols; ++c) {
        const ColumnMeta& cm = cols[c];
        const ModeKind kind = fams[cm.family].kind;
        const bool decay = cm.block == kDecay;
        const ComplexDerivs cd = holomorphic_term(T, cm.degree, decay);
        const double val = term_value_2d(cd, kind, decay);
        if (on_core) {
          const double side = cm.block == kInner ? 1.0 : -1.0;
          A(row_u, c) = side * val;
          term_grad_2d(cd, kind, decay, tg);
          const double dn = tg[0] * (*normal)[0] + tg[1] * (*normal)[1];
          A(row_flux, c) = (cm.block == kInner ? params.sigma : -1.0) * dn;
        } else if (cm.block != kInner) {
          A(row_u, c) = val;
        }
      }
    } else {
      TablesZonal T;
      build_tables_zonal(x, N, K, two_phase, T);
      Eigen::VectorXd tg(N);
      for (int c = 0; c < ncols; ++c) {
        const ColumnMeta& cm = cols[c];
        const Block blk = cm.block == kDecay ? kDecay : kGrow;
        const double val = term_value_zonal(T, cm.degree, blk, N);
        if (on_core) {
          const double side = cm.block == kInner ? 1.0 : -1.0;
          A(row_u, c) = side * val;
          term_grad_zonal(T, cm.degree, blk, N, tg);
          A(row_flux, c) =
              (cm.block == kInner ? params.sigma : -1.0) * tg.dot(*normal);
        } else if (cm.block != kInner) {
          A(row_u, c) = val;
        }
      }
    }
    if (on_core)
      b[row_u] = r2 / (2.0 * N) * (1.0 / params.sigma - 1.0);
    else
      b[row_u] = r2 / (2.0 * N);
  };

  int row = 0;
  for (double theta : core_nodes) {
    const Eigen::VectorXd x = sol.core_.point(theta);
    const Eigen::VectorXd n = sol.core_.outward_normal(theta);
    fill_point_rows(x, &n, row, row + 1, true);
    row += 2;
  }
  for (double theta : outer_nodes) {
    const Eigen::VectorXd x = sol.outer_.point(theta);
    fill_point_rows(x, nullptr, row, -1, false);
    row += 1;
  }

  // Unit max-magnitude column scaling keeps the r^{2-N-k} columns workable.
  Eigen::VectorXd scale(ncols);
  for (int c = 0; c < ncols; ++c) {
    const double m = A.col(c).cwiseAbs().maxCoeff();
    scale[c] = m > 0.0 ? m : 1.0;
    A.col(c) /= scale[c];
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(A,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double sv_max = svd.singularValues()(0);
  const double sv_min = svd.singularValues()(svd.singularValues().size() - 1);
  if (!(sv_min > disc.rank_tolerance * sv_max)) {
    std::ostringstream os;
    os << "solve_transmission: rank-deficient collocation system, smallest "
          "singular value "
       << sv_min << " (largest " << sv_max << ")";
    throw NumericalError(os.str());
  }
  svd.setThreshold(disc.rank_tolerance);
  Eigen::VectorXd y = svd.solve(b);

  // Unscale and unpack into per-family coefficient arrays.
  sol.families_.resize(fams.size());
  for (size_t fi = 0; fi < fams.size(); ++fi) {
    auto& fam = sol.families_[fi];
    fam.kind = fams[fi].kind;
    // Arrays are degree-indexed; the sin family's degree-0 slot stays 0.
    if (two_phase) fam.inner.assign(K + 1, 0.0);
    fam.outer_grow.assign(K + 1, 0.0);
    if (two_phase) fam.outer_decay.assign(K + 1, 0.0);
  }
  for (int c = 0; c < ncols; ++c) {
    const ColumnMeta& cm = cols[c];
    auto& fam = sol.families_[cm.family];
    const double v = y[c] / scale[c];
    if (cm.block == kInner)
      fam.inner[cm.degree] = v;
    else if (cm.block == kGrow)
      fam.outer_grow[cm.degree] = v;
    else
      fam.outer_decay[cm.degree] = v;
  }

  // Defect verification on a grid 4x finer than collocation.
  ResidualReport rep;
  const auto ver_outer = verification_angles(N, 4 * M);
  for (double theta : ver_outer) {
    const Eigen::VectorXd x = sol.outer_.point(theta);
    rep.dirichlet =
        std::max(rep.dirichlet, std::abs(sol.value(x, Phase::Outer)));
  }
  if (two_phase) {
    for (double theta : verification_angles(N, 4 * M)) {
      const Eigen::VectorXd x = sol.core_.point(theta);
      const Eigen::VectorXd n = sol.core_.outward_normal(theta);
      const double jump_u =
          sol.value(x, Phase::Inner) - sol.value(x, Phase::Outer);
      const double jump_flux = params.sigma * sol.gradient(x, Phase::Inner).dot(n) -
                               sol.gradient(x, Phase::Outer).dot(n);
      rep.interface_value = std::max(rep.interface_value, std::abs(jump_u));
      rep.interface_flux = std::max(rep.interface_flux, std::abs(jump_flux));
    }
  }
  rep.warning = rep.overall() > disc.residual_warn;
  sol.residual_ = rep;
  return sol;
}

} // namespace twophase
