#include <cvgauss/fock.hpp>

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace cvgauss::fock {
namespace {

Eigen::Index basis_size(int modes, int levels) {
  Eigen::Index size = 1;
  for (int k = 0; k < modes; ++k) size *= levels;
  return size;
}

Eigen::Index stride_of(int mode, int modes, int levels) { return basis_size(modes - 1 - mode, levels); }

int digit(Eigen::Index index, int mode, int modes, int levels) {
  return static_cast<int>((index / stride_of(mode, modes, levels)) % levels);
}

void require_cutoff(int cutoff, const char* what) {
  if (cutoff < 1) throw DomainError(std::string(what) + ": cutoff must be >= 1");
}

void require_mode(const FockState& state, int mode, const char* what) {
  if (mode < 0 || mode >= state.modes) {
    throw DimensionError(std::string(what) + ": mode " + std::to_string(mode) + " out of range");
  }
}

// Index of the basis state with the given mode's digit removed.
Eigen::Index drop_digit(Eigen::Index index, int mode, int modes, int levels) {
  const Eigen::Index stride = stride_of(mode, modes, levels);
  const Eigen::Index high = index / (stride * levels);
  const Eigen::Index low = index % stride;
  return high * stride + low;
}

struct Ladder {
  int mode;
  bool dagger;
};

// Tr(rho O) for O = ops[0] ops[1] ... (the last one acts first). A monomial
// maps each basis state to a multiple of one basis state, so this is exact on
// the truncated space.
Complex expectation(const FockState& state, std::initializer_list<Ladder> ops) {
  const int levels = state.levels();
  const Eigen::Index size = state.rho.rows();
  const std::vector<Ladder> seq(ops);
  Complex total = 0.0;
  for (Eigen::Index n = 0; n < size; ++n) {
    double coef = 1.0;
    Eigen::Index target = n;
    for (auto it = seq.rbegin(); it != seq.rend() && coef != 0.0; ++it) {
      const int d = digit(target, it->mode, state.modes, levels);
      const Eigen::Index stride = stride_of(it->mode, state.modes, levels);
      if (it->dagger) {
        if (d + 1 >= levels) {
          coef = 0.0;
        } else {
          coef *= std::sqrt(static_cast<double>(d + 1));
          target += stride;
        }
      } else {
        if (d == 0) {
          coef = 0.0;
        } else {
          coef *= std::sqrt(static_cast<double>(d));
          target -= stride;
        }
      }
    }
    // O|n> = coef |target>, so <n| rho O |n> = coef rho(n, target).
    if (coef != 0.0) total += coef * state.rho(n, target);
  }
  return total;
}

double real_trace(const CMatrix& m) { return m.diagonal().real().sum(); }

}  // namespace

FockState density(const FockKet& ket) {
  return {ket.modes, ket.cutoff, ket.amplitudes * ket.amplitudes.adjoint(), ket.truncation_weight};
}

FockState build_tmsv_fock(double zeta, int cutoff, double budget) {
  require_cutoff(cutoff, "build_tmsv_fock");
  const double q = std::tanh(zeta);
  const int levels = cutoff + 1;
  const double weight = std::pow(q * q, levels);
  if (weight > budget) {
    throw DomainError("build_tmsv_fock: truncation weight " + std::to_string(weight) +
                      " exceeds the budget " + std::to_string(budget));
  }
  FockKet ket{2, cutoff, CVector::Zero(basis_size(2, levels)), weight};
  double qn = 1.0;
  for (int n = 0; n < levels; ++n) {
    ket.amplitudes(n * levels + n) = std::sqrt(1.0 - q * q) * qn;
    qn *= q;
  }
  ket.amplitudes.normalize();
  return density(ket);
}

FockKet pure_gaussian_ket(const CovarianceMatrix& gamma, int cutoff) {
  require_cutoff(cutoff, "pure_gaussian_ket");
  if (gamma.modes() != 1) throw DimensionError("pure_gaussian_ket: expected a 2x2 covariance matrix");
  const double x = gamma(0, 0);
  const double y = gamma(1, 1);
  const double z = gamma(0, 1);
  if (!(x > 0.0) || std::abs(x * y - z * z - 1.0) > 1e-9 * std::max(1.0, x * y)) {
    throw PhysicalityError("pure_gaussian_ket: covariance matrix is not that of a pure state");
  }
  const Complex a = Complex(1.0, -z) / x;
  const Complex mu = (1.0 - a) / (1.0 + a);

  CVector c = CVector::Zero(cutoff + 1);
  c(0) = 1.0;
  for (int n = 1; n < cutoff; ++n) {
    c(n + 1) = mu * std::sqrt(static_cast<double>(n) / (n + 1)) * c(n - 1);
  }
  // sum_k |mu|^{2k} C(2k, k) / 4^k = (1 - |mu|^2)^{-1/2}
  const double full_norm = 1.0 / std::sqrt(std::sqrt(1.0 - std::norm(mu)));
  const double kept = c.norm();
  FockKet ket{1, cutoff, c / kept, std::max(0.0, 1.0 - (kept * kept) / (full_norm * full_norm))};
  return ket;
}

FockState gaussian_fock(const CovarianceMatrix& gamma, int cutoff) {
  require_cutoff(cutoff, "gaussian_fock");
  if (gamma.modes() != 1) throw DimensionError("gaussian_fock: expected a 2x2 covariance matrix");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gamma.matrix());
  const double lo = eig.eigenvalues()(0);
  const double hi = eig.eigenvalues()(1);
  if (!(lo > 0.0) || lo * hi < 1.0 - 1e-9) {
    throw PhysicalityError("gaussian_fock: covariance matrix is unphysical");
  }
  const double nu = std::sqrt(lo * hi);
  const double nbar = std::max(0.0, 0.5 * (nu - 1.0));
  const double zeta = 0.25 * std::log(hi / lo);
  const Vector major = eig.eigenvectors().col(1);
  const double theta = std::atan2(major(1), major(0));

  // Squeezing and the thermal tail are resolved in a larger space; only the
  // top rows of that space are affected by its own truncation.
  const int big = 2 * (cutoff + 1) + 60;
  Matrix a = Matrix::Zero(big, big);
  for (int n = 1; n < big; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Matrix a2 = a * a;
  // exp[(r/2)(a^2 - a^dag^2)] maps x -> e^{-r} x; r = -zeta stretches x by e^zeta.
  const Matrix generator = (-zeta / 2.0) * (a2 - a2.transpose());
  const Matrix squeeze = generator.exp();

  Vector thermal(big);
  const double ratio = nbar / (nbar + 1.0);
  double p = 1.0 / (nbar + 1.0);
  for (int n = 0; n < big; ++n) {
    thermal(n) = p;
    p *= ratio;
  }
  const Matrix squeezed = squeeze * thermal.asDiagonal() * squeeze.transpose();

  const int levels = cutoff + 1;
  CMatrix rho(levels, levels);
  for (int m = 0; m < levels; ++m) {
    for (int n = 0; n < levels; ++n) {
      // Rotation by theta in phase space is e^{i theta a^dag a} on states.
      rho(m, n) = std::polar(squeezed(m, n), theta * (m - n));
    }
  }
  const double kept = real_trace(rho);
  return {1, cutoff, rho / kept, std::max(0.0, 1.0 - kept)};
}

FockState thermal_fock(double mean_photons, int cutoff) {
  require_cutoff(cutoff, "thermal_fock");
  if (!(mean_photons >= 0.0)) throw DomainError("thermal_fock: mean photon number must be >= 0");
  const int levels = cutoff + 1;
  CMatrix rho = CMatrix::Zero(levels, levels);
  const double ratio = mean_photons / (mean_photons + 1.0);
  double p = 1.0 / (mean_photons + 1.0);
  for (int n = 0; n < levels; ++n) {
    rho(n, n) = p;
    p *= ratio;
  }
  const double kept = real_trace(rho);
  return {1, cutoff, rho / kept, std::pow(ratio, levels)};
}

FockState tensor(const FockState& a, const FockState& b) {
  if (a.cutoff != b.cutoff) throw DimensionError("tensor: cutoffs differ");
  const Eigen::Index na = a.rho.rows();
  const Eigen::Index nb = b.rho.rows();
  CMatrix rho(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < na; ++j) rho.block(i * nb, j * nb, nb, nb) = a.rho(i, j) * b.rho;
  }
  const double weight = 1.0 - (1.0 - a.truncation_weight) * (1.0 - b.truncation_weight);
  return {a.modes + b.modes, a.cutoff, rho, weight};
}

FockState apply_loss_fock(const FockState& state, int mode, double transmittance) {
  require_mode(state, mode, "apply_loss_fock");
  if (!(transmittance >= 0.0 && transmittance <= 1.0)) {
    throw DomainError("apply_loss_fock: transmittance must lie in [0,1]");
  }
  const int levels = state.levels();
  // kraus(k, n) = sqrt(C(n,k) T^{n-k} (1-T)^k)
  Matrix kraus = Matrix::Zero(levels, levels);
  for (int n = 0; n < levels; ++n) {
    for (int k = 0; k <= n; ++k) {
      const double log_binom = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
      kraus(k, n) = std::exp(0.5 * log_binom) * std::pow(transmittance, 0.5 * (n - k)) *
                    std::pow(1.0 - transmittance, 0.5 * k);
    }
  }
  const Eigen::Index stride = stride_of(mode, state.modes, levels);
  const Eigen::Index size = state.rho.rows();
  CMatrix out = CMatrix::Zero(size, size);
  for (Eigen::Index c = 0; c < size; ++c) {
    const int n = digit(c, mode, state.modes, levels);
    for (Eigen::Index r = 0; r < size; ++r) {
      const Complex value = state.rho(r, c);
      if (value == 0.0) continue;
      const int m = digit(r, mode, state.modes, levels);
      for (int k = 0; k <= std::min(m, n); ++k) {
        out(r - k * stride, c - k * stride) += kraus(k, m) * kraus(k, n) * value;
      }
    }
  }
  return {state.modes, state.cutoff, out, state.truncation_weight};
}

FockState partial_trace_keep(const FockState& state, std::span<const int> keep) {
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  for (int m : kept) require_mode(state, m, "partial_trace_keep");
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw DimensionError("partial_trace_keep: mode listed twice");
  }
  const int levels = state.levels();
  const int out_modes = static_cast<int>(kept.size());
  const Eigen::Index out_size = basis_size(out_modes, levels);
  const Eigen::Index size = state.rho.rows();

  std::vector<Eigen::Index> reduced(size);
  std::vector<Eigen::Index> traced(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    Eigen::Index r = 0;
    Eigen::Index t = 0;
    for (int m = 0; m < state.modes; ++m) {
      const int d = digit(i, m, state.modes, levels);
      if (std::binary_search(kept.begin(), kept.end(), m)) {
        r = r * levels + d;
      } else {
        t = t * levels + d;
      }
    }
    reduced[i] = r;
    traced[i] = t;
  }
  CMatrix out = CMatrix::Zero(out_size, out_size);
  for (Eigen::Index c = 0; c < size; ++c) {
    for (Eigen::Index r = 0; r < size; ++r) {
      if (traced[r] == traced[c]) out(reduced[r], reduced[c]) += state.rho(r, c);
    }
  }
  return {out_modes, state.cutoff, out, state.truncation_weight};
}

FockNegativity log_negativity_fock(const FockState& state, LogBase base, double budget) {
  if (state.modes != 2) throw DimensionError("log_negativity_fock: expected a two-mode state");
  const int d = state.levels();
  const Eigen::Index size = state.rho.rows();
  CMatrix pt(size, size);
  for (int m0 = 0; m0 < d; ++m0) {
    for (int m1 = 0; m1 < d; ++m1) {
      for (int n0 = 0; n0 < d; ++n0) {
        for (int n1 = 0; n1 < d; ++n1) pt(m0 * d + m1, n0 * d + n1) = state.rho(m0 * d + n1, n0 * d + m1);
      }
    }
  }
  double trace_norm = 0.0;
  if (pt.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(pt.real(), Eigen::EigenvaluesOnly);
    trace_norm = eig.eigenvalues().cwiseAbs().sum();
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(pt, Eigen::EigenvaluesOnly);
    trace_norm = eig.eigenvalues().cwiseAbs().sum();
  }

  double boundary = 0.0;
  for (int mode = 0; mode < 2; ++mode) {
    double pop = 0.0;
    for (Eigen::Index i = 0; i < size; ++i) {
      if (digit(i, mode, 2, d) == state.cutoff) pop += state.rho(i, i).real();
    }
    boundary = std::max(boundary, pop);
  }
  return {log_in(base, trace_norm), boundary, boundary > budget};
}

FockMoments covariance_from_fock(const FockState& state) {
  const int n = state.modes;
  // Ladder expectations: mean_a(i) = <a_i>, aa(i,j) = <a_i a_j>, ada(i,j) = <a_i^dag a_j>.
  CVector mean_a(n);
  CMatrix aa(n, n);
  CMatrix ada(n, n);
  for (int i = 0; i < n; ++i) {
    mean_a(i) = expectation(state, {{i, false}});
    for (int j = 0; j < n; ++j) {
      aa(i, j) = expectation(state, {{i, false}, {j, false}});
      ada(i, j) = expectation(state, {{i, true}, {j, false}});
    }
  }

  // b = (a_0, a_0^dag, a_1, a_1^dag, ...); sym(k,l) = <{b_k, b_l}>/2.
  CMatrix sym(2 * n, 2 * n);
  CVector mean_b(2 * n);
  for (int i = 0; i < n; ++i) {
    mean_b(2 * i) = mean_a(i);
    mean_b(2 * i + 1) = std::conj(mean_a(i));
    for (int j = 0; j < n; ++j) {
      const double delta = i == j ? 0.5 : 0.0;
      sym(2 * i, 2 * j) = aa(i, j);
      sym(2 * i + 1, 2 * j + 1) = std::conj(aa(j, i));
      sym(2 * i, 2 * j + 1) = ada(j, i) + delta;
      sym(2 * i + 1, 2 * j) = ada(i, j) + delta;
    }
  }
  const double h = 1.0 / std::numbers::sqrt2;
  CMatrix u = CMatrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    u(2 * i, 2 * i) = h;
    u(2 * i, 2 * i + 1) = h;
    u(2 * i + 1, 2 * i) = Complex(0.0, -h);
    u(2 * i + 1, 2 * i + 1) = Complex(0.0, h);
  }
  const Vector mean = (u * mean_b).real();
  const Matrix second = (u * sym * u.transpose()).real();
  return {mean, 2.0 * (second - mean * mean.transpose())};
}

double QuadratureTable::orthonormality_error() const {
  const Matrix gram = values * values.transpose() * spacing;
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

QuadratureTable make_quadrature_table(int cutoff, double lo, double hi, int points) {
  require_cutoff(cutoff, "make_quadrature_table");
  if (points < 2 || !(hi > lo)) throw DomainError("make_quadrature_table: invalid grid");
  QuadratureTable t;
  t.grid = Vector::LinSpaced(points, lo, hi);
  t.spacing = (hi - lo) / (points - 1);
  t.values.resize(cutoff + 1, points);
  const double norm = std::pow(std::numbers::pi, -0.25);
  for (int j = 0; j < points; ++j) {
    const double x = t.grid(j);
    t.values(0, j) = norm * std::exp(-0.5 * x * x);
    t.values(1, j) = std::numbers::sqrt2 * x * t.values(0, j);
    for (int n = 1; n < cutoff; ++n) {
      t.values(n + 1, j) = std::sqrt(2.0 / (n + 1)) * x * t.values(n, j) -
                           std::sqrt(static_cast<double>(n) / (n + 1)) * t.values(n - 1, j);
    }
  }
  return t;
}

CVector quadrature_ket(const QuadratureTable& table, int grid_index, double phi) {
  if (grid_index < 0 || grid_index >= table.grid.size()) {
    throw DimensionError("quadrature_ket: grid index out of range");
  }
  const Eigen::Index levels = table.values.rows();
  CVector u(levels);
  for (Eigen::Index n = 0; n < levels; ++n) u(n) = std::polar(table.values(n, grid_index), phi * n);
  return u;
}

HomodyneDistribution homodyne_povm_fock(const FockState& state, int mode, double phi,
                                        const QuadratureTable& table) {
  require_mode(state, mode, "homodyne_povm_fock");
  if (table.values.rows() != state.levels()) {
    throw DimensionError("homodyne_povm_fock: table cutoff differs from the state's");
  }
  const int keep[] = {mode};
  const CMatrix rho = partial_trace_keep(state, keep).rho;
  HomodyneDistribution out{table.grid, Vector(table.grid.size()), 0.0};
  for (Eigen::Index j = 0; j < table.grid.size(); ++j) {
    const CVector u = quadrature_ket(table, static_cast<int>(j), phi);
    out.probability(j) = (u.adjoint() * rho * u)(0, 0).real();
  }
  out.normalization = out.probability.sum() * table.spacing;
  const double trace = real_trace(rho);
  if (std::abs(out.normalization - trace) > 1e-3) {
    throw DomainError("homodyne_povm_fock: grid too coarse, distribution integrates to " +
                      std::to_string(out.normalization));
  }
  return out;
}

ConditionalFock homodyne_condition_fock(const FockState& state, int mode, double phi,
                                        const QuadratureTable& table, int grid_index) {
  require_mode(state, mode, "homodyne_condition_fock");
  if (state.modes < 2) throw DimensionError("homodyne_condition_fock: no modes would remain");
  if (table.values.rows() != state.levels()) {
    throw DimensionError("homodyne_condition_fock: table cutoff differs from the state's");
  }
  const CVector u = quadrature_ket(table, grid_index, phi);
  const int levels = state.levels();
  const Eigen::Index size = state.rho.rows();
  const Eigen::Index out_size = basis_size(state.modes - 1, levels);
  CMatrix out = CMatrix::Zero(out_size, out_size);
  for (Eigen::Index c = 0; c < size; ++c) {
    const int n = digit(c, mode, state.modes, levels);
    const Eigen::Index cc = drop_digit(c, mode, state.modes, levels);
    for (Eigen::Index r = 0; r < size; ++r) {
      const int m = digit(r, mode, state.modes, levels);
      out(drop_digit(r, mode, state.modes, levels), cc) += std::conj(u(m)) * state.rho(r, c) * u(n);
    }
  }
  const double p = real_trace(out);
  return {p, {state.modes - 1, state.cutoff, out / p, state.truncation_weight}};
}

double overlap_fock(const FockKet& ket, const FockState& rho) {
  if (ket.amplitudes.size() != rho.rho.rows()) throw DimensionError("overlap_fock: dimensions differ");
  return (ket.amplitudes.adjoint() * rho.rho * ket.amplitudes)(0, 0).real();
}

double vacuum_probability(const FockState& state, std::span<const int> modes) {
  for (int m : modes) require_mode(state, m, "vacuum_probability");
  double p = 0.0;
  for (Eigen::Index i = 0; i < state.rho.rows(); ++i) {
    bool vacuum = true;
    for (int m : modes) vacuum = vacuum && digit(i, m, state.modes, state.levels()) == 0;
    if (vacuum) p += state.rho(i, i).real();
  }
  return p;
}

}  // namespace cvgauss::fock
