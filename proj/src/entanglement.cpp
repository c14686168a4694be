#include <cvgauss/entanglement.hpp>
#include <cvgauss/symplectic.hpp>

#include <algorithm>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace cvgauss {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_two_modes(const CovarianceMatrix& gamma, const char* what) {
  if (gamma.modes() != 2) {
    throw DimensionError(std::string(what) + ": expected a 4x4 covariance matrix, got " +
                         std::to_string(gamma.dim()) + "x" + std::to_string(gamma.dim()));
  }
}

void require_physical(const CovarianceMatrix& gamma, double tol, const char* what) {
  if (!validate_covariance(gamma.matrix(), tol).physical) {
    throw PhysicalityError(std::string(what) + ": covariance matrix is unphysical");
  }
}

void require_squeezing(double zeta, const char* what) {
  if (!(zeta >= 0.0)) {
    throw DomainError(std::string(what) + ": zeta must be >= 0 (or inf), got " + std::to_string(zeta));
  }
}

void require_transmission(double t_mag, const char* what) {
  if (!(t_mag >= 0.0 && t_mag <= 1.0)) {
    throw DomainError(std::string(what) + ": |T| must lie in [0,1], got " + std::to_string(t_mag));
  }
}

// 1 - e^{-2 zeta}, exact for zeta = 0 and zeta = inf.
double squeezing_gap(double zeta) { return -std::expm1(-2.0 * zeta); }

double scaled_log(LogBase base, double natural) {
  return base == LogBase::Two ? natural / std::numbers::ln2 : natural;
}

}  // namespace

CovarianceMatrix partial_transpose(const CovarianceMatrix& gamma) {
  require_two_modes(gamma, "partial_transpose");
  const int second[] = {1};
  return partial_transpose(gamma, second);
}

CovarianceMatrix partial_transpose(const CovarianceMatrix& gamma, std::span<const int> modes) {
  Matrix g = gamma.matrix();
  for (int m : modes) {
    if (m < 0 || m >= gamma.modes()) {
      throw DimensionError("partial_transpose: mode " + std::to_string(m) + " out of range");
    }
    g.row(2 * m + 1) *= -1.0;
    g.col(2 * m + 1) *= -1.0;
  }
  return CovarianceMatrix(g);
}

SeparabilityVerdict is_separable(const CovarianceMatrix& gamma, double tol) {
  require_two_modes(gamma, "is_separable");
  require_physical(gamma, tol, "is_separable");

  const Matrix& g = gamma.matrix();
  const Matrix c1 = g.topLeftCorner(2, 2);
  const Matrix c2 = g.bottomRightCorner(2, 2);
  const Matrix c3 = g.topRightCorner(2, 2);
  const Matrix s = symplectic_form(1);

  const double d1 = c1.determinant();
  const double d2 = c2.determinant();
  const double gap = 1.0 - std::abs(c3.determinant());
  const double trace = (c1 * s * c3 * s * c2 * s * c3.transpose() * s).trace();

  SeparabilityVerdict v;
  v.lhs = d1 * d2 + gap * gap - trace;
  v.rhs = d1 + d2;
  v.pt_min_eig = validate_covariance(partial_transpose(gamma).matrix(), tol).min_eigenvalue;

  const double simon_scale = std::max({1.0, std::abs(v.lhs), std::abs(v.rhs)});
  const double pt_scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  const double simon_margin = v.lhs - v.rhs;
  const bool simon_separable = simon_margin >= -tol * simon_scale;
  const bool pt_separable = v.pt_min_eig >= -tol * pt_scale;

  if (simon_separable != pt_separable && std::abs(simon_margin) > tol * simon_scale &&
      std::abs(v.pt_min_eig) > tol * pt_scale) {
    throw ConsistencyError("is_separable: determinant criterion (margin " + std::to_string(simon_margin) +
                           ") and PT test (min eigenvalue " + std::to_string(v.pt_min_eig) +
                           ") disagree");
  }
  v.separable = simon_separable;
  return v;
}

NegativityReport log_negativity(const CovarianceMatrix& gamma, LogBase base, double tol) {
  require_two_modes(gamma, "log_negativity");
  require_physical(gamma, tol, "log_negativity");

  const Matrix& g = gamma.matrix();
  const double d1 = g.topLeftCorner(2, 2).determinant();
  const double d2 = g.bottomRightCorner(2, 2).determinant();
  const double d3 = g.topRightCorner(2, 2).determinant();
  const double det = g.determinant();

  const double half_sum = 0.5 * (d1 + d2) - d3;
  double disc = half_sum * half_sum - det;
  if (disc < 0.0) {
    if (disc < -tol * std::max(1.0, half_sum * half_sum)) {
      throw PhysicalityError("log_negativity: negative discriminant " + std::to_string(disc));
    }
    disc = 0.0;
  }
  // f^2 = h - sqrt(h^2 - det), written as det / (h + sqrt(h^2 - det)) to
  // avoid cancellation for strongly squeezed states.
  const double f_squared = det / (half_sum + std::sqrt(disc));
  const double f = std::sqrt(std::max(0.0, f_squared));

  // Near-degenerate PT eigenvalues make sqrt(h^2 - det) carry ~sqrt(eps) * h
  // of rounding, so the comparison is made on f^2 with that allowance.
  const Vector nu = symplectic_eigenvalues(partial_transpose(gamma));
  const double allowed = 1e-9 * std::max(1.0, f_squared) + 1e-7 * std::abs(half_sum);
  if (std::abs(nu(0) * nu(0) - f_squared) > allowed) {
    throw ConsistencyError("log_negativity: closed-form f = " + std::to_string(f) +
                           " differs from the PT symplectic eigenvalue " + std::to_string(nu(0)));
  }

  NegativityReport r{f, 0.0, base};
  if (f < 1.0) r.log_negativity = scaled_log(base, -0.5 * std::log(f_squared));
  return r;
}

double log_negativity_general(const CovarianceMatrix& gamma, std::span<const int> modes, LogBase base) {
  const Vector nu = symplectic_eigenvalues(partial_transpose(gamma, modes));
  double sum = 0.0;
  for (Eigen::Index k = 0; k < nu.size(); ++k) {
    if (nu(k) < 1.0) sum -= std::log(nu(k));
  }
  return scaled_log(base, sum);
}

double tmsv_entropy(double zeta) {
  if (zeta == 0.0) return 0.0;
  // 1 - q^2 = sech^2 zeta and q^2 / (1 - q^2) = sinh^2 zeta.
  const double a = std::abs(zeta);
  const double e = std::exp(-2.0 * a);
  const double log_q2 = 2.0 * (std::log1p(-e) - std::log1p(e));
  const double log_sech2 = -2.0 * (a + std::log1p(e) - std::numbers::ln2);
  const double sinh2 = std::sinh(a) * std::sinh(a);
  return -log_sech2 - sinh2 * log_q2;
}

double fiber_separability_threshold(double zeta, double t_mag, double r_mag) {
  require_squeezing(zeta, "fiber_separability_threshold");
  require_transmission(t_mag, "fiber_separability_threshold");
  if (!(r_mag >= 0.0 && r_mag <= 1.0)) {
    throw DomainError("fiber_separability_threshold: |R| must lie in [0,1]");
  }
  const double absorbed = 1.0 - r_mag * r_mag - t_mag * t_mag;
  if (absorbed < -1e-12) throw DomainError("fiber_separability_threshold: |T|^2 + |R|^2 exceeds 1");
  const double numerator = t_mag * t_mag * squeezing_gap(zeta);
  if (numerator == 0.0) return 0.0;
  if (absorbed <= 0.0) return kInf;
  return numerator / (2.0 * absorbed);
}

double separability_length(double zeta, double n_th, double absorption_length) {
  require_squeezing(zeta, "separability_length");
  if (!(n_th >= 0.0)) throw DomainError("separability_length: n_th must be >= 0");
  if (!(absorption_length > 0.0)) throw DomainError("separability_length: absorption length must be > 0");
  const double gap = squeezing_gap(zeta);
  if (gap == 0.0) return 0.0;
  if (n_th == 0.0) return kInf;
  return 0.5 * absorption_length * std::log1p(gap / (2.0 * n_th));
}

double transmitted_log_negativity(double zeta, double t_mag, LogBase base) {
  require_squeezing(zeta, "transmitted_log_negativity");
  require_transmission(t_mag, "transmitted_log_negativity");
  return scaled_log(base, -std::log1p(-t_mag * t_mag * squeezing_gap(zeta)));
}

double max_transmittable(double length, double absorption_length, LogBase base) {
  if (!(length >= 0.0)) throw DomainError("max_transmittable: length must be >= 0");
  if (!(absorption_length > 0.0)) throw DomainError("max_transmittable: absorption length must be > 0");
  return scaled_log(base, -std::log(-std::expm1(-2.0 * length / absorption_length)));
}

}  // namespace cvgauss
