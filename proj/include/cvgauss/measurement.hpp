#pragma once

// Conditional Gaussian states after projective Gaussian measurements and
// homodyne detection.

#include <cvgauss/types.hpp>

#include <span>
#include <vector>

namespace cvgauss {

/// Moore-Penrose inverse of a symmetric matrix by spectral decomposition.
/// Eigenvalues with |e| <= rel_tol * max|e| are treated as zero.
Matrix mp_inverse(const Matrix& m, double rel_tol = 1e-12);

/// Product of the eigenvalues kept by mp_inverse (1 for the zero matrix).
double pseudo_determinant(const Matrix& m, double rel_tol = 1e-12);

/// Gamma = [[C1, C3], [C3^T, C2]] with subsystem 1 kept and subsystem 2
/// measured.
struct BlockedCovariance {
  Matrix kept;          // C1, 2N x 2N
  Matrix measured;      // C2, 2M x 2M
  Matrix correlations;  // C3, 2N x 2M

  /// Splits gamma into kept modes (in ascending order) and the given
  /// measured modes (in the order listed).
  static BlockedCovariance split(const CovarianceMatrix& gamma, std::span<const int> measured_modes);

  Matrix assemble() const;
};

struct ConditionalResult {
  CovarianceMatrix gamma_out;
  /// [det(C2 + D^2)]^{-1/2}, unnormalised. For vacuum projection the
  /// physical probability is 2^M times this value.
  double prob_factor;
  /// C3 (C2 + D^2)^+; conditional mean shift per unit displacement of the
  /// projector relative to the measured subsystem's mean.
  Matrix mean_map;
};

/// Projection of subsystem 2 onto a Gaussian state with covariance D^2
/// (D diagonal, given by its diagonal entries):
///   Gamma' = C1 - C3 (C2 + D^2)^+ C3^T.
/// A singular C2 + D^2 is handled with the Moore-Penrose inverse and the
/// pseudo-determinant. Throws PhysicalityError if the assembled Gamma is
/// unphysical (tolerance tol * max(1, max|Gamma|)).
ConditionalResult gaussian_project(const BlockedCovariance& blocks, const Vector& d_diagonal,
                                   double tol = kDefaultTol);

enum class Quadrature { X, P };

struct QuadratureIndex {
  int mode;
  Quadrature quadrature;
};

/// Result of homodyne detection of one quadrature on each of several modes.
///
/// Conventions follow the characteristic function
/// chi(lambda) = exp(-1/4 lambda^T Gamma lambda + i lambda^T Sigma kappa): a
/// measured x deletes the x-components of lambda, and the remaining Gaussian
/// integral runs over the conjugate p-components. The projector pi therefore
/// selects the conjugates of the measured quadratures, and the outcome vector
/// enters with signs (+X for an x measurement, -X for a p measurement), e.g.
/// (X_x0, -X_p1). Outcomes are in natural quadrature units: the x-outcome of
/// the vacuum has density exp(-X^2)/sqrt(pi).
struct HomodyneResult {
  /// B - N^T (pi M pi)^+ N over the unmeasured modes (0x0 if none remain).
  CovarianceMatrix gamma_out{Matrix(0, 0)};
  /// Columns of N^T (pi M pi)^+ at the selected conjugates: maps the signed
  /// outcome vector to the linear term Sigma kappa of the conditional state.
  Matrix mean_map;
  /// The square block of pi M pi (covariance of the signed outcomes is half
  /// of it).
  Matrix outcome_block;
  /// Centre of the signed outcome density.
  Vector outcome_center;
  /// Sigma kappa restricted to the unmeasured modes, before conditioning.
  Vector kept_linear;
  /// +1 for x measurements, -1 for p, in outcome order.
  std::vector<int> signs;
  /// Modes left after the measurement, ascending.
  std::vector<int> kept_modes;

  /// Maps raw outcomes (X_1, X_2, ...) to the signed vector.
  Vector signed_outcomes(const Vector& raw) const;

  /// p(v) = exp[-(v - c)^T K^+ (v - c)] / (pi^{k/2} sqrt(pdet K)).
  double density(const Vector& signed_outcome) const;

  /// Conditional state of the unmeasured modes for a given signed outcome.
  GaussianState conditional_state(const Vector& signed_outcome) const;
};

/// Homodyne detection of at most one quadrature per mode. Throws
/// DimensionError for invalid or repeated modes and PhysicalityError for an
/// unphysical input (tolerance tol * max(1, max|Gamma|)).
HomodyneResult homodyne_project(const GaussianState& state, std::span<const QuadratureIndex> measured,
                                double tol = kDefaultTol);

HomodyneResult homodyne_project(const CovarianceMatrix& gamma,
                                std::span<const QuadratureIndex> measured, double tol = kDefaultTol);

/// Sigma Gamma Sigma^T: the covariance that homodyne_project() must be given
/// so that its "x" label refers to the physical x quadrature of a state with
/// covariance Gamma.
CovarianceMatrix characteristic_frame(const CovarianceMatrix& gamma);

}  // namespace cvgauss
