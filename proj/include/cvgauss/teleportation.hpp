#pragma once

// Continuous-variable teleportation of a single-mode Gaussian state through
// a TMSV whose arms travel through absorbing fibers.
//
// Mode 0 carries the input, mode 1 the sender's TMSV arm, mode 2 the
// receiver's arm. The sender mixes modes 0 and 1 on a symmetric beam
// splitter and measures x of mode 0 and p of mode 1.

#include <cvgauss/channels.hpp>
#include <cvgauss/measurement.hpp>
#include <cvgauss/types.hpp>

#include <cstdint>

namespace cvgauss {

struct TeleportSetup {
  /// [[x, z], [z, y]], physical.
  CovarianceMatrix gamma_in;
  double zeta;
  FiberParams sender;
  FiberParams receiver;
};

struct TeleportResult {
  CovarianceMatrix gamma_rec;
  /// N^T (pi M pi)^+ with N = [[c2, -c1], [c1, c2]] and
  /// (pi M pi)^+ = [[a + x, z], [z, a + y]] / ((a + x)(a + y) - z^2).
  /// It acts on signed outcomes (X_x0, -X_p1) scaled by sqrt(2) relative to
  /// natural quadrature units, so gain -> Sigma for ideal fibers as zeta -> inf.
  Matrix gain;
  /// Generic homodyne path in natural units: outcome density, conditional
  /// means (mean_map = sqrt(2) gain). Its gamma_out is replaced by gamma_rec.
  HomodyneResult homodyne;
  /// 2 / sqrt(det(Gamma_in + Gamma_rec)).
  double fidelity_zero_mean;

  /// Normalised density of the signed outcomes in natural units.
  double density(const Vector& signed_outcome) const { return homodyne.density(signed_outcome); }
};

/// (S_BS (+) 1)(Gamma_in (+) Gamma_dec)(S_BS (+) 1)^T, 6x6.
CovarianceMatrix tripartite_covariance(const TeleportSetup& setup);

/// Receiver covariance from the explicit 2x2 formula. Evaluated in a
/// rearranged form that stays accurate for large zeta, where the direct
/// b - O(cosh^2 2 zeta)/D expression cancels catastrophically.
CovarianceMatrix receiver_covariance_explicit(const TeleportSetup& setup);

/// Runs the protocol. gamma_rec comes from the explicit formula and is checked
/// against the generic Schur complement of tripartite_covariance() to
/// 1e-10 * max(1, max|Gamma_012|) (ConsistencyError otherwise). Throws
/// PhysicalityError for an unphysical input.
TeleportResult teleport(const TeleportSetup& setup, double tol = kDefaultTol);

/// 2 / sqrt(det(Gamma_in + Gamma_rec)) for 2x2 matrices.
double fidelity(const CovarianceMatrix& gamma_in, const CovarianceMatrix& gamma_rec);

/// sqrt(1 - sinh^2 eta / (cosh eta + cosh 2 zeta)^2): pure squeezed signal
/// through ideal fibers.
double pure_squeezed_fidelity(double eta, double zeta);

/// Sigma |T2/T1| R(phi1 + phi2), the zeta -> inf limit of the gain.
/// DomainError if |T1| = 0.
Matrix ideal_displacement_gain(const FiberParams& sender, const FiberParams& receiver);

/// Tr(rho sigma) = 2^N / sqrt(det S) exp(-d^T S^-1 d) with S = Gamma_a + Gamma_b
/// and d = kappa_a - kappa_b.
double gaussian_overlap(const GaussianState& a, const GaussianState& b);

struct MonteCarloFidelity {
  double mean;
  double standard_error;
  int samples;
};

/// Average overlap between the input and the displaced receiver state when
/// the receiver applies `gain_used` (same units as TeleportResult::gain)
/// instead of the exact conditional displacement. Outcomes are sampled from
/// the homodyne density with a seeded generator; results are deterministic
/// for a given seed.
MonteCarloFidelity displaced_fidelity_mc(const TeleportSetup& setup, const Vector& kappa_in,
                                         const Matrix& gain_used, int samples, std::uint64_t seed);

}  // namespace cvgauss
