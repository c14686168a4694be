#pragma once

// Partial transposition, separability and logarithmic negativity of two-mode
// Gaussian states, plus the closed forms for a TMSV sent through absorbing
// fibers.

#include <cvgauss/types.hpp>

#include <span>

namespace cvgauss {

/// P Gamma P with P = diag(1, 1, 1, -1). Requires a 4x4 matrix.
CovarianceMatrix partial_transpose(const CovarianceMatrix& gamma);

/// Flips the momentum of each listed mode (any mode count).
CovarianceMatrix partial_transpose(const CovarianceMatrix& gamma, std::span<const int> modes);

struct SeparabilityVerdict {
  bool separable;
  /// det C1 det C2 + (1 - |det C3|)^2 - Tr[C1 Sigma C3 Sigma C2 Sigma C3^T Sigma]
  double lhs;
  /// det C1 + det C2
  double rhs;
  /// Smallest eigenvalue of Gamma^PT + i Sigma.
  double pt_min_eig;
};

/// Evaluates both the determinant inequality and the PT uncertainty test on
/// a 4x4 Gamma. The inequality is compared with a tolerance relative to
/// max(1, |lhs|, |rhs|). Throws ConsistencyError if the two tests disagree
/// outside that band, PhysicalityError if Gamma is unphysical.
SeparabilityVerdict is_separable(const CovarianceMatrix& gamma, double tol = kDefaultTol);

struct NegativityReport {
  double f_value;
  double log_negativity;
  LogBase base;
};

/// Closed-form f(Gamma) for a 4x4 Gamma, cross-checked against the smallest
/// symplectic eigenvalue of Gamma^PT (ConsistencyError beyond 1e-9 relative
/// on f^2, widened by the sqrt(eps) conditioning of near-degenerate pairs).
/// E_N = -log f if f < 1, else 0.
NegativityReport log_negativity(const CovarianceMatrix& gamma, LogBase base = LogBase::Natural,
                                double tol = kDefaultTol);

/// -sum log nu_k over the sub-unity symplectic eigenvalues of the state
/// partially transposed on `modes`.
double log_negativity_general(const CovarianceMatrix& gamma, std::span<const int> modes,
                              LogBase base = LogBase::Natural);

/// -ln(1 - q^2) - q^2/(1 - q^2) ln q^2 with q = tanh zeta, evaluated as
/// written (0 at zeta = 0).
double tmsv_entropy(double zeta);

/// Thermal occupation above which the transmitted TMSV is separable:
/// |T|^2 (1 - e^{-2 zeta}) / (2 (1 - |R|^2 - |T|^2)). +inf when nothing is
/// absorbed.
double fiber_separability_threshold(double zeta, double t_mag, double r_mag);

/// Lambert-Beer length at which a TMSV crosses the separability boundary:
/// (l_A / 2) ln[1 + (1 - e^{-2 zeta}) / (2 n_th)]. +inf at n_th = 0;
/// zeta = inf is allowed.
double separability_length(double zeta, double n_th, double absorption_length);

/// -log[1 - |T|^2 (1 - e^{-2 zeta})] at zero temperature; zeta = inf allowed.
double transmitted_log_negativity(double zeta, double t_mag, LogBase base = LogBase::Natural);

/// -log[1 - e^{-2 l / l_A}]; +inf at l = 0.
double max_transmittable(double length, double absorption_length, LogBase base = LogBase::Natural);

}  // namespace cvgauss
