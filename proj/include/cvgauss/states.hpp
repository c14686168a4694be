#pragma once

// Standard Gaussian states, the eigenvalue classicality test and the
// characteristic function.

#include <cvgauss/types.hpp>

#include <variant>

namespace cvgauss {

GaussianState vacuum(int modes = 1);

/// Single-mode thermal state, Gamma = (2n + 1) 1.
GaussianState thermal(double mean_photons);

/// Gate-convention squeezed vacuum R(theta) diag(e^{2 zeta}, e^{-2 zeta}) R(theta)^T.
GaussianState squeezed(double zeta, double theta = 0.0);

/// Pure squeezed signal in the teleportation parameterisation:
/// Gamma = [[cosh eta, sinh eta], [sinh eta, cosh eta]].
GaussianState squeezed_signal(double eta);

/// Two-mode squeezed vacuum with c = cosh 2 zeta, s = sinh 2 zeta:
///   [[c,0,s,0],[0,c,0,-s],[s,0,c,0],[0,-s,0,c]].
GaussianState tmsv(double zeta);

struct VacuumSpec {
  int modes = 1;
};
struct ThermalSpec {
  double mean_photons;
};
struct SqueezedSpec {
  double zeta;
  double theta = 0.0;
};
struct TmsvSpec {
  double zeta;
};
using StateSpec = std::variant<VacuumSpec, ThermalSpec, SqueezedSpec, TmsvSpec>;

GaussianState make_state(const StateSpec& spec);

struct ClassicalityVerdict {
  bool classical;
  double min_gamma_eigenvalue;
};

/// A Gaussian state is classical iff every ordinary eigenvalue of Gamma is at
/// least 1 (within tol). Throws PhysicalityError for an unphysical Gamma.
ClassicalityVerdict classicality_test(const CovarianceMatrix& gamma, double tol = kDefaultTol);

/// Largest |zeta| for which a squeezed thermal state with n photons stays
/// classical: (1/2) ln(2n + 1).
double max_classical_squeezing(double mean_photons);

/// chi(lambda) = exp(-1/4 lambda^T Gamma lambda + i lambda^T Sigma kappa).
Complex characteristic_function(const GaussianState& state, const Vector& lambda);

}  // namespace cvgauss
