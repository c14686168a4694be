#pragma once

// Truncated Fock-space oracle. Everything here works on density matrices in
// the number basis and shares no code with the covariance-matrix modules, so
// the two can check each other.
//
// A state on `modes` modes keeps photon numbers 0..cutoff per mode; basis
// index = sum_k n_k (cutoff + 1)^(modes - 1 - k), mode 0 most significant.

#include <cvgauss/types.hpp>

#include <limits>
#include <span>
#include <vector>

namespace cvgauss::fock {

struct FockState {
  int modes = 0;
  int cutoff = 0;
  CMatrix rho;
  /// Probability mass discarded by the truncation (before renormalisation).
  double truncation_weight = 0.0;

  int levels() const { return cutoff + 1; }
};

/// Pure state vector with the same layout.
struct FockKet {
  int modes = 0;
  int cutoff = 0;
  CVector amplitudes;
  double truncation_weight = 0.0;
};

FockState density(const FockKet& ket);

/// sqrt(1 - q^2) sum_n q^n |n n>, q = tanh zeta, truncated at n = cutoff and
/// renormalised. Throws DomainError if the discarded weight q^{2(cutoff+1)}
/// exceeds `budget`.
FockState build_tmsv_fock(double zeta, int cutoff,
                          double budget = std::numeric_limits<double>::infinity());

/// Pure single-mode Gaussian with covariance [[x, z], [z, y]] (xy - z^2 = 1)
/// from the ladder-operator recurrence c_{n+1} = mu sqrt(n/(n+1)) c_{n-1},
/// mu = (1 - A)/(1 + A), A = (1 - i z)/x.
FockKet pure_gaussian_ket(const CovarianceMatrix& gamma, int cutoff);

/// Single-mode Gaussian of any purity: thermal state, then squeezing and
/// rotation applied as matrix exponentials in an enlarged space and truncated.
FockState gaussian_fock(const CovarianceMatrix& gamma, int cutoff);

/// p_n = nbar^n / (nbar + 1)^{n+1}.
FockState thermal_fock(double mean_photons, int cutoff);

FockState tensor(const FockState& a, const FockState& b);

/// Loss on one mode: beam splitter of transmittance `transmittance` (= |T|^2)
/// with a vacuum ancilla that is traced out. Kraus operators
/// K_k = sum_n sqrt(C(n,k) T^{n-k} (1-T)^k) |n-k><n|.
FockState apply_loss_fock(const FockState& state, int mode, double transmittance);

/// Reduced state of the listed modes (kept in ascending order).
FockState partial_trace_keep(const FockState& state, std::span<const int> keep);

struct FockNegativity {
  double log_negativity;
  /// Largest population on the boundary level n = cutoff of either mode.
  double boundary_population;
  /// True when boundary_population exceeds the budget.
  bool truncation_dominated;
};

/// log of the trace norm of the partial transpose over mode 1 (two modes).
FockNegativity log_negativity_fock(const FockState& state, LogBase base = LogBase::Natural,
                                   double budget = 1e-8);

struct FockMoments {
  Vector mean;
  Matrix covariance;
};

/// First moments and Gamma_ij = <{dR_i, dR_j}> from normally ordered ladder
/// expectations, which are exact on the truncated state.
FockMoments covariance_from_fock(const FockState& state);

/// Harmonic-oscillator eigenfunctions on a uniform grid, by the two-term
/// recurrence psi_{n+1} = sqrt(2/(n+1)) X psi_n - sqrt(n/(n+1)) psi_{n-1}.
struct QuadratureTable {
  Vector grid;
  double spacing = 0.0;
  /// values(n, j) = psi_n(grid_j).
  Matrix values;

  /// max_{m,n} |sum_j psi_m psi_n dX - delta_mn|.
  double orthonormality_error() const;
};

QuadratureTable make_quadrature_table(int cutoff, double lo = -8.0, double hi = 8.0, int points = 801);

/// <n|X, phi> = e^{i n phi} psi_n(X); |X, phi> is the eigenstate of
/// x cos(phi) + p sin(phi).
CVector quadrature_ket(const QuadratureTable& table, int grid_index, double phi);

struct HomodyneDistribution {
  Vector grid;
  Vector probability;
  /// sum_j p_j dX.
  double normalization;
};

/// p(X) = <X, phi| rho_mode |X, phi> on the table grid. Throws DomainError
/// when the normalisation misses the state's trace by more than 1e-3.
HomodyneDistribution homodyne_povm_fock(const FockState& state, int mode, double phi,
                                        const QuadratureTable& table);

struct ConditionalFock {
  double probability_density;
  FockState state;
};

/// <X, phi|_mode rho |X, phi>_mode, renormalised, at the table point
/// grid_index.
ConditionalFock homodyne_condition_fock(const FockState& state, int mode, double phi,
                                        const QuadratureTable& table, int grid_index);

/// <psi| rho |psi> (real part).
double overlap_fock(const FockKet& ket, const FockState& rho);

/// Probability that every listed mode is found in |0>.
double vacuum_probability(const FockState& state, std::span<const int> modes);

}  // namespace cvgauss::fock
