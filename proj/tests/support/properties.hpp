#pragma once

// Seeded randomized property runs shared by the unit suite and the
// acceptance binary. Each run reports how many cases violated the property
// and the worst deviation seen.

#include <cvgauss/channels.hpp>
#include <cvgauss/entanglement.hpp>
#include <cvgauss/measurement.hpp>
#include <cvgauss/symplectic.hpp>

#include "random.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace cvgauss::testing {

struct PropertyRun {
  int cases = 0;
  int failures = 0;
  double worst = 0.0;

  void record(double deviation, double tolerance) {
    ++cases;
    worst = std::max(worst, deviation);
    if (!(deviation <= tolerance)) ++failures;
  }
  void record(bool ok) {
    ++cases;
    if (!ok) ++failures;
  }
};

inline double relative_to(const Matrix& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

/// Random CP channels keep random physical states physical.
inline PropertyRun uncertainty_under_channels(int cases, std::uint64_t seed) {
  Random rng(seed);
  PropertyRun run;
  for (int i = 0; i < cases; ++i) {
    const int modes = rng.integer(1, 3);
    const GaussianState in(rng.gaussian_vector(2 * modes), rng.physical_covariance(modes));
    const GaussianChannel ch = rng.channel(modes);
    const Matrix out = apply_channel(in, ch).covariance().matrix();
    const CovarianceReport r = validate_covariance(out, 1e-9 * relative_to(out));
    run.record(r.physical);
  }
  return run;
}

/// Gaussian projections and homodyne measurements on random three-mode states
/// leave physical conditional states.
inline PropertyRun uncertainty_under_measurements(int cases, std::uint64_t seed) {
  Random rng(seed);
  PropertyRun run;
  for (int i = 0; i < cases; ++i) {
    const CovarianceMatrix g = rng.physical_covariance(3);
    const int mode = rng.integer(0, 2);
    if (i % 2 == 0) {
      // Projection onto a Gaussian state with covariance D^2, d1 d2 >= 1.
      const double d = std::exp(rng.uniform(-1.5, 1.5));
      const double excess = std::sqrt(rng.uniform(1.0, 3.0));
      const Vector diag{{d * excess, excess / d}};
      const int measured[] = {mode};
      const Matrix out = gaussian_project(BlockedCovariance::split(g, measured), diag).gamma_out.matrix();
      run.record(validate_covariance(out, 1e-9 * relative_to(out)).physical);
    } else {
      const QuadratureIndex q[] = {{mode, rng.integer(0, 1) ? Quadrature::X : Quadrature::P}};
      const Matrix out = homodyne_project(g, q).gamma_out.matrix();
      run.record(validate_covariance(out, 1e-9 * relative_to(out)).physical);
    }
  }
  return run;
}

/// L D R reproduces S, with L and R orthogonal symplectic.
inline PropertyRun euler_recomposition(int cases, std::uint64_t seed) {
  Random rng(seed);
  PropertyRun run;
  for (int i = 0; i < cases; ++i) {
    const int modes = rng.integer(1, 3);
    const SymplecticMatrix s = rng.symplectic(modes, 6);
    const EulerDecomposition e = euler_decompose(s);
    const Matrix id = Matrix::Identity(2 * modes, 2 * modes);
    const double recomposed = (e.left * e.diagonal * e.right - s.matrix()).cwiseAbs().maxCoeff();
    const double orthogonal = std::max((e.left * e.left.transpose() - id).cwiseAbs().maxCoeff(),
                                       (e.right * e.right.transpose() - id).cwiseAbs().maxCoeff());
    run.record(std::max(recomposed, orthogonal), 1e-10);
  }
  return run;
}

/// nu(S Gamma S^T) = nu(Gamma).
inline PropertyRun eigenvalue_congruence(int cases, std::uint64_t seed) {
  Random rng(seed);
  PropertyRun run;
  for (int i = 0; i < cases; ++i) {
    const int modes = rng.integer(1, 3);
    const CovarianceMatrix g = rng.physical_covariance(modes);
    const Matrix s = rng.symplectic(modes, 4).matrix();
    const Vector before = symplectic_eigenvalues(g);
    const Vector after = symplectic_eigenvalues(CovarianceMatrix(s * g.matrix() * s.transpose()));
    run.record((before - after).cwiseAbs().maxCoeff(), 1e-9);
  }
  return run;
}

/// The four Moore-Penrose identities on random rank-deficient symmetric
/// matrices.
inline PropertyRun penrose_identities(int cases, std::uint64_t seed) {
  Random rng(seed);
  PropertyRun run;
  for (int i = 0; i < cases; ++i) {
    const int n = rng.integer(2, 6);
    const Matrix m = rng.rank_deficient_symmetric(n, rng.integer(0, n));
    const Matrix p = mp_inverse(m);
    const Matrix mp = m * p;
    const Matrix pm = p * m;
    const double worst = std::max({(mp * m - m).cwiseAbs().maxCoeff(), (pm * p - p).cwiseAbs().maxCoeff(),
                                   (mp - mp.transpose()).cwiseAbs().maxCoeff(),
                                   (pm - pm.transpose()).cwiseAbs().maxCoeff()});
    run.record(worst, 1e-9);
  }
  return run;
}

struct SeparabilityRun {
  PropertyRun run;
  int entangled = 0;
  int separable = 0;
};

/// The determinant inequality and the PT uncertainty test agree outside a
/// boundary band of width `band` (is_separable throws otherwise).
inline SeparabilityRun separability_agreement(int cases, std::uint64_t seed, double band) {
  Random rng(seed);
  SeparabilityRun out;
  for (int i = 0; i < cases; ++i) {
    // Alternate a nearly pure, strongly squeezed family with a noisy one so
    // both verdicts are well represented.
    const CovarianceMatrix g =
        i % 2 == 0 ? rng.physical_covariance(2, 0.3, 6, 1.0) : rng.physical_covariance(2, 1.5, 6, 0.8);
    try {
      const SeparabilityVerdict v = is_separable(g, band);
      (v.separable ? out.separable : out.entangled) += 1;
      out.run.record(true);
    } catch (const ConsistencyError&) {
      out.run.record(false);
    }
  }
  return out;
}

}  // namespace cvgauss::testing
