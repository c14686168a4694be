#include <cvgauss/symplectic.hpp>
#include <cvgauss/teleportation.hpp>

#include <array>
#include <cmath>
#include <random>
#include <string>

namespace cvgauss {
namespace {

constexpr std::array<QuadratureIndex, 2> kBellMeasurement{
    QuadratureIndex{0, Quadrature::X}, QuadratureIndex{1, Quadrature::P}};

void require_single_mode_input(const CovarianceMatrix& gamma_in, double tol) {
  if (gamma_in.modes() != 1) {
    throw DimensionError("teleport: input covariance must be 2x2, got dimension " +
                         std::to_string(gamma_in.dim()));
  }
  if (!validate_covariance(gamma_in.matrix(), tol).physical) {
    throw PhysicalityError("teleport: input covariance is unphysical");
  }
}

double scaled_tolerance(const Matrix& m, double tol) {
  return tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

Matrix beam_splitter_on_sender() {
  const Gate bs = BeamSplitter{0, 1};
  return gate_matrix(bs, 3);
}

}  // namespace

CovarianceMatrix tripartite_covariance(const TeleportSetup& setup) {
  require_single_mode_input(setup.gamma_in, kDefaultTol);
  const Matrix decohered = degraded_tmsv(setup.zeta, setup.sender, setup.receiver).matrix();
  const Matrix s = beam_splitter_on_sender();
  return CovarianceMatrix(s * direct_sum(setup.gamma_in.matrix(), decohered) * s.transpose());
}

CovarianceMatrix receiver_covariance_explicit(const TeleportSetup& setup) {
  require_single_mode_input(setup.gamma_in, kDefaultTol);
  setup.sender.validate();
  setup.receiver.validate();

  const double x = setup.gamma_in(0, 0);
  const double y = setup.gamma_in(1, 1);
  const double z = setup.gamma_in(0, 1);
  const double c = std::cosh(2.0 * setup.zeta);
  const double t1_sq = setup.sender.t_mag * setup.sender.t_mag;
  const double t2_sq = setup.receiver.t_mag * setup.receiver.t_mag;
  const double t_sq = t1_sq * t2_sq;
  const double e1 = setup.sender.noise();
  const double e2 = setup.receiver.noise();
  const double a = c * t1_sq + e1;
  const double d = (a + x) * (a + y) - z * z;
  const double det_in = x * y - z * z;

  // Gamma_in seen through the rotation by the total transmission phase.
  const double theta = setup.sender.phase + setup.receiver.phase;
  const double sn = std::sin(theta);
  const double cs = std::cos(theta);
  const double q11 = x * sn * sn + y * cs * cs + z * std::sin(2.0 * theta);
  const double q22 = x * cs * cs + y * sn * sn - z * std::sin(2.0 * theta);
  const double q12 = sn * cs * (y - x) - z * std::cos(2.0 * theta);
  Matrix q(2, 2);
  q << q11, q12, q12, q22;
  Matrix adj_q(2, 2);
  adj_q << q22, -q12, -q12, q11;

  const Matrix id = Matrix::Identity(2, 2);
  const double scalar = c * t2_sq * e1 * (e1 + x + y) + t_sq * a + c * t2_sq * det_in + e2 * d;
  const Matrix rec = (c * c * t_sq * (e1 * id + adj_q) + scalar * id + t_sq * q) / d;
  return CovarianceMatrix(rec);
}

TeleportResult teleport(const TeleportSetup& setup, double tol) {
  require_single_mode_input(setup.gamma_in, tol);
  const CovarianceMatrix g012 = tripartite_covariance(setup);
  HomodyneResult hom = homodyne_project(g012, kBellMeasurement, tol);
  const CovarianceMatrix rec = receiver_covariance_explicit(setup);

  const double agreement = (hom.gamma_out.matrix() - rec.matrix()).cwiseAbs().maxCoeff();
  if (agreement > scaled_tolerance(g012.matrix(), 1e-10)) {
    throw ConsistencyError("teleport: explicit receiver covariance differs from the Schur complement by " +
                           std::to_string(agreement));
  }
  if (!validate_covariance(rec.matrix(), scaled_tolerance(rec.matrix(), tol)).physical) {
    throw PhysicalityError("teleport: receiver covariance is unphysical");
  }

  const DecoheredTmsv dec = degraded_tmsv_entries(setup.zeta, setup.sender, setup.receiver);
  const double x = setup.gamma_in(0, 0);
  const double y = setup.gamma_in(1, 1);
  const double z = setup.gamma_in(0, 1);
  Matrix n(2, 2);
  n << dec.c2, -dec.c1, dec.c1, dec.c2;
  Matrix k_inv(2, 2);
  k_inv << dec.a + x, z, z, dec.a + y;
  k_inv /= (dec.a + x) * (dec.a + y) - z * z;

  // Past the consistency check the explicit form replaces the generic one,
  // which loses all digits at large zeta.
  hom.gamma_out = rec;
  const double f = fidelity(setup.gamma_in, rec);
  return {rec, n.transpose() * k_inv, std::move(hom), f};
}

double fidelity(const CovarianceMatrix& gamma_in, const CovarianceMatrix& gamma_rec) {
  if (gamma_in.modes() != 1 || gamma_rec.modes() != 1) {
    throw DimensionError("fidelity: both covariance matrices must be 2x2");
  }
  return 2.0 / std::sqrt((gamma_in.matrix() + gamma_rec.matrix()).determinant());
}

double pure_squeezed_fidelity(double eta, double zeta) {
  const double ratio = std::sinh(eta) / (std::cosh(eta) + std::cosh(2.0 * zeta));
  return std::sqrt(1.0 - ratio * ratio);
}

Matrix ideal_displacement_gain(const FiberParams& sender, const FiberParams& receiver) {
  sender.validate();
  receiver.validate();
  if (sender.t_mag == 0.0) {
    throw DomainError("ideal_displacement_gain: |T1| = 0, the sender arm transmits nothing");
  }
  return symplectic_form(1) * (receiver.t_mag / sender.t_mag) * rotation(sender.phase + receiver.phase);
}

double gaussian_overlap(const GaussianState& a, const GaussianState& b) {
  if (a.modes() != b.modes()) throw DimensionError("gaussian_overlap: mode counts differ");
  const Matrix s = a.covariance().matrix() + b.covariance().matrix();
  const Vector d = a.mean() - b.mean();
  Eigen::LDLT<Matrix> ldlt(s);
  const double exponent = d.dot(ldlt.solve(d));
  return std::pow(2.0, a.modes()) / std::sqrt(s.determinant()) * std::exp(-exponent);
}

MonteCarloFidelity displaced_fidelity_mc(const TeleportSetup& setup, const Vector& kappa_in,
                                         const Matrix& gain_used, int samples, std::uint64_t seed) {
  if (samples <= 0) throw DomainError("displaced_fidelity_mc: samples must be positive");
  if (kappa_in.size() != 2) throw DimensionError("displaced_fidelity_mc: input mean must have length 2");
  if (gain_used.rows() != 2 || gain_used.cols() != 2) {
    throw DimensionError("displaced_fidelity_mc: gain must be 2x2");
  }
  const CovarianceMatrix g012 = tripartite_covariance(setup);
  Vector kappa012 = Vector::Zero(6);
  kappa012.head(2) = kappa_in;
  kappa012 = beam_splitter_on_sender() * kappa012;
  const HomodyneResult hom = homodyne_project(GaussianState(kappa012, g012), kBellMeasurement);

  const CovarianceMatrix rec = receiver_covariance_explicit(setup);
  const GaussianState input(kappa_in, setup.gamma_in);
  const Matrix sigma_t = symplectic_form(1).transpose();
  const Matrix gain_natural = std::sqrt(2.0) * gain_used;
  // Signed outcomes have covariance K / 2.
  const Matrix chol = Eigen::LLT<Matrix>(0.5 * hom.outcome_block).matrixL();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  // Welford update: the spread is often exactly zero and a sum of squares
  // would report rounding noise instead.
  double mean = 0.0;
  double m2 = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Vector w{{normal(rng), normal(rng)}};
    const Vector v = hom.outcome_center + chol * w;
    const Vector linear = hom.kept_linear + hom.mean_map * (v - hom.outcome_center) - gain_natural * v;
    const double f = gaussian_overlap(input, GaussianState(sigma_t * linear, rec));
    const double delta = f - mean;
    mean += delta / (i + 1);
    m2 += delta * (f - mean);
  }
  const double var = samples > 1 ? m2 / (samples - 1) : 0.0;
  return {mean, std::sqrt(var / samples), samples};
}

}  // namespace cvgauss
