#include <cvgauss/states.hpp>
#include <cvgauss/symplectic.hpp>

#include <string>

namespace cvgauss {

namespace {

void require_photons(double n, const char* what) {
  if (!(n >= 0.0) || !std::isfinite(n)) {
    throw DomainError(std::string(what) + ": mean photon number must be finite and >= 0, got " +
                      std::to_string(n));
  }
}

}  // namespace

GaussianState vacuum(int modes) { return GaussianState(CovarianceMatrix::identity(modes)); }

GaussianState thermal(double mean_photons) {
  require_photons(mean_photons, "thermal");
  return GaussianState(CovarianceMatrix((2.0 * mean_photons + 1.0) * Matrix::Identity(2, 2)));
}

GaussianState squeezed(double zeta, double theta) {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = std::exp(2.0 * zeta);
  d(1, 1) = std::exp(-2.0 * zeta);
  const Matrix r = rotation(theta);
  return GaussianState(CovarianceMatrix(r * d * r.transpose()));
}

GaussianState squeezed_signal(double eta) {
  Matrix g(2, 2);
  g << std::cosh(eta), std::sinh(eta), std::sinh(eta), std::cosh(eta);
  return GaussianState(CovarianceMatrix(g));
}

GaussianState tmsv(double zeta) {
  const double c = std::cosh(2.0 * zeta);
  const double s = std::sinh(2.0 * zeta);
  Matrix g(4, 4);
  g << c, 0, s, 0,
       0, c, 0, -s,
       s, 0, c, 0,
       0, -s, 0, c;
  return GaussianState(CovarianceMatrix(g));
}

GaussianState make_state(const StateSpec& spec) {
  struct Maker {
    GaussianState operator()(const VacuumSpec& v) const { return vacuum(v.modes); }
    GaussianState operator()(const ThermalSpec& t) const { return thermal(t.mean_photons); }
    GaussianState operator()(const SqueezedSpec& s) const { return squeezed(s.zeta, s.theta); }
    GaussianState operator()(const TmsvSpec& t) const { return tmsv(t.zeta); }
  };
  return std::visit(Maker{}, spec);
}

ClassicalityVerdict classicality_test(const CovarianceMatrix& gamma, double tol) {
  if (!validate_covariance(gamma.matrix(), tol).physical) {
    throw PhysicalityError("classicality_test: covariance violates the uncertainty relation");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gamma.matrix(), Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  return {min_eig >= 1.0 - tol, min_eig};
}

double max_classical_squeezing(double mean_photons) {
  require_photons(mean_photons, "max_classical_squeezing");
  return 0.5 * std::log(2.0 * mean_photons + 1.0);
}

Complex characteristic_function(const GaussianState& state, const Vector& lambda) {
  if (lambda.size() != state.covariance().dim()) {
    throw DimensionError("characteristic_function: lambda has length " +
                         std::to_string(lambda.size()) + ", state dimension is " +
                         std::to_string(state.covariance().dim()));
  }
  const double quad = lambda.dot(state.covariance().matrix() * lambda);
  const double phase = lambda.dot(symplectic_form(state.modes()) * state.mean());
  return std::exp(Complex(-0.25 * quad, phase));
}

}  // namespace cvgauss
