#include <cvgauss/types.hpp>

#include <string>

namespace cvgauss {

void require_phase_space_shape(const Matrix& m, const char* what, bool allow_empty) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": matrix is not square (" +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")");
  }
  if ((m.rows() == 0 && !allow_empty) || m.rows() % 2 != 0) {
    throw DimensionError(std::string(what) + ": dimension " + std::to_string(m.rows()) +
                         " is not a positive even number");
  }
}

CovarianceMatrix::CovarianceMatrix(const Matrix& gamma) {
  require_phase_space_shape(gamma, "CovarianceMatrix", true);
  gamma_ = 0.5 * (gamma + gamma.transpose());
}

CovarianceMatrix CovarianceMatrix::identity(int modes) {
  if (modes <= 0) throw DimensionError("CovarianceMatrix::identity: mode count must be positive");
  return CovarianceMatrix(Matrix::Identity(2 * modes, 2 * modes));
}

GaussianState::GaussianState(CovarianceMatrix gamma)
    : kappa_(Vector::Zero(gamma.dim())), gamma_(std::move(gamma)) {}

GaussianState::GaussianState(Vector kappa, CovarianceMatrix gamma)
    : kappa_(std::move(kappa)), gamma_(std::move(gamma)) {
  if (kappa_.size() != gamma_.dim()) {
    throw DimensionError("GaussianState: mean has length " + std::to_string(kappa_.size()) +
                         ", covariance has dimension " + std::to_string(gamma_.dim()));
  }
}

}  // namespace cvgauss
