#pragma once

// Shared value types for phase-space calculations.
//
// Quadratures are ordered (x_1, p_1, ..., x_N, p_N). Covariance matrices use
// the convention in which the vacuum is the identity (hbar = 1).

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace cvgauss {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// Default absolute tolerance for matrix identity checks.
inline constexpr double kDefaultTol = 1e-9;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes do not match (non-square, odd dimension, wrong mode count).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A scalar parameter is outside its admissible range.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A matrix violates the uncertainty relation or a channel is not completely
/// positive.
class PhysicalityError : public Error {
 public:
  using Error::Error;
};

/// Two independent evaluations of the same quantity disagree.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

enum class LogBase { Natural, Two };

inline double log_in(LogBase base, double value) {
  return base == LogBase::Two ? std::log2(value) : std::log(value);
}

inline const char* to_string(LogBase base) {
  return base == LogBase::Two ? "2" : "e";
}

/// Real symmetric 2N x 2N matrix of symmetrised second moments.
///
/// Construction checks the shape and symmetrises the input; physicality
/// (Gamma + i Sigma >= 0) is a separate check, see validate_covariance().
/// A 0x0 matrix (no modes left, e.g. after measuring everything) is allowed.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(const Matrix& gamma);

  static CovarianceMatrix identity(int modes);

  int modes() const { return static_cast<int>(gamma_.rows() / 2); }
  int dim() const { return static_cast<int>(gamma_.rows()); }
  const Matrix& matrix() const { return gamma_; }
  double operator()(int i, int j) const { return gamma_(i, j); }

 private:
  Matrix gamma_;
};

/// First and second moments of a Gaussian state.
class GaussianState {
 public:
  explicit GaussianState(CovarianceMatrix gamma);
  GaussianState(Vector kappa, CovarianceMatrix gamma);

  int modes() const { return gamma_.modes(); }
  const Vector& mean() const { return kappa_; }
  const CovarianceMatrix& covariance() const { return gamma_; }

 private:
  Vector kappa_;
  CovarianceMatrix gamma_;
};

/// Throws DimensionError unless m is square with even dimension. A 0x0
/// matrix passes only when allow_empty is set.
void require_phase_space_shape(const Matrix& m, const char* what, bool allow_empty = false);

}  // namespace cvgauss
