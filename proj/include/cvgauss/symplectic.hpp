#pragma once

// Symplectic form, symplectic matrices and their normal forms.

#include <cvgauss/types.hpp>

#include <span>
#include <variant>

namespace cvgauss {

/// Block-diagonal form Sigma = [[0,1],[-1,0]]^{(+)N}.
Matrix symplectic_form(int modes);

/// 2x2 rotation [[cos, -sin], [sin, cos]].
Matrix rotation(double angle);

/// Block-diagonal direct sum a (+) b.
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// Real 2N x 2N matrix S with S Sigma S^T = Sigma (within tolerance).
class SymplecticMatrix {
 public:
  /// Throws PhysicalityError if s is not symplectic within tol.
  explicit SymplecticMatrix(const Matrix& s, double tol = kDefaultTol);

  static SymplecticMatrix identity(int modes);

  int modes() const { return static_cast<int>(s_.rows() / 2); }
  const Matrix& matrix() const { return s_; }

 private:
  Matrix s_;
};

struct CovarianceReport {
  bool physical;
  /// Smallest eigenvalue of the Hermitian matrix Gamma + i Sigma.
  double min_eigenvalue;
};

/// Uncertainty-relation check Gamma + i Sigma >= -tol. The input is
/// symmetrised first.
CovarianceReport validate_covariance(const Matrix& gamma, double tol = kDefaultTol);

/// True iff max|S Sigma S^T - Sigma| <= tol.
bool check_symplectic(const Matrix& s, double tol = kDefaultTol);

struct PhaseRotation {
  int mode;
  double angle;
};

/// Single-mode squeezer diag(e^zeta, e^-zeta).
struct Squeeze {
  int mode;
  double zeta;
};

/// Symmetric beam splitter (1/sqrt2)[[1,1],[-1,1]] (x) 1 on two modes.
struct BeamSplitter {
  int first;
  int second;
};

using Gate = std::variant<PhaseRotation, Squeeze, BeamSplitter>;

/// Matrix of a single gate embedded in N modes.
Matrix gate_matrix(const Gate& gate, int modes);

/// Ordered product G_0 G_1 ... G_k of the gate matrices; the first gate in the
/// list acts last.
SymplecticMatrix build_symplectic(std::span<const Gate> gates, int modes);

/// Gamma -> S Gamma S^T, kappa -> S kappa.
GaussianState apply_symplectic(const GaussianState& state, const SymplecticMatrix& s);

/// S = left * diag(k_1, 1/k_1, ..., k_N, 1/k_N) * right with orthogonal
/// symplectic outer factors and k_1 >= k_2 >= ... >= 1.
struct EulerDecomposition {
  Matrix left;
  Vector squeezing;  // k_i
  Matrix diagonal;
  Matrix right;
};

EulerDecomposition euler_decompose(const SymplecticMatrix& s);

/// Moduli of the eigenvalues of i Sigma Gamma, one per mode, ascending.
Vector symplectic_eigenvalues(const CovarianceMatrix& gamma);

}  // namespace cvgauss
