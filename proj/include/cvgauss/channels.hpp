#pragma once

// Trace-preserving Gaussian channels Gamma -> A Gamma A^T + G and the
// absorbing-fiber model.

#include <cvgauss/types.hpp>

namespace cvgauss {

class GaussianChannel {
 public:
  /// A is 2N x 2N, G symmetric 2N x 2N (symmetrised on construction).
  GaussianChannel(const Matrix& a, const Matrix& g);

  static GaussianChannel identity(int modes);

  int modes() const { return static_cast<int>(a_.rows() / 2); }
  const Matrix& a() const { return a_; }
  const Matrix& g() const { return g_; }

 private:
  Matrix a_;
  Matrix g_;
};

/// `after` applied to the output of `before`: (A, G) o (A', G') = (A A', A G' A^T + G).
GaussianChannel compose(const GaussianChannel& after, const GaussianChannel& before);

/// Independent channels on disjoint mode groups.
GaussianChannel tensor(const GaussianChannel& first, const GaussianChannel& second);

/// Complete-positivity certificate: G + i Sigma - i A Sigma A^T >= -tol.
bool validate_channel(const GaussianChannel& channel, double tol = kDefaultTol);

/// Gamma' = A Gamma A^T + G, kappa' = A kappa. Rejects channels that fail
/// validate_channel().
GaussianState apply_channel(const GaussianState& state, const GaussianChannel& channel,
                            double tol = kDefaultTol);

/// One fiber at a single carrier frequency: T = t_mag e^{i phase}.
struct FiberParams {
  double t_mag = 1.0;
  double phase = 0.0;
  double r_mag = 0.0;
  double n_th = 0.0;

  /// Throws DomainError unless |T|, |R| in [0,1], |T|^2 + |R|^2 <= 1, n_th >= 0.
  void validate() const;

  /// Added noise |R|^2 + (2 n_th + 1)(1 - |T|^2 - |R|^2).
  double noise() const;

  static FiberParams ideal() { return {}; }
};

/// Lambert-Beer fiber: |T| = exp(-length / absorption_length), R = 0.
FiberParams fiber_from_length(double length, double absorption_length, double n_th = 0.0);

/// A = |T| R(phase), G = noise() * 1.
GaussianChannel fiber_channel(const FiberParams& fiber);

/// Entries of the two-mode squeezed vacuum after the two fibers.
struct DecoheredTmsv {
  double a;   // sender-side diagonal
  double b;   // receiver-side diagonal
  double c1;  // s Re(T1 T2)
  double c2;  // s Im(T1 T2)

  /// [[a,0,c1,c2],[0,a,c2,-c1],[c1,c2,b,0],[c2,-c1,0,b]]
  CovarianceMatrix matrix() const;
};

/// Closed-form entries of the transmitted TMSV.
DecoheredTmsv degraded_tmsv_entries(double zeta, const FiberParams& sender,
                                    const FiberParams& receiver);

/// TMSV(zeta) sent through fiber_channel(sender) (+) fiber_channel(receiver).
CovarianceMatrix degraded_tmsv(double zeta, const FiberParams& sender, const FiberParams& receiver);

}  // namespace cvgauss
