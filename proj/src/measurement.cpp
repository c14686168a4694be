#include <cvgauss/measurement.hpp>
#include <cvgauss/symplectic.hpp>

#include <algorithm>
#include <numbers>
#include <string>

namespace cvgauss {
namespace {

struct Spectrum {
  Vector values;
  Matrix vectors;
  double cutoff;
};

Spectrum symmetric_spectrum(const Matrix& m, double rel_tol) {
  if (m.rows() != m.cols()) throw DimensionError("mp_inverse: matrix is not square");
  if (m.rows() == 0) return {Vector(0), Matrix(0, 0), 0.0};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.transpose()));
  const Vector& values = solver.eigenvalues();
  const double scale = values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff();
  return {values, solver.eigenvectors(), rel_tol * scale};
}

Matrix select(const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = m(rows[r], cols[c]);
  }
  return out;
}

Vector select(const Vector& v, const std::vector<int>& idx) {
  Vector out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out(i) = v(idx[i]);
  return out;
}

std::vector<int> quadrature_indices(const std::vector<int>& modes) {
  std::vector<int> idx;
  idx.reserve(2 * modes.size());
  for (int m : modes) {
    idx.push_back(2 * m);
    idx.push_back(2 * m + 1);
  }
  return idx;
}

std::vector<int> complement_modes(int total, const std::vector<int>& removed) {
  std::vector<int> kept;
  for (int m = 0; m < total; ++m) {
    if (std::find(removed.begin(), removed.end(), m) == removed.end()) kept.push_back(m);
  }
  return kept;
}

void check_modes(int total, const std::vector<int>& modes, const char* what) {
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] < 0 || modes[i] >= total) {
      throw DimensionError(std::string(what) + ": mode " + std::to_string(modes[i]) +
                           " out of range for " + std::to_string(total) + " modes");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (modes[i] == modes[j]) {
        throw DimensionError(std::string(what) + ": mode " + std::to_string(modes[i]) +
                             " listed twice");
      }
    }
  }
}

// Physicality with a tolerance relative to the largest entry: rounding in the
// eigenvalues of Gamma + i Sigma grows with |Gamma|.
bool physical_scaled(const Matrix& gamma, double tol) {
  return validate_covariance(gamma, tol * std::max(1.0, gamma.cwiseAbs().maxCoeff())).physical;
}

}  // namespace

Matrix mp_inverse(const Matrix& m, double rel_tol) {
  const Spectrum s = symmetric_spectrum(m, rel_tol);
  Vector inv = Vector::Zero(s.values.size());
  for (Eigen::Index i = 0; i < s.values.size(); ++i) {
    if (std::abs(s.values(i)) > s.cutoff && s.values(i) != 0.0) inv(i) = 1.0 / s.values(i);
  }
  return s.vectors * inv.asDiagonal() * s.vectors.transpose();
}

double pseudo_determinant(const Matrix& m, double rel_tol) {
  const Spectrum s = symmetric_spectrum(m, rel_tol);
  double det = 1.0;
  for (Eigen::Index i = 0; i < s.values.size(); ++i) {
    if (std::abs(s.values(i)) > s.cutoff && s.values(i) != 0.0) det *= s.values(i);
  }
  return det;
}

BlockedCovariance BlockedCovariance::split(const CovarianceMatrix& gamma,
                                           std::span<const int> measured_modes) {
  const std::vector<int> measured(measured_modes.begin(), measured_modes.end());
  check_modes(gamma.modes(), measured, "BlockedCovariance::split");
  const std::vector<int> kept_idx = quadrature_indices(complement_modes(gamma.modes(), measured));
  const std::vector<int> meas_idx = quadrature_indices(measured);
  const Matrix& g = gamma.matrix();
  return {select(g, kept_idx, kept_idx), select(g, meas_idx, meas_idx),
          select(g, kept_idx, meas_idx)};
}

Matrix BlockedCovariance::assemble() const {
  const Eigen::Index n = kept.rows();
  const Eigen::Index m = measured.rows();
  if (correlations.rows() != n || correlations.cols() != m) {
    throw DimensionError("BlockedCovariance: correlation block has the wrong shape");
  }
  Matrix g(n + m, n + m);
  g.topLeftCorner(n, n) = kept;
  g.topRightCorner(n, m) = correlations;
  g.bottomLeftCorner(m, n) = correlations.transpose();
  g.bottomRightCorner(m, m) = measured;
  return g;
}

ConditionalResult gaussian_project(const BlockedCovariance& blocks, const Vector& d_diagonal,
                                   double tol) {
  const Matrix full = blocks.assemble();
  if (d_diagonal.size() != blocks.measured.rows()) {
    throw DimensionError("gaussian_project: D has length " + std::to_string(d_diagonal.size()) +
                         ", measured block has dimension " + std::to_string(blocks.measured.rows()));
  }
  if (full.rows() > 0 && !physical_scaled(full, tol)) {
    throw PhysicalityError("gaussian_project: input covariance is unphysical");
  }
  const Matrix k = blocks.measured + Matrix(d_diagonal.cwiseAbs2().asDiagonal());
  const Matrix k_inv = mp_inverse(k);
  const Matrix mean_map = blocks.correlations * k_inv;
  const Matrix out = blocks.kept - mean_map * blocks.correlations.transpose();
  return {CovarianceMatrix(out), 1.0 / std::sqrt(pseudo_determinant(k)), mean_map};
}

Vector HomodyneResult::signed_outcomes(const Vector& raw) const {
  if (raw.size() != static_cast<Eigen::Index>(signs.size())) {
    throw DimensionError("signed_outcomes: expected " + std::to_string(signs.size()) + " outcomes");
  }
  Vector v(raw.size());
  for (Eigen::Index i = 0; i < raw.size(); ++i) v(i) = signs[i] * raw(i);
  return v;
}

double HomodyneResult::density(const Vector& signed_outcome) const {
  if (signed_outcome.size() != outcome_block.rows()) {
    throw DimensionError("density: outcome vector has the wrong length");
  }
  const Vector d = signed_outcome - outcome_center;
  const double quad = d.dot(mp_inverse(outcome_block) * d);
  const double k = static_cast<double>(d.size());
  return std::exp(-quad) /
         (std::pow(std::numbers::pi, 0.5 * k) * std::sqrt(pseudo_determinant(outcome_block)));
}

GaussianState HomodyneResult::conditional_state(const Vector& signed_outcome) const {
  if (signed_outcome.size() != outcome_block.rows()) {
    throw DimensionError("conditional_state: outcome vector has the wrong length");
  }
  const Vector linear = kept_linear + mean_map * (signed_outcome - outcome_center);
  if (gamma_out.dim() == 0) return GaussianState(Vector(0), gamma_out);
  const Vector kappa = symplectic_form(gamma_out.modes()).transpose() * linear;
  return GaussianState(kappa, gamma_out);
}

HomodyneResult homodyne_project(const GaussianState& state, std::span<const QuadratureIndex> measured,
                                double tol) {
  const CovarianceMatrix& gamma = state.covariance();
  const int total = gamma.modes();
  std::vector<int> modes;
  modes.reserve(measured.size());
  for (const auto& q : measured) modes.push_back(q.mode);
  check_modes(total, modes, "homodyne_project");
  if (modes.empty()) throw DimensionError("homodyne_project: no quadrature selected");
  if (!physical_scaled(gamma.matrix(), tol)) {
    throw PhysicalityError("homodyne_project: input covariance is unphysical");
  }

  HomodyneResult r;
  r.kept_modes = complement_modes(total, modes);
  const std::vector<int> kept_idx = quadrature_indices(r.kept_modes);
  std::vector<int> conj_idx;
  for (const auto& q : measured) {
    // x is read off from the p-component of lambda and vice versa.
    conj_idx.push_back(q.quadrature == Quadrature::X ? 2 * q.mode + 1 : 2 * q.mode);
    r.signs.push_back(q.quadrature == Quadrature::X ? 1 : -1);
  }

  const Matrix& g = gamma.matrix();
  r.outcome_block = select(g, conj_idx, conj_idx);
  const Matrix n = select(g, conj_idx, kept_idx);
  const Matrix k_inv = mp_inverse(r.outcome_block);
  r.mean_map = n.transpose() * k_inv;
  r.gamma_out = CovarianceMatrix(select(g, kept_idx, kept_idx) - r.mean_map * n);

  const Vector linear = symplectic_form(total) * state.mean();
  r.outcome_center = select(linear, conj_idx);
  r.kept_linear = select(linear, kept_idx);
  return r;
}

HomodyneResult homodyne_project(const CovarianceMatrix& gamma,
                                std::span<const QuadratureIndex> measured, double tol) {
  return homodyne_project(GaussianState(gamma), measured, tol);
}

CovarianceMatrix characteristic_frame(const CovarianceMatrix& gamma) {
  if (gamma.dim() == 0) return gamma;
  const Matrix sigma = symplectic_form(gamma.modes());
  return CovarianceMatrix(sigma * gamma.matrix() * sigma.transpose());
}

}  // namespace cvgauss
