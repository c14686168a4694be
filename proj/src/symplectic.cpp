#include <cvgauss/symplectic.hpp>

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace cvgauss {

namespace {

void require_mode(int mode, int modes, const char* what) {
  if (mode < 0 || mode >= modes) {
    throw DimensionError(std::string(what) + ": mode index " + std::to_string(mode) +
                         " out of range for " + std::to_string(modes) + " modes");
  }
}

struct GateEmbedder {
  int modes;

  Matrix operator()(const PhaseRotation& g) const {
    require_mode(g.mode, modes, "phase rotation");
    Matrix s = Matrix::Identity(2 * modes, 2 * modes);
    s.block<2, 2>(2 * g.mode, 2 * g.mode) = rotation(g.angle);
    return s;
  }

  Matrix operator()(const Squeeze& g) const {
    require_mode(g.mode, modes, "squeeze");
    Matrix s = Matrix::Identity(2 * modes, 2 * modes);
    s(2 * g.mode, 2 * g.mode) = std::exp(g.zeta);
    s(2 * g.mode + 1, 2 * g.mode + 1) = std::exp(-g.zeta);
    return s;
  }

  Matrix operator()(const BeamSplitter& g) const {
    require_mode(g.first, modes, "beam splitter");
    require_mode(g.second, modes, "beam splitter");
    if (g.first == g.second) throw DimensionError("beam splitter: modes must differ");
    const double h = 1.0 / std::sqrt(2.0);
    const int i = 2 * g.first;
    const int j = 2 * g.second;
    Matrix s = Matrix::Identity(2 * modes, 2 * modes);
    for (int q = 0; q < 2; ++q) {
      s(i + q, i + q) = h;
      s(i + q, j + q) = h;
      s(j + q, i + q) = -h;
      s(j + q, j + q) = h;
    }
    return s;
  }
};

}  // namespace

Matrix symplectic_form(int modes) {
  if (modes <= 0) throw DimensionError("symplectic_form: mode count must be positive");
  Matrix sigma = Matrix::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    sigma(2 * k, 2 * k + 1) = 1.0;
    sigma(2 * k + 1, 2 * k) = -1.0;
  }
  return sigma;
}

Matrix rotation(double angle) {
  Matrix r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

SymplecticMatrix::SymplecticMatrix(const Matrix& s, double tol) : s_(s) {
  if (!check_symplectic(s, tol)) {
    throw PhysicalityError("SymplecticMatrix: S Sigma S^T differs from Sigma by more than tolerance");
  }
}

SymplecticMatrix SymplecticMatrix::identity(int modes) {
  return SymplecticMatrix(Matrix::Identity(2 * modes, 2 * modes));
}

CovarianceReport validate_covariance(const Matrix& gamma, double tol) {
  require_phase_space_shape(gamma, "validate_covariance");
  const int modes = static_cast<int>(gamma.rows() / 2);
  const Matrix sym = 0.5 * (gamma + gamma.transpose());
  CMatrix h = sym.cast<Complex>();
  h += Complex(0.0, 1.0) * symplectic_form(modes).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  return {min_eig >= -tol, min_eig};
}

bool check_symplectic(const Matrix& s, double tol) {
  require_phase_space_shape(s, "check_symplectic");
  const Matrix sigma = symplectic_form(static_cast<int>(s.rows() / 2));
  return (s * sigma * s.transpose() - sigma).cwiseAbs().maxCoeff() <= tol;
}

Matrix gate_matrix(const Gate& gate, int modes) {
  if (modes <= 0) throw DimensionError("gate_matrix: mode count must be positive");
  return std::visit(GateEmbedder{modes}, gate);
}

SymplecticMatrix build_symplectic(std::span<const Gate> gates, int modes) {
  if (modes <= 0) throw DimensionError("build_symplectic: mode count must be positive");
  Matrix s = Matrix::Identity(2 * modes, 2 * modes);
  for (const Gate& g : gates) s = s * gate_matrix(g, modes);
  return SymplecticMatrix(s);
}

GaussianState apply_symplectic(const GaussianState& state, const SymplecticMatrix& s) {
  if (state.modes() != s.modes()) {
    throw DimensionError("apply_symplectic: state has " + std::to_string(state.modes()) +
                         " modes, transformation has " + std::to_string(s.modes()));
  }
  const Matrix& m = s.matrix();
  return GaussianState(m * state.mean(),
                       CovarianceMatrix(m * state.covariance().matrix() * m.transpose()));
}

EulerDecomposition euler_decompose(const SymplecticMatrix& s) {
  const Matrix& m = s.matrix();
  const int n = s.modes();
  const int dim = 2 * n;
  const Matrix sigma_t = symplectic_form(n).transpose();

  // Eigenvectors of S^T S come in pairs (v, Sigma^T v) with eigenvalues
  // (k^2, 1/k^2). Walk them by descending eigenvalue and keep a
  // symplectic-orthonormal frame; a vector already spanned (the partner of an
  // accepted one) is skipped.
  const Matrix gram = m.transpose() * m;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (gram + gram.transpose()));
  const Matrix& vecs = solver.eigenvectors();

  Matrix frame = Matrix::Zero(dim, dim);
  std::vector<double> ks;
  int filled = 0;
  auto orthogonalise = [&](Vector v) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int c = 0; c < filled; ++c) v -= frame.col(c).dot(v) * frame.col(c);
    }
    return v;
  };
  for (int idx = dim - 1; idx >= 0 && filled < dim; --idx) {
    Vector u = orthogonalise(vecs.col(idx));
    if (u.norm() < 0.5) continue;
    u.normalize();
    // Fix the sign so that diagonal inputs give identity outer factors.
    Eigen::Index lead = 0;
    u.cwiseAbs().maxCoeff(&lead);
    if (u(lead) < 0.0) u = -u;
    frame.col(filled++) = u;
    Vector w = orthogonalise(sigma_t * u);
    w.normalize();
    frame.col(filled++) = w;
    ks.push_back(std::max(1.0, (m * u).norm()));
  }
  if (filled != dim) throw ConsistencyError("euler_decompose: failed to build a symplectic frame");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return ks[a] > ks[b]; });

  Matrix o = Matrix::Zero(dim, dim);
  EulerDecomposition out;
  out.squeezing.resize(n);
  out.diagonal = Matrix::Zero(dim, dim);
  Vector inv_d(dim);
  for (int p = 0; p < n; ++p) {
    const int src = order[p];
    o.col(2 * p) = frame.col(2 * src);
    o.col(2 * p + 1) = frame.col(2 * src + 1);
    const double k = ks[src];
    out.squeezing(p) = k;
    out.diagonal(2 * p, 2 * p) = k;
    out.diagonal(2 * p + 1, 2 * p + 1) = 1.0 / k;
    inv_d(2 * p) = 1.0 / k;
    inv_d(2 * p + 1) = k;
  }
  out.right = o.transpose();
  out.left = m * o * inv_d.asDiagonal();
  return out;
}

Vector symplectic_eigenvalues(const CovarianceMatrix& gamma) {
  const Matrix& g = gamma.matrix();
  const int n = gamma.modes();
  const Matrix sigma = symplectic_form(n);

  // For positive-definite Gamma = L L^T, i Sigma Gamma is similar to the
  // Hermitian matrix L^T (i Sigma) L, whose spectrum is {+-nu_k}.
  Eigen::LLT<Matrix> llt(g);
  if (llt.info() == Eigen::Success) {
    const Matrix l = llt.matrixL();
    const CMatrix h = Complex(0.0, 1.0) * (l.transpose() * sigma * l).cast<Complex>();
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().tail(n);
  }

  Eigen::EigenSolver<Matrix> solver(sigma * g, false);
  std::vector<double> moduli;
  for (int k = 0; k < 2 * n; ++k) moduli.push_back(std::abs(solver.eigenvalues()(k)));
  std::sort(moduli.begin(), moduli.end());
  Vector out(n);
  for (int k = 0; k < n; ++k) out(k) = 0.5 * (moduli[2 * k] + moduli[2 * k + 1]);
  return out;
}

}  // namespace cvgauss
