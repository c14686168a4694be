#include <cvgauss/channels.hpp>
#include <cvgauss/states.hpp>
#include <cvgauss/symplectic.hpp>

#include <string>

namespace cvgauss {

GaussianChannel::GaussianChannel(const Matrix& a, const Matrix& g) {
  require_phase_space_shape(a, "GaussianChannel A");
  require_phase_space_shape(g, "GaussianChannel G");
  if (a.rows() != g.rows()) throw DimensionError("GaussianChannel: A and G differ in dimension");
  a_ = a;
  g_ = 0.5 * (g + g.transpose());
}

GaussianChannel GaussianChannel::identity(int modes) {
  return {Matrix::Identity(2 * modes, 2 * modes), Matrix::Zero(2 * modes, 2 * modes)};
}

GaussianChannel compose(const GaussianChannel& after, const GaussianChannel& before) {
  if (after.modes() != before.modes()) throw DimensionError("compose: mode counts differ");
  return {after.a() * before.a(), after.a() * before.g() * after.a().transpose() + after.g()};
}

GaussianChannel tensor(const GaussianChannel& first, const GaussianChannel& second) {
  return {direct_sum(first.a(), second.a()), direct_sum(first.g(), second.g())};
}

bool validate_channel(const GaussianChannel& channel, double tol) {
  const Matrix sigma = symplectic_form(channel.modes());
  const Matrix& a = channel.a();
  const Complex i(0.0, 1.0);
  const CMatrix h = channel.g().cast<Complex>() + i * (sigma - a * sigma * a.transpose()).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

GaussianState apply_channel(const GaussianState& state, const GaussianChannel& channel, double tol) {
  if (state.modes() != channel.modes()) {
    throw DimensionError("apply_channel: state has " + std::to_string(state.modes()) +
                         " modes, channel acts on " + std::to_string(channel.modes()));
  }
  if (!validate_channel(channel, tol)) {
    throw PhysicalityError("apply_channel: channel is not completely positive");
  }
  const Matrix& a = channel.a();
  return GaussianState(a * state.mean(),
                       CovarianceMatrix(a * state.covariance().matrix() * a.transpose() + channel.g()));
}

void FiberParams::validate() const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(t_mag)) throw DomainError("fiber: |T| must lie in [0,1], got " + std::to_string(t_mag));
  if (!in_unit(r_mag)) throw DomainError("fiber: |R| must lie in [0,1], got " + std::to_string(r_mag));
  if (!std::isfinite(phase)) throw DomainError("fiber: phase must be finite");
  if (!(n_th >= 0.0) || !std::isfinite(n_th)) {
    throw DomainError("fiber: n_th must be finite and >= 0, got " + std::to_string(n_th));
  }
  if (t_mag * t_mag + r_mag * r_mag > 1.0 + 1e-12) {
    throw DomainError("fiber: |T|^2 + |R|^2 exceeds 1");
  }
}

double FiberParams::noise() const {
  const double absorbed = std::max(0.0, 1.0 - t_mag * t_mag - r_mag * r_mag);
  return r_mag * r_mag + (2.0 * n_th + 1.0) * absorbed;
}

FiberParams fiber_from_length(double length, double absorption_length, double n_th) {
  if (!(length >= 0.0)) throw DomainError("fiber_from_length: length must be >= 0");
  if (!(absorption_length > 0.0)) throw DomainError("fiber_from_length: absorption length must be > 0");
  FiberParams f{std::exp(-length / absorption_length), 0.0, 0.0, n_th};
  f.validate();
  return f;
}

GaussianChannel fiber_channel(const FiberParams& fiber) {
  fiber.validate();
  return {fiber.t_mag * rotation(fiber.phase), fiber.noise() * Matrix::Identity(2, 2)};
}

CovarianceMatrix DecoheredTmsv::matrix() const {
  Matrix g(4, 4);
  g << a, 0, c1, c2,
       0, a, c2, -c1,
       c1, c2, b, 0,
       c2, -c1, 0, b;
  return CovarianceMatrix(g);
}

DecoheredTmsv degraded_tmsv_entries(double zeta, const FiberParams& sender,
                                    const FiberParams& receiver) {
  sender.validate();
  receiver.validate();
  const double c = std::cosh(2.0 * zeta);
  const double s = std::sinh(2.0 * zeta);
  const Complex t1 = std::polar(sender.t_mag, sender.phase);
  const Complex t2 = std::polar(receiver.t_mag, receiver.phase);
  const Complex t12 = t1 * t2;
  return {c * sender.t_mag * sender.t_mag + sender.noise(),
          c * receiver.t_mag * receiver.t_mag + receiver.noise(), s * t12.real(), s * t12.imag()};
}

CovarianceMatrix degraded_tmsv(double zeta, const FiberParams& sender, const FiberParams& receiver) {
  const GaussianChannel fibers = tensor(fiber_channel(sender), fiber_channel(receiver));
  return apply_channel(tmsv(zeta), fibers).covariance();
}

}  // namespace cvgauss
