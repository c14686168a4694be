#include <doctest.h>

#include <cvgauss/states.hpp>
#include <cvgauss/symplectic.hpp>
#include <cvgauss/teleportation.hpp>

#include "../support/random.hpp"

#include <cmath>
#include <numbers>

using namespace cvgauss;
using cvgauss::testing::max_abs_diff;

namespace {

TeleportSetup ideal_setup(const CovarianceMatrix& in, double zeta) {
  return {in, zeta, FiberParams::ideal(), FiberParams::ideal()};
}

CovarianceMatrix signal(double eta) { return squeezed_signal(eta).covariance(); }

}  // namespace

TEST_CASE("teleport limits") {
  SUBCASE("large squeezing reproduces the input") {
    cvgauss::testing::Random rng(40);
    for (int trial = 0; trial < 10; ++trial) {
      const CovarianceMatrix in = rng.pure_single_mode();
      const TeleportResult r = teleport(ideal_setup(in, 20.0));
      CHECK(max_abs_diff(r.gamma_rec.matrix(), in.matrix()) <= 1e-8);
      CHECK(r.fidelity_zero_mean == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(max_abs_diff(r.gain, symplectic_form(1)) <= 1e-6);
    }
  }
  SUBCASE("no entanglement, vacuum input") {
    const TeleportResult r = teleport(ideal_setup(CovarianceMatrix::identity(1), 0.0));
    CHECK(max_abs_diff(r.gamma_rec.matrix(), Matrix::Identity(2, 2)) < 1e-15);
    CHECK(r.gain.isZero());
  }
  SUBCASE("vacuum input at any squeezing") {
    for (double zeta : {0.1, 0.6, 1.4, 3.0}) {
      const TeleportResult r = teleport(ideal_setup(CovarianceMatrix::identity(1), zeta));
      CHECK(max_abs_diff(r.gamma_rec.matrix(), Matrix::Identity(2, 2)) < 1e-12);
      CHECK(max_abs_diff(r.gain, std::tanh(zeta) * symplectic_form(1)) < 1e-14);
      CHECK(max_abs_diff(r.homodyne.mean_map, std::sqrt(2.0) * r.gain) < 1e-14);
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(teleport(ideal_setup(CovarianceMatrix(0.5 * Matrix::Identity(2, 2)), 0.5)), PhysicalityError);
    CHECK_THROWS_AS(teleport(ideal_setup(CovarianceMatrix::identity(2), 0.5)), DimensionError);
  }
}

TEST_CASE("explicit receiver covariance matches the generic path") {
  cvgauss::testing::Random rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const TeleportSetup s{rng.physical_covariance(1), rng.uniform(0.0, 2.5), rng.fiber(), rng.fiber()};
    const HomodyneResult hom = homodyne_project(tripartite_covariance(s), std::vector<QuadratureIndex>{
                                                                              {0, Quadrature::X}, {1, Quadrature::P}});
    const Matrix explicit_rec = receiver_covariance_explicit(s).matrix();
    CHECK(max_abs_diff(explicit_rec, hom.gamma_out.matrix()) <= 1e-10 * std::max(1.0, explicit_rec.cwiseAbs().maxCoeff()));
    CHECK(validate_covariance(explicit_rec).physical);
    // The generic mean map is the printed gain in natural units.
    const TeleportResult r = teleport(s);
    CHECK(max_abs_diff(hom.mean_map, std::sqrt(2.0) * r.gain) <= 1e-10 * std::max(1.0, r.gain.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("receiver covariance does not depend on the outcome") {
  const TeleportSetup s{signal(0.7), 0.8, {0.9, 0.2, 0.1, 0.3}, {0.8, -0.4, 0.0, 0.1}};
  const TeleportResult r = teleport(s);
  const GaussianState a = r.homodyne.conditional_state(Vector::Constant(2, 0.4));
  const GaussianState b = r.homodyne.conditional_state(Vector::Constant(2, -2.0));
  CHECK(max_abs_diff(a.covariance().matrix(), r.gamma_rec.matrix()) == 0.0);
  CHECK(max_abs_diff(b.covariance().matrix(), r.gamma_rec.matrix()) == 0.0);
  CHECK(max_abs_diff(a.mean(), b.mean()) > 0.0);
}

TEST_CASE("fidelity") {
  CHECK(fidelity(signal(0.6), signal(0.6)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fidelity(CovarianceMatrix::identity(1), thermal(1.0).covariance()) == doctest::Approx(0.5).epsilon(1e-15));
  const double classical = teleport(ideal_setup(signal(1.0), 0.0)).fidelity_zero_mean;
  CHECK(classical == doctest::Approx(0.886818883970).epsilon(1e-11));
  CHECK(classical == doctest::Approx(std::sqrt(2.0 / (1.0 + std::cosh(1.0)))).epsilon(1e-12));
  CHECK_THROWS_AS(fidelity(CovarianceMatrix::identity(2), CovarianceMatrix::identity(1)), DimensionError);
}

TEST_CASE("pure_squeezed_fidelity") {
  CHECK(pure_squeezed_fidelity(0.0, 0.7) == 1.0);
  CHECK(pure_squeezed_fidelity(0.5, 0.5) == doctest::Approx(0.980780342480).epsilon(1e-11));
  CHECK(pure_squeezed_fidelity(2.0, 20.0) == doctest::Approx(1.0).epsilon(1e-15));
  for (double eta = 0.0; eta <= 2.0; eta += 0.25) {
    double previous = 0.0;
    for (double zeta = 0.0; zeta <= 2.0; zeta += 0.2) {
      const double closed = pure_squeezed_fidelity(eta, zeta);
      CHECK(teleport(ideal_setup(signal(eta), zeta)).fidelity_zero_mean == doctest::Approx(closed).epsilon(1e-10));
      if (eta > 0.0) CHECK(closed > previous);
      previous = closed;
    }
  }
}

TEST_CASE("ideal_displacement_gain") {
  CHECK(max_abs_diff(ideal_displacement_gain(FiberParams::ideal(), FiberParams::ideal()), symplectic_form(1)) == 0.0);
  const Matrix scaled = ideal_displacement_gain({0.8, 0.0, 0.0, 0.0}, {0.6, 0.0, 0.0, 0.0});
  CHECK(max_abs_diff(scaled, 0.75 * symplectic_form(1)) < 1e-15);

  const double q = std::numbers::pi / 4.0;
  const FiberParams f1{0.9, q, 0.1, 0.0};
  const FiberParams f2{0.7, q, 0.2, 0.0};
  const Matrix rotated = ideal_displacement_gain(f1, f2);
  CHECK(max_abs_diff(rotated, (0.7 / 0.9) * symplectic_form(1) * rotation(std::numbers::pi / 2.0)) < 1e-15);
  CHECK(max_abs_diff(teleport({signal(0.3), 20.0, f1, f2}).gain, rotated) <= 1e-6);

  CHECK_THROWS_AS(ideal_displacement_gain({0.0, 0.0, 0.0, 0.0}, FiberParams::ideal()), DomainError);
}

TEST_CASE("outcome density") {
  const TeleportSetup s{signal(0.4), 0.7, {0.85, 0.3, 0.1, 0.2}, {0.9, 0.0, 0.0, 0.0}};
  const TeleportResult r = teleport(s);
  const Matrix cov = 0.5 * r.homodyne.outcome_block;
  const double sx = std::sqrt(cov(0, 0));
  const double sy = std::sqrt(cov(1, 1));
  const int n = 301;
  const double hx = 20.0 * sx / (n - 1);
  const double hy = 20.0 * sy / (n - 1);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double w = ((i == 0 || i == n - 1) ? 0.5 : 1.0) * ((j == 0 || j == n - 1) ? 0.5 : 1.0);
      const Vector v{{-10.0 * sx + i * hx, -10.0 * sy + j * hy}};
      total += w * r.density(v);
    }
  }
  CHECK(std::abs(total * hx * hy - 1.0) <= 1e-6);
}

TEST_CASE("characteristic-function overlap is even under lambda -> -lambda") {
  // Tr(rho sigma) = (1 / 2 pi) \int chi_rho(l) chi_sigma(-l) d^2 l. For
  // zero-mean Gaussians flipping the sign of the second argument changes
  // nothing; the quadrature below checks it against 2 / sqrt(det(A + B)).
  const GaussianState a(Vector::Zero(2), signal(0.5));
  const GaussianState b(Vector::Zero(2), teleport(ideal_setup(signal(0.5), 0.4)).gamma_rec);
  const int n = 241;
  const double lim = 12.0;
  const double h = 2.0 * lim / (n - 1);
  Complex plus = 0.0;
  Complex minus = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vector l{{-lim + i * h, -lim + j * h}};
      plus += characteristic_function(a, l) * characteristic_function(b, l);
      minus += characteristic_function(a, l) * characteristic_function(b, -l);
    }
  }
  plus *= h * h / (2.0 * std::numbers::pi);
  minus *= h * h / (2.0 * std::numbers::pi);
  const double expected = fidelity(a.covariance(), b.covariance());
  CHECK(std::abs(plus - minus) < 1e-12);
  CHECK(std::abs(minus - expected) < 1e-9);
  CHECK(gaussian_overlap(a, b) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("Monte-Carlo displaced fidelity") {
  const Vector kappa{{0.8, -0.5}};
  SUBCASE("exact gain at large squeezing is perfect") {
    const TeleportSetup s = ideal_setup(signal(0.6), 20.0);
    const MonteCarloFidelity mc = displaced_fidelity_mc(s, kappa, teleport(s).gain, 200, 7);
    CHECK(mc.mean == doctest::Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("the exact conditional gain removes all outcome dependence") {
    const TeleportSetup s{signal(0.6), 0.9, {0.9, 0.0, 0.0, 0.0}, {0.8, 0.0, 0.0, 0.0}};
    const TeleportResult r = teleport(s);
    const MonteCarloFidelity centered = displaced_fidelity_mc(s, Vector::Zero(2), r.gain, 500, 11);
    CHECK(centered.mean == doctest::Approx(r.fidelity_zero_mean).epsilon(1e-10));
    CHECK(centered.standard_error < 1e-10);
    // A displaced input keeps a fixed residual offset through lossy arms.
    const MonteCarloFidelity shifted = displaced_fidelity_mc(s, kappa, r.gain, 500, 11);
    CHECK(shifted.standard_error < 1e-10);
    CHECK(shifted.mean < r.fidelity_zero_mean);
  }
  SUBCASE("the infinite-squeezing gain costs fidelity at finite squeezing") {
    const TeleportSetup s{signal(0.6), 0.9, {0.9, 0.0, 0.0, 0.0}, {0.8, 0.0, 0.0, 0.0}};
    const TeleportResult r = teleport(s);
    const Matrix limit = ideal_displacement_gain(s.sender, s.receiver);
    const MonteCarloFidelity mc = displaced_fidelity_mc(s, kappa, limit, 4000, 3);
    CHECK(mc.mean < r.fidelity_zero_mean - 5.0 * mc.standard_error);
  }
  SUBCASE("deterministic for a seed") {
    const TeleportSetup s{signal(0.2), 0.5, {0.7, 0.1, 0.0, 0.0}, {0.9, 0.0, 0.0, 0.0}};
    const Matrix g = symplectic_form(1);
    const MonteCarloFidelity a = displaced_fidelity_mc(s, kappa, g, 300, 99);
    const MonteCarloFidelity b = displaced_fidelity_mc(s, kappa, g, 300, 99);
    const MonteCarloFidelity c = displaced_fidelity_mc(s, kappa, g, 300, 100);
    CHECK(a.mean == b.mean);
    CHECK(a.standard_error == b.standard_error);
    CHECK(a.mean != c.mean);
  }
  SUBCASE("errors") {
    const TeleportSetup s = ideal_setup(signal(0.2), 0.5);
    CHECK_THROWS_AS(displaced_fidelity_mc(s, kappa, symplectic_form(1), 0, 1), DomainError);
    CHECK_THROWS_AS(displaced_fidelity_mc(s, Vector::Zero(3), symplectic_form(1), 10, 1), DimensionError);
  }
}
