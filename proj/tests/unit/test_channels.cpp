#include <doctest.h>

#include <cvgauss/channels.hpp>
#include <cvgauss/states.hpp>
#include <cvgauss/symplectic.hpp>

#include "../support/random.hpp"

#include <cmath>
#include <numbers>

using namespace cvgauss;
using cvgauss::testing::max_abs_diff;

TEST_CASE("apply_channel") {
  SUBCASE("added noise turns the vacuum thermal") {
    const GaussianChannel ch(Matrix::Identity(2, 2), 2.0 * 1.5 * Matrix::Identity(2, 2));
    CHECK(max_abs_diff(apply_channel(vacuum(), ch).covariance().matrix(),
                       thermal(1.5).covariance().matrix()) < 1e-15);
  }
  SUBCASE("identity channel") {
    const GaussianState in(Vector::Constant(4, 0.3), tmsv(0.4).covariance());
    const GaussianState out = apply_channel(in, GaussianChannel::identity(2));
    CHECK(max_abs_diff(out.covariance().matrix(), in.covariance().matrix()) == 0.0);
    CHECK(max_abs_diff(out.mean(), in.mean()) == 0.0);
  }
  SUBCASE("ideal fibers leave a TMSV unchanged") {
    const GaussianChannel fibers = tensor(fiber_channel(FiberParams::ideal()), fiber_channel(FiberParams::ideal()));
    CHECK(max_abs_diff(apply_channel(tmsv(0.9), fibers).covariance().matrix(),
                       tmsv(0.9).covariance().matrix()) == 0.0);
  }
  SUBCASE("errors") {
    const GaussianChannel bad(Matrix::Identity(2, 2), -0.1 * Matrix::Identity(2, 2));
    CHECK_THROWS_AS(apply_channel(vacuum(), bad), PhysicalityError);
    CHECK_THROWS_AS(apply_channel(vacuum(2), GaussianChannel::identity(1)), DimensionError);
    CHECK_THROWS_AS(GaussianChannel(Matrix::Identity(2, 2), Matrix::Identity(4, 4)), DimensionError);
  }
}

TEST_CASE("fiber_channel") {
  SUBCASE("ideal fiber") {
    const GaussianChannel ch = fiber_channel(FiberParams::ideal());
    CHECK(max_abs_diff(ch.a(), Matrix::Identity(2, 2)) == 0.0);
    CHECK(ch.g().isZero());
  }
  SUBCASE("half transmission at zero temperature") {
    const GaussianChannel ch = fiber_channel({std::sqrt(0.5), 0.0, 0.0, 0.0});
    CHECK(max_abs_diff(ch.a(), std::sqrt(0.5) * Matrix::Identity(2, 2)) < 1e-15);
    CHECK(max_abs_diff(ch.g(), 0.5 * Matrix::Identity(2, 2)) < 1e-15);
  }
  SUBCASE("opaque fiber outputs its thermal bath") {
    const GaussianChannel ch = fiber_channel({0.0, 0.0, 0.0, 2.0});
    CHECK(max_abs_diff(ch.g(), 5.0 * Matrix::Identity(2, 2)) == 0.0);
    CHECK(max_abs_diff(apply_channel(squeezed(0.7), ch).covariance().matrix(),
                       thermal(2.0).covariance().matrix()) == 0.0);
  }
  SUBCASE("phase enters as a rotation") {
    const GaussianChannel ch = fiber_channel({0.9, 0.4, 0.1, 0.0});
    CHECK(max_abs_diff(ch.a(), 0.9 * rotation(0.4)) < 1e-15);
  }
  SUBCASE("parameter ranges") {
    CHECK_THROWS_AS(fiber_channel({1.1, 0.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(fiber_channel({0.9, 0.0, 0.5, 0.0}), DomainError);
    CHECK_THROWS_AS(fiber_channel({0.5, 0.0, 0.0, -1.0}), DomainError);
    CHECK_THROWS_AS(fiber_from_length(1.0, 0.0), DomainError);
  }
  SUBCASE("Lambert-Beer helper") {
    const FiberParams f = fiber_from_length(0.7, 2.0, 0.25);
    CHECK(f.t_mag == doctest::Approx(std::exp(-0.35)));
    CHECK(f.r_mag == 0.0);
    CHECK(f.n_th == 0.25);
  }
}

TEST_CASE("degraded_tmsv") {
  SUBCASE("ideal fibers") {
    CHECK(max_abs_diff(degraded_tmsv(0.6, FiberParams::ideal(), FiberParams::ideal()).matrix(),
                       tmsv(0.6).covariance().matrix()) == 0.0);
  }
  SUBCASE("equal fibers reduce to |T|^2 Gamma + noise") {
    const FiberParams f{0.8, 0.0, 0.3, 0.7};
    const double noise = 0.09 + 2.4 * (1.0 - 0.64 - 0.09);
    const Matrix expected = 0.64 * tmsv(0.45).covariance().matrix() + noise * Matrix::Identity(4, 4);
    CHECK(max_abs_diff(degraded_tmsv(0.45, f, f).matrix(), expected) < 1e-14);
  }
  SUBCASE("phases produce c2") {
    const double q = std::numbers::pi / 4.0;
    const FiberParams f1{0.9, q, 0.0, 0.0};
    const FiberParams f2{0.8, q, 0.0, 0.0};
    const DecoheredTmsv e = degraded_tmsv_entries(0.3, f1, f2);
    CHECK(std::abs(e.c1) < 1e-15);
    CHECK(e.c2 == doctest::Approx(0.458390579147).epsilon(1e-11));
    CHECK(max_abs_diff(degraded_tmsv(0.3, f1, f2).matrix(), e.matrix().matrix()) < 1e-14);
  }
  SUBCASE("closed-form entries match channel composition on random fibers") {
    cvgauss::testing::Random rng(3);
    for (int trial = 0; trial < 100; ++trial) {
      const FiberParams f1 = rng.fiber();
      const FiberParams f2 = rng.fiber();
      const double zeta = rng.uniform(0.0, 2.0);
      CHECK(max_abs_diff(degraded_tmsv(zeta, f1, f2).matrix(),
                         degraded_tmsv_entries(zeta, f1, f2).matrix().matrix()) < 1e-12);
    }
  }
}

TEST_CASE("validate_channel") {
  CHECK(validate_channel(GaussianChannel::identity(1)));
  CHECK_FALSE(validate_channel(GaussianChannel(Matrix::Identity(2, 2), -0.1 * Matrix::Identity(2, 2))));
  // Ideal amplification by 2 needs at least 3 units of noise.
  CHECK(validate_channel(GaussianChannel(2.0 * Matrix::Identity(2, 2), 3.0 * Matrix::Identity(2, 2))));
  CHECK_FALSE(validate_channel(GaussianChannel(2.0 * Matrix::Identity(2, 2), 2.9 * Matrix::Identity(2, 2))));

  cvgauss::testing::Random rng(4);
  for (int trial = 0; trial < 200; ++trial) CHECK(validate_channel(fiber_channel(rng.fiber(0.0, 3.0))));
}

TEST_CASE("channel composition") {
  cvgauss::testing::Random rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const GaussianChannel first = rng.channel(2);
    const GaussianChannel second = rng.channel(2);
    const GaussianState in(rng.gaussian_vector(4), rng.physical_covariance(2));
    const GaussianState stepwise = apply_channel(apply_channel(in, first), second);
    const GaussianState composed = apply_channel(in, compose(second, first));
    const double scale = std::max(1.0, composed.covariance().matrix().cwiseAbs().maxCoeff());
    CHECK(max_abs_diff(stepwise.covariance().matrix(), composed.covariance().matrix()) <= 1e-10 * scale);
    CHECK(max_abs_diff(stepwise.mean(), composed.mean()) <= 1e-10 * scale);
  }
  CHECK_THROWS_AS(compose(GaussianChannel::identity(1), GaussianChannel::identity(2)), DimensionError);
}
