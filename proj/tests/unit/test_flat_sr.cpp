#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "wigrot/error.hpp"
#include "wigrot/flat_sr.hpp"
#include "wigrot/scenario.hpp"
#include "wigrot/tetrads.hpp"
#include "wigrot/wigner.hpp"

using namespace wigrot;
namespace {
const Complex I(0, 1);

Vec3 random_dir(std::mt19937_64& rng) {
  std::normal_distribution<double> N;
  return Vec3(N(rng), N(rng), N(rng)).normalized();
}

Vec4 null4(const Vec3& n) { return Vec4(1, n[0], n[1], n[2]); }
}  // namespace

TEST_CASE("rotation to direction") {
  CHECK((rotation_to_direction(Vec3::UnitZ()) - Mat4::Identity()).cwiseAbs().maxCoeff() == 0.0);
  const Mat4 Rx = rotation_to_direction(Vec3::UnitX());
  CHECK((Rx - rotation_matrix(Vec3::UnitY(), 0.5 * std::numbers::pi)).cwiseAbs().maxCoeff() < 1e-15);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const Vec3 k = random_dir(rng);
    const Mat4 R = rotation_to_direction(k);
    CHECK((R.transpose() * R - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((R.bottomRightCorner<3, 3>() * Vec3::UnitZ() - k).cwiseAbs().maxCoeff() < 1e-14);
  }
  const Mat4 S = rotation_to_direction(-Vec3::UnitZ());
  CHECK((S - rotation_matrix(Vec3::UnitX(), std::numbers::pi)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("SL(2,C) images of boosts and rotations") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int i = 0; i < 20; ++i) {
    const Boost b{random_dir(rng), U(rng)};
    CHECK((lorentz_from_sl2c(boost_sl2c(b)) - boost_matrix(b)).cwiseAbs().maxCoeff() < 1e-12 * std::cosh(2.0));
    const Vec3 m = random_dir(rng);
    const double a = U(rng);
    CHECK((lorentz_from_sl2c(rotation_sl2c(m, a)) - rotation_matrix(m, a)).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("helicity polarization vectors") {
  const Polarization4Vector e = helicity_polarization(Vec3::UnitZ(), 1);
  CHECK((e - Vec4c(0, 1, -I, 0) / std::sqrt(2.0)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((helicity_polarization(Vec3::UnitZ(), -1) - e.conjugate()).cwiseAbs().maxCoeff() < 1e-15);
  std::mt19937_64 rng(3);
  const Eigen::Matrix4cd eta = kEta.cast<Complex>();
  for (int i = 0; i < 20; ++i) {
    const Vec3 k = random_dir(rng);
    for (int h : {1, -1}) {
      const Polarization4Vector p = helicity_polarization(k, h);
      CHECK(std::abs(p.dot(eta * null4(k).cast<Complex>())) < 1e-14);
      CHECK(std::abs(p.dot(eta * p) + 1.0) < 1e-14);  // dot() conjugates the first argument
    }
  }
  CHECK_THROWS_AS(helicity_polarization(Vec3::UnitZ(), 0), Error);
}

TEST_CASE("polarization transformation") {
  const Polarization4Vector e = helicity_polarization(Vec3::UnitZ(), 1);
  const Vec4 kz = null4(Vec3::UnitZ());
  CHECK((transform_polarization(Mat4::Identity(), e, kz) - e).cwiseAbs().maxCoeff() < 1e-15);
  const Polarization4Vector ez = transform_polarization(boost_matrix({Vec3::UnitZ(), 0.9}), e, kz);
  CHECK((ez - e).cwiseAbs().maxCoeff() < 1e-15);
  const Polarization4Vector eb = transform_polarization(boost_matrix({Vec3(0.6, 0, 0.8), -1.1}), e, kz);
  CHECK(eb[0] == Complex(0.0));
}

TEST_CASE("linear polarization and angle extraction") {
  CHECK((linear_polarization(Vec3::UnitZ(), 0.0) - Vec4c(0, 1, 0, 0)).cwiseAbs().maxCoeff() < 1e-15);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const Vec3 k = random_dir(rng);
    const double phi = 0.1 * i - 1.0;
    const Polarization4Vector lp = linear_polarization(k, phi);
    const Polarization4Vector mix =
        (std::exp(I * phi) * helicity_polarization(k, 1) + std::exp(-I * phi) * helicity_polarization(k, -1)) /
        std::sqrt(2.0);
    CHECK((lp - mix).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((linear_polarization(k, phi + std::numbers::pi) + lp).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(extract_polarization_angle(lp, k) == doctest::Approx(phi).epsilon(1e-13));
  }
  CHECK(extract_polarization_angle(linear_polarization(Vec3::UnitZ(), 0.3), Vec3::UnitZ()) ==
        doctest::Approx(0.3));
  try {
    extract_polarization_angle(Vec4c(0, 0, 0, 1), Vec3::UnitZ());
    FAIL("expected NonTransverse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonTransverse);
  }
}

TEST_CASE("gauge invariance of the extracted angle") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int i = 0; i < 20; ++i) {
    const Vec3 k = random_dir(rng);
    const Vec4 k4 = null4(k);
    const Polarization4Vector lp = linear_polarization(k, 0.4);
    const Complex c(U(rng), 0.0);
    Polarization4Vector shifted = lp + c * k4.cast<Complex>();
    shifted -= (shifted[0] / k4[0]) * k4.cast<Complex>();  // re-gauge t
    const double d = extract_polarization_angle(shifted, k) - 0.4;
    CHECK(std::abs(std::remainder(d, std::numbers::pi)) < 1e-12);
  }
}

TEST_CASE("reference flat-space geometries") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int i = 0; i < 50; ++i)
    CHECK(std::abs(wigner_angle_flat({random_dir(rng), U(rng)}, Vec3::UnitZ())) < 1e-10);

  // k and boost direction in the y-z plane: no rotation.
  CHECK(std::abs(wigner_angle_flat({Vec3(0, 0.6, 0.8), 1.3}, Vec3(0, -0.8, 0.6))) < 1e-12);

  const FlatCase fa2 = flat_preset("flat-transverse");
  const FlatWigner w = wigner_angle_flat_detail(fa2.boost, fa2.k_hat);
  const double vartheta = std::atan2(w.k_prime[2], w.k_prime[1]);  // CCW rotation of k about z
  CHECK(w.psi == doctest::Approx(-vartheta).epsilon(1e-12));
  CHECK(std::abs(vartheta) == doctest::Approx(w.aberration).epsilon(1e-12));

  const FlatCase fa3 = flat_preset("flat-infinitesimal");
  CHECK(wigner_angle_flat(fa3.boost, fa3.k_hat) == doctest::Approx(fa3.expected_psi).epsilon(1e-6));
}

TEST_CASE("route equivalence and helicity preservation") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int i = 0; i < 200; ++i) {
    const Boost b{random_dir(rng), U(rng)};
    const Vec3 k = random_dir(rng);
    const FlatWigner w = wigner_angle_flat_detail(b, k);
    CHECK(std::abs(wrap_angle(w.psi_polarization - w.psi_sl2c)) < 1e-9);

    const Mat4 L = boost_matrix(b);
    const Vec3 kp = w.k_prime.tail<3>().normalized();
    for (int h : {1, -1}) {
      const Polarization4Vector out = transform_polarization(L, helicity_polarization(k, h), null4(k));
      const Polarization4Vector expect = std::exp(-I * static_cast<double>(h) * w.psi) * helicity_polarization(kp, h);
      CHECK((out - expect).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("flat limit of the curved pipeline") {
  // Flat space, radial ray, frame axes (t, r, theta, phi) boosted along the
  // local theta axis with a rapidity that grows along the ray. The phase is
  // additive over collinear boosts, so the accumulated angle must equal the
  // flat-space angle of the total boost seen by the photon.
  MetricConfig flat;
  flat.flat_limit = true;
  const double r0 = 10.0, r1 = 5.0, rate = 0.08;
  const TetradField field = custom_field([&](const SpacetimePoint& x) {
    Mat4 e = Mat4::Zero();
    e(0, 0) = 1;
    e(1, 1) = 1;
    e(2, 2) = 1 / x.r();
    e(3, 3) = 1 / (x.r() * std::sin(x.theta()));
    return Mat4(boost_matrix({Vec3::UnitY(), rate * (r0 - x.r())}) * e);
  });
  const WignerResult acc = accumulate_along_trajectory(flat, trace_scenario(flat, {}, r0, r1, 1e-3), field);
  // Rows transform covariant components, so the photon sees the opposite rapidity.
  const double expected = wigner_angle_flat({Vec3::UnitY(), -rate * (r0 - r1)}, -Vec3::UnitX());
  CHECK(std::abs(expected) > 1e-3);
  CHECK(acc.psi_total == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("angle wrapping") {
  CHECK(wrap_angle(std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(wrap_angle(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(wrap_angle(3 * std::numbers::pi / 2) == doctest::Approx(-std::numbers::pi / 2));
}
