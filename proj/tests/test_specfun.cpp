#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "crackimg/specfun.hpp"
#include "oracles.hpp"

using namespace crackimg;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("bessel_j0 matches the frozen references") {
  CHECK(bessel_j0(0.0) == 1.0);
  CHECK(std::abs(bessel_j0(oracle::kJ0FirstZero)) <= 1e-9);
  CHECK(std::abs(bessel_j0(oracle::kJ1FirstZero) - oracle::kJ0AtJ1FirstZero) <= 1e-8);
  CHECK(std::abs(bessel_j0(5.0) - oracle::kJ0AtFive) <= 1e-10);
}

TEST_CASE("bessel_j1 matches the frozen references") {
  CHECK(bessel_j1(0.0) == 0.0);
  CHECK(std::abs(bessel_j1(oracle::kJ1FirstZero)) <= 1e-9);
  CHECK(std::abs(bessel_j1(oracle::kJ1MaximumLocation) - oracle::kJ1MaximumValue) <= 1e-9);
}

TEST_CASE("bessel functions track the series oracle on [0, 12]") {
  for (int i = 0; i <= 240; ++i) {
    const double z = 12.0 * i / 240.0;
    CHECK(std::abs(bessel_j0(z) - static_cast<double>(oracle::j0_series(z))) <= 1e-10);
    CHECK(std::abs(bessel_j1(z) - static_cast<double>(oracle::j1_series(z))) <= 1e-10);
  }
}

TEST_CASE("bessel functions track the standard library on (12, 100]") {
  for (int i = 0; i <= 200; ++i) {
    const double z = 12.0 + (100.0 - 12.0) * i / 200.0;
    CHECK(std::abs(bessel_j0(z) - std::cyl_bessel_j(0.0, z)) <= 1e-10);
    CHECK(std::abs(bessel_j1(z) - std::cyl_bessel_j(1.0, z)) <= 1e-10);
  }
}

TEST_CASE("bessel parity: J0 even, J1 odd") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(0.0, 40.0);
  for (int i = 0; i < 100; ++i) {
    const double z = dist(rng);
    CHECK(std::abs(bessel_j0(-z) - bessel_j0(z)) <= 1e-12);
    CHECK(std::abs(bessel_j1(-z) + bessel_j1(z)) <= 1e-12);
  }
}

TEST_CASE("bessel global bounds") {
  for (int i = 0; i <= 1000; ++i) {
    const double z = 100.0 * i / 1000.0;
    CHECK(std::abs(bessel_j0(z)) <= 1.0 + 1e-12);
    CHECK(std::abs(bessel_j1(z)) <= 0.59);
  }
}

TEST_CASE("antiderivative identity: d/dz [z^2/2 (J0^2 + J1^2)] = z J0(z)^2") {
  const auto antiderivative = [](double z) {
    const double j0 = bessel_j0(z);
    const double j1 = bessel_j1(z);
    return z * z / 2.0 * (j0 * j0 + j1 * j1);
  };
  const double h = 1e-4;
  for (const double z : {0.3, 0.9, 1.7, 2.4048, 3.8317, 5.5, 8.0, 11.0, 14.5, 20.0}) {
    const double derivative = (antiderivative(z + h) - antiderivative(z - h)) / (2.0 * h);
    const double j0 = bessel_j0(z);
    CHECK(std::abs(derivative - z * j0 * j0) <= 1e-6);
  }
}

TEST_CASE("circle_sum at the origin is one") {
  const DirectionSet dirs = make_directions(6);
  const Complex v = circle_sum(Vec2(0.0, 0.0), 9.7, dirs);
  CHECK(std::abs(v - Complex(1.0, 0.0)) <= 1e-15);
}

TEST_CASE("circle_sum reaches the first J0 zero for large N") {
  const DirectionSet dirs = make_directions(64);
  const double omega = 10.0;
  const Vec2 y(oracle::kJ0FirstZero / omega, 0.0);
  CHECK(std::abs(circle_sum(y, omega, dirs)) <= 1e-8);
}

TEST_CASE("circle_sum with N=4 misses J0 badly at omega|y| = 5") {
  const DirectionSet dirs = make_directions(4);
  const double omega = 10.0;
  const Vec2 y(0.5, 0.0);
  const Complex v = circle_sum(y, omega, dirs);
  // brute force: (cos 5 + 1)/2
  CHECK(std::abs(v - Complex((std::cos(5.0) + 1.0) / 2.0, 0.0)) <= 1e-14);
  CHECK(std::abs(v - Complex(oracle::kJ0AtFive, 0.0)) > 0.05);
}

TEST_CASE("circle_sum converges to J0 once N >= 2 ceil(omega |y|) + 16") {
  for (const double product : {1.0, 3.3, 7.9, 12.6}) {
    const double omega = 10.471975511965978;
    const double r = product / omega;
    const int n = 2 * static_cast<int>(std::ceil(product)) + 16;
    const DirectionSet dirs = make_directions(n);
    const Complex v = circle_sum(Vec2(r, 0.0), omega, dirs);
    CHECK(std::abs(v - Complex(bessel_j0(product), 0.0)) <= 1e-8);
  }
}

TEST_CASE("circle_sum is invariant under joint rotation") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> angleDist(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> radiusDist(0.0, 1.5);
  const int n = 16;
  const DirectionSet dirs = make_directions(n);
  for (int trial = 0; trial < 30; ++trial) {
    const double rot = angleDist(rng);
    const double c = std::cos(rot);
    const double s = std::sin(rot);
    Eigen::Matrix2d rotation;
    rotation << c, -s, s, c;
    Eigen::Matrix2Xd rotatedDirs = rotation * dirs.matrix();
    const DirectionSet rotated(std::move(rotatedDirs));
    const Vec2 y(radiusDist(rng) * std::cos(angleDist(rng)),
                 radiusDist(rng) * std::sin(angleDist(rng)));
    const double omega = 8.0 + 6.0 * radiusDist(rng);
    const Complex a = circle_sum(y, omega, dirs);
    const Complex b = circle_sum((rotation * y).eval(), omega, rotated);
    CHECK(std::abs(a - b) <= 1e-12);
  }
}

TEST_CASE("quadrature oracle: r = 0 reduces to the integral of omega") {
  const double w1 = oracle::kOmegaLow;
  const double wK = oracle::kOmegaHigh;
  const double expected = (wK * wK - w1 * w1) / 2.0;
  CHECK(quadrature_oracle_psf(0.0, w1, wK, 8) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("quadrature oracle: empty band is zero, odd panels rejected") {
  CHECK(quadrature_oracle_psf(1.0, 5.0, 5.0, 64) == 0.0);
  CHECK_THROWS_AS(quadrature_oracle_psf(1.0, 5.0, 6.0, 63), std::invalid_argument);
  CHECK_THROWS_AS(quadrature_oracle_psf(1.0, 6.0, 5.0, 64), std::invalid_argument);
  CHECK_THROWS_AS(quadrature_oracle_psf(-1.0, 5.0, 6.0, 64), std::invalid_argument);
}

TEST_CASE("quadrature oracle converges at fourth order under panel doubling") {
  const double w1 = oracle::kOmegaLow;
  const double wK = oracle::kOmegaHigh;
  const double r = 2.5;
  const double reference = quadrature_oracle_psf(r, w1, wK, 1 << 14);
  const double coarse = std::abs(quadrature_oracle_psf(r, w1, wK, 64) - reference);
  const double fine = std::abs(quadrature_oracle_psf(r, w1, wK, 128) - reference);
  REQUIRE(coarse > 1e-13);
  CHECK(fine <= coarse / 8.0);
}
