#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "crackimg/scene.hpp"

namespace crackimg {

namespace detail {

// Ascending power series, adequate up to |z| ~ 12 where the largest term is
// ~4e3 and the rounding noise it leaves behind is ~1e-12.
template <typename T>
T bessel_j0_series(T z) {
  const T q = z * z / T(4);
  T term(1);
  T sum(1);
  for (int k = 1; k < 256; ++k) {
    term *= -q / (T(k) * T(k));
    sum += term;
    if (std::abs(term) < T(1e-18)) break;
  }
  return sum;
}

template <typename T>
T bessel_j1_series(T z) {
  const T q = z * z / T(4);
  T term = z / T(2);
  T sum = term;
  for (int k = 1; k < 256; ++k) {
    term *= -q / (T(k) * T(k + 1));
    sum += term;
    if (std::abs(term) < T(1e-18)) break;
  }
  return sum;
}

// Hankel large-argument expansion, J_nu(z) = Re[H_nu^(1)(z)] for real z:
//   H_nu^(1)(z) ~ sqrt(2/(pi z)) e^{i chi} sum_m a_m(nu) (i/z)^m,
//   chi = z - nu pi/2 - pi/4,  a_m(nu) = prod_{j<=m} (4 nu^2 - (2j-1)^2) / (m! 8^m).
// The series is truncated at its smallest term; for z >= 12 that term is
// below 1e-11, well inside the module tolerance.
template <typename T>
T bessel_hankel(int nu, T z) {
  using C = std::complex<T>;
  const T fourNuSq = T(4 * nu * nu);
  const C iOverZ(T(0), T(1) / z);
  C term(1);
  C sum(1);
  T previous = std::numeric_limits<T>::max();
  for (int m = 1; m < 64; ++m) {
    term *= iOverZ * (fourNuSq - T((2 * m - 1) * (2 * m - 1))) / (T(8) * T(m));
    const T magnitude = std::abs(term);
    if (magnitude >= previous) break;
    sum += term;
    previous = magnitude;
    if (magnitude < T(1e-18)) break;
  }
  const T chi = z - T(nu) * std::numbers::pi_v<T> / T(2) - std::numbers::pi_v<T> / T(4);
  const C rotation(std::cos(chi), std::sin(chi));
  return std::sqrt(T(2) / (std::numbers::pi_v<T> * z)) * (rotation * sum).real();
}

}  // namespace detail

/// Bessel function of the first kind, order 0. Even in z; absolute error
/// below 1e-10 on |z| <= 100.
template <typename T>
T bessel_j0(T z) {
  z = std::abs(z);
  return z <= T(12) ? detail::bessel_j0_series(z) : detail::bessel_hankel(0, z);
}

/// Bessel function of the first kind, order 1. Odd in z; absolute error
/// below 1e-10 on |z| <= 100.
template <typename T>
T bessel_j1(T z) {
  const T sign = z < T(0) ? T(-1) : T(1);
  z = std::abs(z);
  return sign * (z <= T(12) ? detail::bessel_j1_series(z) : detail::bessel_hankel(1, z));
}

/// Average of plane-wave phases over the direction set,
///   (1/N) sum_s exp(i omega theta_s . y),
/// which converges to J0(omega |y|) as N grows; deviations are aliasing
/// terms of order J_N and are below 1e-8 once N >= 2 ceil(omega |y|) + 16.
template <typename Derived>
Complex circle_sum(const Eigen::MatrixBase<Derived>& y, double omega,
                   const DirectionSet& dirs) {
  const Eigen::VectorXd phases = omega * (dirs.matrix().transpose() * y);
  Complex acc(0.0, 0.0);
  for (Eigen::Index s = 0; s < phases.size(); ++s) {
    acc += Complex(std::cos(phases[s]), std::sin(phases[s]));
  }
  return acc / static_cast<double>(dirs.size());
}

/// Composite-Simpson evaluation of the band integral
///   int_{omega1}^{omegaK} omega J0(omega r)^2 domega
/// on an even number of panels. Converges as panels^-4; serves as the
/// independent reference for the closed-form point spread function.
double quadrature_oracle_psf(double r, double omega1, double omegaK, int panels);

}  // namespace crackimg
