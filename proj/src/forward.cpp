#include "crackimg/forward.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace crackimg {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string_view to_string(Convention convention) {
  return convention == Convention::Paper ? "paper" : "symmetric";
}

Convention convention_from_string(std::string_view name) {
  if (name == "paper") return Convention::Paper;
  if (name == "symmetric") return Convention::Symmetric;
  throw std::invalid_argument("unknown MSR convention: expected \"paper\" or \"symmetric\"");
}

MSRMatrix assemble_msr(const ScattererCloud& cloud, double omega,
                       const DirectionSet& dirs, Convention convention) {
  if (cloud.points.cols() == 0) {
    throw std::invalid_argument("scatterer cloud must be nonempty");
  }
  if (!(cloud.rho > 0.0 && cloud.rho < 2.0)) {
    throw std::invalid_argument("crack half-length must satisfy 0 < rho < 2");
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("frequency must be positive and finite");
  }
  const Eigen::Index n = dirs.size();
  const double c = -2.0 * std::numbers::pi / (static_cast<double>(n) * std::log(cloud.rho / 2.0));

  // D(s, l) = exp(i omega theta_s . z_l); the matrix is a sum of rank-one
  // steering outer products over the cloud.
  const RMatrix phases = omega * (dirs.matrix().transpose() * cloud.points);
  CMatrix d(n, cloud.points.cols());
  d.real() = phases.array().cos();
  d.imag() = phases.array().sin();

  MSRMatrix m;
  m.omega = omega;
  m.convention = convention;
  if (convention == Convention::Symmetric) {
    m.entries = c * (d * d.transpose());
  } else {
    m.entries = c * (d.conjugate() * d.transpose());
  }
  return m;
}

MSRMatrix add_noise(const MSRMatrix& m, const NoiseSpec& spec) {
  if (std::isinf(spec.snrDb)) {
    if (spec.snrDb < 0.0) {
      throw std::invalid_argument("SNR must be finite or +infinity");
    }
    return m;
  }
  if (!std::isfinite(spec.snrDb)) {
    throw std::invalid_argument("SNR must be finite or +infinity");
  }

  const Eigen::Index rows = m.entries.rows();
  const Eigen::Index cols = m.entries.cols();
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix noise(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      noise(r, c) = Complex(re, im);
    }
  }
  // Exact rescaling: |noise|_F = |M|_F 10^(-snr/20).
  const double target = m.entries.norm() * std::pow(10.0, -spec.snrDb / 20.0);
  const double drawn = noise.norm();
  const double scale = drawn > 0.0 ? target / drawn : 0.0;

  MSRMatrix out;
  out.omega = m.omega;
  out.convention = m.convention;
  out.entries = m.entries + scale * noise;
  return out;
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t frequencyIndex) {
  return splitmix64(splitmix64(seed) ^ splitmix64(frequencyIndex + 1));
}

}  // namespace crackimg
