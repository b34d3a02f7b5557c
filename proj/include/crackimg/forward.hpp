#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

#include "crackimg/scene.hpp"

namespace crackimg {

/// Phase convention for the MSR entries.
///
/// `Paper` puts exp(i omega (theta_n - theta_m) . z) at entry (m, n), which
/// makes the noiseless matrix Hermitian. `Symmetric` uses theta_n + theta_m,
/// giving a complex-symmetric matrix whose right singular vectors are the
/// conjugates of the left ones (Takagi structure); that is the form the
/// imaging functional relies on, so it is the default everywhere. For an
/// even direction set the two differ only by the row permutation
/// theta -> -theta and share their singular values.
enum class Convention { Paper, Symmetric };

std::string_view to_string(Convention convention);
Convention convention_from_string(std::string_view name);

/// Normalized multi-static response matrix at a single frequency.
struct MSRMatrix {
  CMatrix entries;
  double omega = 0.0;
  Convention convention = Convention::Symmetric;
};

/// Additive complex white Gaussian noise at a prescribed SNR (dB, Frobenius
/// convention). snrDb = +infinity disables the perturbation.
struct NoiseSpec {
  double snrDb = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
};

/// Assembles the N x N MSR matrix for a scatterer cloud:
///   entry(m, n) = c * sum_l exp(i omega (theta_n -/+ theta_m) . z_l),
/// with c = -2 pi / (N ln(rho/2)) > 0. Rejects clouds whose rho is outside
/// (0, 2), where the log prefactor changes sign.
MSRMatrix assemble_msr(const ScattererCloud& cloud, double omega,
                       const DirectionSet& dirs, Convention convention);

/// Adds i.i.d. complex Gaussian noise to every entry, rescaled after the
/// draw so that 10 log10(|M|_F^2 / |noise|_F^2) equals snrDb exactly.
/// Deterministic given the seed.
MSRMatrix add_noise(const MSRMatrix& m, const NoiseSpec& spec);

/// Mixes a base seed with a per-frequency index so each frequency owns an
/// independent, reproducible noise stream.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t frequencyIndex);

}  // namespace crackimg
