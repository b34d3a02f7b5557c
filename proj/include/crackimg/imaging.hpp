#pragma once

#include <span>
#include <vector>

#include "crackimg/forward.hpp"

namespace crackimg {

/// Full SVD with singular values in descending order; column l of the
/// vector matrices is the l-th singular pair.
struct SVDResult {
  RVector singularValues;
  CMatrix leftVectors;
  CMatrix rightVectors;
};

SVDResult svd(const CMatrix& m);
SVDResult svd(const MSRMatrix& m);

/// Largest L with sigma_L >= tau * sigma_1 (0 for a zero matrix). Requires
/// 0 < tau < 1; this is the signal-subspace cut for noisy spectra.
int select_rank(const SVDResult& s, double tau);

/// Unit-norm steering vector W(x; omega) = D(x; omega) / sqrt(N) with
/// D_n = exp(i omega theta_n . x).
CVector steering(const Vec2& x, double omega, const DirectionSet& dirs);

/// Per-frequency ingredients of the imaging functional.
struct FrequencyComponent {
  double omega = 0.0;
  SVDResult svd;
  int rank = 0;
};

/// Multi-frequency imaging functional
///   E(x; K) = sum_k sum_{l<rank_k} omega_k (conj(W).U_l) (conj(W).conj(V_l)).
/// Invariant under the common phase ambiguity (U_l, V_l) -> (e^{i p} U_l,
/// e^{i p} V_l) of the SVD.
Complex imaging_value(const Vec2& x, std::span<const FrequencyComponent> components,
                      const DirectionSet& dirs);

struct MapMetadata {
  int directionCount = 0;
  int frequencyCount = 0;
  RVector omegas;
  std::vector<int> ranks;
};

/// E sampled on a rectangular grid; values(j, i) and magnitude(j, i) belong
/// to grid.point(i, j), so the matrices are ny x nx.
struct ImagingMap {
  ImagingGrid grid;
  CMatrix values;
  RMatrix magnitude;
  MapMetadata meta;
};

/// Runs the SVD and rank selection once per frequency, then evaluates the
/// imaging functional at every grid point in a fixed order. All matrices
/// must share the direction count and convention.
ImagingMap evaluate_map(const ImagingGrid& grid, const std::vector<MSRMatrix>& matrices,
                        const DirectionSet& dirs, double tau);

/// Closed-form single-scatterer point spread function,
///   (1/4 pi^2) [ w^2/2 (J0(w r)^2 + J1(w r)^2) ]_{omega1}^{omegaK},
/// the antiderivative of the band integral of omega J0(omega r)^2.
double psf_closed_form(double r, double omega1, double omegaK);

/// A strict local maximum of the magnitude map over the 8-neighborhood;
/// plateau ties go to the smallest row-major linear index j*nx + i.
struct GridPeak {
  int i = 0;
  int j = 0;
  double magnitude = 0.0;
};

/// All local maxima, strongest first (magnitude ties by linear index).
std::vector<GridPeak> find_peaks(const ImagingMap& map);

}  // namespace crackimg
