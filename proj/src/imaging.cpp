#include "crackimg/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/SVD>

#include "crackimg/specfun.hpp"

namespace crackimg {

SVDResult svd(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("MSR matrix must be square");
  }
  Eigen::JacobiSVD<CMatrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("SVD failed to converge");
  }
  return SVDResult{solver.singularValues(), solver.matrixU(), solver.matrixV()};
}

SVDResult svd(const MSRMatrix& m) { return svd(m.entries); }

int select_rank(const SVDResult& s, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::invalid_argument("rank-selection threshold must satisfy 0 < tau < 1");
  }
  if (s.singularValues.size() == 0 || !(s.singularValues[0] > 0.0)) return 0;
  const double cut = tau * s.singularValues[0];
  int rank = 0;
  while (rank < s.singularValues.size() && s.singularValues[rank] >= cut) ++rank;
  return rank;
}

CVector steering(const Vec2& x, double omega, const DirectionSet& dirs) {
  const Eigen::VectorXd phases = omega * (dirs.matrix().transpose() * x);
  CVector w(phases.size());
  const double scale = 1.0 / std::sqrt(static_cast<double>(phases.size()));
  for (Eigen::Index n = 0; n < phases.size(); ++n) {
    w[n] = scale * Complex(std::cos(phases[n]), std::sin(phases[n]));
  }
  return w;
}

Complex imaging_value(const Vec2& x, std::span<const FrequencyComponent> components,
                      const DirectionSet& dirs) {
  Complex total(0.0, 0.0);
  for (const FrequencyComponent& component : components) {
    if (component.rank < 0 || component.rank > component.svd.leftVectors.cols()) {
      throw std::invalid_argument("selected rank exceeds the direction count");
    }
    if (component.rank == 0) continue;
    const CVector w = steering(x, component.omega, dirs);
    Complex acc(0.0, 0.0);
    for (int l = 0; l < component.rank; ++l) {
      const Complex left = w.dot(component.svd.leftVectors.col(l));
      const Complex right = w.dot(component.svd.rightVectors.col(l).conjugate());
      acc += left * right;
    }
    total += component.omega * acc;
  }
  return total;
}

ImagingMap evaluate_map(const ImagingGrid& grid, const std::vector<MSRMatrix>& matrices,
                        const DirectionSet& dirs, double tau) {
  if (matrices.empty()) {
    throw std::invalid_argument("at least one MSR matrix is required");
  }
  for (const MSRMatrix& m : matrices) {
    if (m.entries.rows() != dirs.size() || m.entries.cols() != dirs.size()) {
      throw std::invalid_argument("MSR matrices must match the direction count");
    }
    if (m.convention != matrices.front().convention) {
      throw std::invalid_argument("MSR matrices must share one convention");
    }
  }

  std::vector<FrequencyComponent> components;
  components.reserve(matrices.size());
  for (const MSRMatrix& m : matrices) {
    FrequencyComponent component;
    component.omega = m.omega;
    component.svd = svd(m);
    component.rank = select_rank(component.svd, tau);
    components.push_back(std::move(component));
  }

  ImagingMap map{grid, CMatrix(grid.ny(), grid.nx()), RMatrix(grid.ny(), grid.nx()), {}};
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      const Complex value = imaging_value(grid.point(i, j), components, dirs);
      map.values(j, i) = value;
      map.magnitude(j, i) = std::abs(value);
    }
  }

  map.meta.directionCount = static_cast<int>(dirs.size());
  map.meta.frequencyCount = static_cast<int>(matrices.size());
  map.meta.omegas.resize(static_cast<Eigen::Index>(matrices.size()));
  for (Eigen::Index k = 0; k < map.meta.omegas.size(); ++k) {
    map.meta.omegas[k] = matrices[static_cast<std::size_t>(k)].omega;
  }
  map.meta.ranks.reserve(components.size());
  for (const FrequencyComponent& component : components) {
    map.meta.ranks.push_back(component.rank);
  }
  return map;
}

double psf_closed_form(double r, double omega1, double omegaK) {
  if (!(r >= 0.0)) {
    throw std::invalid_argument("radius must be nonnegative");
  }
  if (!(omega1 > 0.0) || !(omega1 <= omegaK)) {
    throw std::invalid_argument("band must satisfy 0 < omega1 <= omegaK");
  }
  const auto endpoint = [r](double omega) {
    const double j0 = bessel_j0(omega * r);
    const double j1 = bessel_j1(omega * r);
    return omega * omega / 2.0 * (j0 * j0 + j1 * j1);
  };
  constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;
  return (endpoint(omegaK) - endpoint(omega1)) / kFourPiSq;
}

std::vector<GridPeak> find_peaks(const ImagingMap& map) {
  const int nx = map.grid.nx();
  const int ny = map.grid.ny();
  const auto linear = [nx](int i, int j) { return j * nx + i; };

  std::vector<GridPeak> peaks;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double center = map.magnitude(j, i);
      bool isPeak = true;
      for (int dj = -1; dj <= 1 && isPeak; ++dj) {
        for (int di = -1; di <= 1 && isPeak; ++di) {
          if (di == 0 && dj == 0) continue;
          const int ni = i + di;
          const int nj = j + dj;
          if (ni < 0 || ni >= nx || nj < 0 || nj >= ny) continue;
          const double neighbor = map.magnitude(nj, ni);
          if (neighbor > center ||
              (neighbor == center && linear(ni, nj) < linear(i, j))) {
            isPeak = false;
          }
        }
      }
      if (isPeak) peaks.push_back(GridPeak{i, j, center});
    }
  }
  std::sort(peaks.begin(), peaks.end(), [&](const GridPeak& a, const GridPeak& b) {
    if (a.magnitude != b.magnitude) return a.magnitude > b.magnitude;
    return linear(a.i, a.j) < linear(b.i, b.j);
  });
  return peaks;
}

}  // namespace crackimg
