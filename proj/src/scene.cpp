#include "crackimg/scene.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace crackimg {
namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(const Vec2& p, const char* what) {
  if (!p.allFinite()) {
    throw std::invalid_argument(std::string(what) + " must have finite components");
  }
}

}  // namespace

Crack::Crack(Shape shape, double halfLength)
    : shape_(std::move(shape)), halfLength_(halfLength) {
  if (!(halfLength > 0.0 && halfLength < 2.0)) {
    throw std::invalid_argument("crack half-length must satisfy 0 < rho < 2");
  }
  std::visit(
      [](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, PointCrack>) {
          require_finite(s.center, "point crack center");
        } else if constexpr (std::is_same_v<S, SegmentCrack>) {
          require_finite(s.a, "segment endpoint");
          require_finite(s.b, "segment endpoint");
          if (s.a == s.b) {
            throw std::invalid_argument("segment crack endpoints must be distinct");
          }
        } else {
          require_finite(s.center, "arc center");
          if (!(s.radius > 0.0)) {
            throw std::invalid_argument("arc crack radius must be positive");
          }
          if (!std::isfinite(s.angleStart) || !std::isfinite(s.angleEnd) ||
              !(s.angleStart < s.angleEnd)) {
            throw std::invalid_argument("arc crack requires angleStart < angleEnd");
          }
        }
      },
      shape_);
}

bool operator==(const Crack& lhs, const Crack& rhs) {
  if (lhs.halfLength_ != rhs.halfLength_) return false;
  if (lhs.shape_.index() != rhs.shape_.index()) return false;
  return std::visit(
      [&rhs](const auto& a) {
        using S = std::decay_t<decltype(a)>;
        const auto& b = std::get<S>(rhs.shape_);
        if constexpr (std::is_same_v<S, PointCrack>) {
          return a.center == b.center;
        } else if constexpr (std::is_same_v<S, SegmentCrack>) {
          return a.a == b.a && a.b == b.b;
        } else {
          return a.center == b.center && a.radius == b.radius &&
                 a.angleStart == b.angleStart && a.angleEnd == b.angleEnd;
        }
      },
      lhs.shape_);
}

DirectionSet::DirectionSet(Eigen::Matrix2Xd directions) : dirs_(std::move(directions)) {
  const Eigen::Index n = dirs_.cols();
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument(
        "direction count must be even and at least 2 (the set must be closed under negation)");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(dirs_.col(i).norm() - 1.0) > 1e-14) {
      throw std::invalid_argument("directions must be unit vectors");
    }
  }
  // Equi-distribution: every cyclically consecutive pair subtends 2*pi/N.
  const double spacing = 2.0 * kPi / static_cast<double>(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index j = (i + 1) % n;
    const double ai = std::atan2(dirs_(1, i), dirs_(0, i));
    const double aj = std::atan2(dirs_(1, j), dirs_(0, j));
    if (std::abs(std::remainder(aj - ai - spacing, 2.0 * kPi)) > 1e-14) {
      throw std::invalid_argument("directions must be equi-distributed on the unit circle");
    }
  }
}

DirectionSet make_directions(int n) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument(
        "direction count must be even and at least 2 (the set must be closed under negation)");
  }
  Eigen::Matrix2Xd dirs(2, n);
  for (int i = 0; i < n; ++i) {
    const double angle = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    dirs.col(i) = Vec2(std::cos(angle), std::sin(angle));
  }
  return DirectionSet(std::move(dirs));
}

FrequencyGrid::FrequencyGrid(RVector omegas) : omegas_(std::move(omegas)) {
  const Eigen::Index k = omegas_.size();
  if (k < 1) {
    throw std::invalid_argument("frequency grid must contain at least one frequency");
  }
  if (!(omegas_.minCoeff() > 0.0) || !omegas_.allFinite()) {
    throw std::invalid_argument("frequencies must be positive and finite");
  }
  if (k == 1) return;
  const double step = (omegas_[k - 1] - omegas_[0]) / static_cast<double>(k - 1);
  for (Eigen::Index i = 0; i + 1 < k; ++i) {
    const double diff = omegas_[i + 1] - omegas_[i];
    if (!(diff > 0.0)) {
      throw std::invalid_argument("frequencies must be strictly increasing");
    }
    if (std::abs(diff - step) > 1e-14) {
      throw std::invalid_argument("frequencies must be equi-spaced");
    }
  }
}

FrequencyGrid make_frequencies(double lambdaMin, double lambdaMax, int k) {
  if (!(lambdaMin > 0.0) || !(lambdaMin < lambdaMax)) {
    throw std::invalid_argument(
        "wavelength interval must satisfy 0 < lambdaMin < lambdaMax");
  }
  if (k < 1) {
    throw std::invalid_argument("frequency count must be at least 1");
  }
  const double omega1 = 2.0 * kPi / lambdaMax;
  const double omegaK = 2.0 * kPi / lambdaMin;
  RVector omegas(k);
  if (k == 1) {
    omegas[0] = omega1;
  } else {
    for (int i = 0; i < k; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(k - 1);
      omegas[i] = (1.0 - t) * omega1 + t * omegaK;
    }
  }
  return FrequencyGrid(std::move(omegas));
}

ScattererCloud discretize(const std::vector<Crack>& cracks, double maxSpacing) {
  if (!(maxSpacing > 0.0)) {
    throw std::invalid_argument("discretization spacing must be positive");
  }
  if (cracks.empty()) {
    throw std::invalid_argument("at least one crack is required");
  }
  const double rho = cracks.front().halfLength();
  for (const Crack& c : cracks) {
    if (c.halfLength() != rho) {
      throw std::invalid_argument("all cracks must share a common half-length rho");
    }
  }

  std::vector<Vec2> points;
  std::vector<Eigen::Index> source;
  for (Eigen::Index ci = 0; ci < static_cast<Eigen::Index>(cracks.size()); ++ci) {
    std::visit(
        [&](const auto& s) {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, PointCrack>) {
            points.push_back(s.center);
            source.push_back(ci);
          } else if constexpr (std::is_same_v<S, SegmentCrack>) {
            const double length = (s.b - s.a).norm();
            const int segments = std::max(1, static_cast<int>(std::ceil(length / maxSpacing)));
            for (int j = 0; j <= segments; ++j) {
              const double t = static_cast<double>(j) / static_cast<double>(segments);
              points.push_back(s.a + t * (s.b - s.a));
              source.push_back(ci);
            }
          } else {
            const double length = s.radius * (s.angleEnd - s.angleStart);
            const int segments = std::max(1, static_cast<int>(std::ceil(length / maxSpacing)));
            for (int j = 0; j <= segments; ++j) {
              const double t = static_cast<double>(j) / static_cast<double>(segments);
              const double angle = (1.0 - t) * s.angleStart + t * s.angleEnd;
              points.push_back(s.center + s.radius * Vec2(std::cos(angle), std::sin(angle)));
              source.push_back(ci);
            }
          }
        },
        cracks[ci].shape());
  }

  ScattererCloud cloud;
  cloud.points.resize(2, static_cast<Eigen::Index>(points.size()));
  for (Eigen::Index p = 0; p < cloud.points.cols(); ++p) {
    cloud.points.col(p) = points[static_cast<std::size_t>(p)];
  }
  cloud.rho = rho;
  cloud.source = std::move(source);
  return cloud;
}

ImagingGrid::ImagingGrid(const Vec2& origin, double spacing, int nx, int ny)
    : origin_(origin), spacing_(spacing), nx_(nx), ny_(ny) {
  require_finite(origin, "grid origin");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw std::invalid_argument("grid spacing must be positive");
  }
  if (nx < 1 || ny < 1) {
    throw std::invalid_argument("grid must have at least one sample per axis");
  }
}

bool operator==(const ImagingGrid& lhs, const ImagingGrid& rhs) {
  return lhs.origin_ == rhs.origin_ && lhs.spacing_ == rhs.spacing_ &&
         lhs.nx_ == rhs.nx_ && lhs.ny_ == rhs.ny_;
}

}  // namespace crackimg
