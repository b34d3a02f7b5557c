#pragma once

#include <variant>
#include <vector>

#include "crackimg/types.hpp"

namespace crackimg {

/// Degenerate crack: a single point scatterer at @p center.
struct PointCrack {
  Vec2 center;
};

/// Straight crack between two distinct endpoints.
struct SegmentCrack {
  Vec2 a;
  Vec2 b;
};

/// Circular-arc crack. Angles are in radians, measured from the positive
/// x axis about @p center; requires angleStart < angleEnd and radius > 0.
struct ArcCrack {
  Vec2 center;
  double radius;
  double angleStart;
  double angleEnd;
};

/// A perfectly conducting (sound-soft) crack with half-length rho.
///
/// All shape variants share the same half-length parameter, which enters the
/// forward model only through the log prefactor; it must satisfy 0 < rho < 2
/// so that ln(rho/2) stays negative.
class Crack {
 public:
  using Shape = std::variant<PointCrack, SegmentCrack, ArcCrack>;

  Crack(Shape shape, double halfLength);

  const Shape& shape() const noexcept { return shape_; }
  double halfLength() const noexcept { return halfLength_; }

  friend bool operator==(const Crack& lhs, const Crack& rhs);

 private:
  Shape shape_;
  double halfLength_;
};

/// N unit incidence directions equi-distributed on the unit circle.
///
/// N must be even so the set is closed under negation; this makes the two
/// MSR conventions in the forward module equivalent up to a row permutation.
class DirectionSet {
 public:
  /// Validates unit norms (1e-14) and equal angular spacing 2*pi/N (1e-14).
  explicit DirectionSet(Eigen::Matrix2Xd directions);

  Eigen::Index size() const noexcept { return dirs_.cols(); }
  Vec2 direction(Eigen::Index n) const { return dirs_.col(n); }
  const Eigen::Matrix2Xd& matrix() const noexcept { return dirs_; }

 private:
  Eigen::Matrix2Xd dirs_;
};

/// Builds the standard direction set theta_n = (cos, sin)(2*pi*(n-1)/N),
/// n = 1..N, i.e. theta_1 = (1, 0). Rejects odd N and N < 2.
DirectionSet make_directions(int n);

/// K strictly increasing, equi-spaced positive angular frequencies.
class FrequencyGrid {
 public:
  explicit FrequencyGrid(RVector omegas);

  Eigen::Index size() const noexcept { return omegas_.size(); }
  double omega(Eigen::Index k) const { return omegas_[k]; }
  const RVector& omegas() const noexcept { return omegas_; }

 private:
  RVector omegas_;
};

/// Builds K frequencies equi-spaced in omega between 2*pi/lambdaMax and
/// 2*pi/lambdaMin. K = 1 returns the low frequency 2*pi/lambdaMax alone.
FrequencyGrid make_frequencies(double lambdaMin, double lambdaMax, int k);

/// Point-scatterer discretization of a crack collection. Column p of
/// `points` is a scatterer position; `source[p]` is the index of the crack
/// it was sampled from. All cracks must share the common half-length `rho`.
struct ScattererCloud {
  Eigen::Matrix2Xd points;
  double rho = 0.0;
  std::vector<Eigen::Index> source;
};

/// Samples every crack with arc-length spacing <= maxSpacing, endpoints
/// included; point cracks contribute their center. The output ordering
/// follows the crack list and each crack's own parameterization.
ScattererCloud discretize(const std::vector<Crack>& cracks, double maxSpacing);

/// Rectangular search grid; sample (i, j) sits at origin + (i*h, j*h).
class ImagingGrid {
 public:
  ImagingGrid(const Vec2& origin, double spacing, int nx, int ny);

  Vec2 point(int i, int j) const { return origin_ + spacing_ * Vec2(i, j); }
  const Vec2& origin() const noexcept { return origin_; }
  double spacing() const noexcept { return spacing_; }
  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }

  friend bool operator==(const ImagingGrid& lhs, const ImagingGrid& rhs);

 private:
  Vec2 origin_;
  double spacing_;
  int nx_;
  int ny_;
};

}  // namespace crackimg
