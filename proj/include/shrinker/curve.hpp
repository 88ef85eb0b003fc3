#pragma once

#include <Eigen/Core>
#include <boost/math/interpolators/cardinal_quintic_b_spline.hpp>
#include <optional>
#include <cstddef>
#include <vector>

namespace shrinker {

using Vec2 = Eigen::Vector2d;

/// Planar (x, y) or profile (r, z) curve sampled along a parameter s,
/// normally arclength. For closed curves the last point is not repeated and
/// `length` includes the closing segment.
struct SampledCurve {
  std::vector<Vec2> points;
  std::vector<double> s;
  bool closed = false;
  bool arclength = true;
  double length = 0.0;

  std::size_t size() const { return points.size(); }

  /// s = cumulative chord length.
  static SampledCurve from_points(std::vector<Vec2> points, bool closed);

  /// Consecutive spacing within 2x of the median (closing gap included).
  /// Throws ArgumentError otherwise or when fewer than 4 points are given.
  void validate() const;
};

SampledCurve scaled(const SampledCurve& curve, double c);

/// Resamples to n points equally spaced in chord length using local cubic
/// Lagrange interpolation (periodic for closed curves).
SampledCurve resample_uniform(const SampledCurve& curve, std::size_t n);

/// True when the s spacing is uniform to relative 1e-9.
bool uniformly_spaced(const SampledCurve& curve);

/// Symmetric Hausdorff distance after resampling both curves to `samples`
/// points; distances are measured point-to-polyline.
double hausdorff_distance(const SampledCurve& a, const SampledCurve& b, std::size_t samples = 2048);

SampledCurve circle_curve(double radius, std::size_t n);
/// Axis-aligned square centred at the origin, points evenly spaced along the boundary.
SampledCurve square_curve(double side, std::size_t n);

/// Quintic B-spline through uniformly spaced samples. Periodic data is padded
/// with wrapped copies so the boundary treatment has no effect inside the period;
/// open data uses estimated end derivatives.
class UniformSpline {
 public:
  UniformSpline(const std::vector<double>& values, double s0, double step, bool periodic);

  double value(double s) const { return (*spline_)(wrap(s)); }
  double prime(double s) const { return spline_->prime(wrap(s)); }
  double double_prime(double s) const { return spline_->double_prime(wrap(s)); }

 private:
  double wrap(double s) const;

  std::optional<boost::math::interpolators::cardinal_quintic_b_spline<double>> spline_;
  double s0_;
  double period_;
  bool periodic_;
};

}  // namespace shrinker
