#include "shrinker/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "shrinker/errors.hpp"

namespace shrinker {
namespace {

constexpr std::size_t kPad = 24;

double segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  double u = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  u = std::clamp(u, 0.0, 1.0);
  return (p - (a + u * ab)).norm();
}

/// Largest distance from a point of `from` to the polyline `to`.
double directed(const SampledCurve& from, const SampledCurve& to) {
  const std::size_t n = to.size();
  const std::size_t segments = to.closed ? n : n - 1;
  double worst = 0.0;
  for (const Vec2& p : from.points) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < segments; ++i)
      best = std::min(best, segment_distance(p, to.points[i], to.points[(i + 1) % n]));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

SampledCurve SampledCurve::from_points(std::vector<Vec2> points, bool closed) {
  SampledCurve c;
  c.points = std::move(points);
  c.closed = closed;
  c.arclength = true;
  c.s.resize(c.points.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    if (i > 0) acc += (c.points[i] - c.points[i - 1]).norm();
    c.s[i] = acc;
  }
  if (closed && !c.points.empty()) acc += (c.points.front() - c.points.back()).norm();
  c.length = acc;
  return c;
}

void SampledCurve::validate() const {
  if (points.size() < 4) throw ArgumentError("SampledCurve: need at least 4 points");
  if (s.size() != points.size()) throw ArgumentError("SampledCurve: s and points differ in size");
  std::vector<double> gaps;
  for (std::size_t i = 1; i < points.size(); ++i) gaps.push_back((points[i] - points[i - 1]).norm());
  if (closed) gaps.push_back((points.front() - points.back()).norm());
  std::vector<double> sorted = gaps;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];
  for (double g : gaps)
    if (g > 2.0 * median || g < 0.5 * median)
      throw ArgumentError("SampledCurve: spacing deviates more than 2x from the median");
}

SampledCurve scaled(const SampledCurve& curve, double c) {
  SampledCurve out = curve;
  for (auto& p : out.points) p *= c;
  for (auto& v : out.s) v *= c;
  out.length *= c;
  return out;
}

bool uniformly_spaced(const SampledCurve& curve) {
  if (curve.size() < 2) return false;
  const double h = curve.s[1] - curve.s[0];
  if (!(h > 0.0)) return false;
  for (std::size_t i = 1; i < curve.size(); ++i)
    if (std::abs(curve.s[i] - curve.s[i - 1] - h) > 1e-9 * h) return false;
  if (curve.closed && std::abs(curve.length - h * static_cast<double>(curve.size())) > 1e-9 * curve.length)
    return false;
  return true;
}

SampledCurve resample_uniform(const SampledCurve& curve, std::size_t n) {
  const std::size_t m = curve.size();
  if (m < 4) throw ArgumentError("resample_uniform: need at least 4 points");
  if (n < 4) throw ArgumentError("resample_uniform: need at least 4 output points");
  const SampledCurve chord = SampledCurve::from_points(curve.points, curve.closed);
  const double total = chord.length;

  // parameter and point at (possibly wrapped) index i
  auto u_at = [&](long i) {
    if (!curve.closed) return chord.s[static_cast<std::size_t>(i)];
    const long mm = static_cast<long>(m);
    const long wraps = (i >= 0) ? i / mm : -((-i + mm - 1) / mm);
    return chord.s[static_cast<std::size_t>(i - wraps * mm)] + static_cast<double>(wraps) * total;
  };
  auto p_at = [&](long i) -> const Vec2& {
    const long mm = static_cast<long>(m);
    return curve.points[static_cast<std::size_t>(((i % mm) + mm) % mm)];
  };

  std::vector<Vec2> out(n);
  const double step = curve.closed ? total / static_cast<double>(n) : total / static_cast<double>(n - 1);
  std::size_t seg = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double u = std::min(step * static_cast<double>(j), total);
    while (seg + 1 < (curve.closed ? m : m - 1) && u_at(static_cast<long>(seg) + 1) <= u) ++seg;
    long first = static_cast<long>(seg) - 1;
    if (!curve.closed) first = std::clamp(first, 0L, static_cast<long>(m) - 4);
    Vec2 value = Vec2::Zero();
    for (long a = first; a < first + 4; ++a) {
      double w = 1.0;
      for (long b = first; b < first + 4; ++b)
        if (b != a) w *= (u - u_at(b)) / (u_at(a) - u_at(b));
      value += w * p_at(a);
    }
    out[j] = value;
  }
  SampledCurve result = SampledCurve::from_points(std::move(out), curve.closed);
  return result;
}

double hausdorff_distance(const SampledCurve& a, const SampledCurve& b, std::size_t samples) {
  samples = std::max<std::size_t>(samples, 512);
  const SampledCurve ra = resample_uniform(a, samples);
  const SampledCurve rb = resample_uniform(b, samples);
  return std::max(directed(ra, rb), directed(rb, ra));
}

SampledCurve circle_curve(double radius, std::size_t n) {
  if (!(radius > 0.0)) throw ArgumentError("circle_curve: radius must be positive");
  std::vector<Vec2> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    pts[i] = radius * Vec2(std::cos(phi), std::sin(phi));
  }
  return SampledCurve::from_points(std::move(pts), true);
}

SampledCurve square_curve(double side, std::size_t n) {
  if (!(side > 0.0)) throw ArgumentError("square_curve: side must be positive");
  if (n % 4 != 0) throw ArgumentError("square_curve: point count must be a multiple of 4");
  const std::size_t per_side = n / 4;
  const double h = 0.5 * side;
  const Vec2 corners[4] = {{h, -h}, {h, h}, {-h, h}, {-h, -h}};
  std::vector<Vec2> pts;
  pts.reserve(n);
  for (int c = 0; c < 4; ++c) {
    const Vec2& from = corners[c];
    const Vec2& to = corners[(c + 1) % 4];
    for (std::size_t i = 0; i < per_side; ++i)
      pts.push_back(from + (to - from) * (static_cast<double>(i) / static_cast<double>(per_side)));
  }
  return SampledCurve::from_points(std::move(pts), true);
}

UniformSpline::UniformSpline(const std::vector<double>& values, double s0, double step, bool periodic)
    : s0_(s0), period_(step * static_cast<double>(values.size())), periodic_(periodic) {
  if (values.size() < 8) throw ArgumentError("UniformSpline: need at least 8 samples");
  if (!(step > 0.0)) throw ArgumentError("UniformSpline: step must be positive");
  if (!periodic) {
    spline_.emplace(values.data(), values.size(), s0, step);
    return;
  }
  const std::size_t n = values.size();
  std::vector<double> padded;
  padded.reserve(n + 2 * kPad);
  for (std::size_t i = 0; i < n + 2 * kPad; ++i) padded.push_back(values[(i + n * kPad - kPad) % n]);
  spline_.emplace(padded.data(), padded.size(), s0 - static_cast<double>(kPad) * step, step);
}

double UniformSpline::wrap(double s) const {
  if (!periodic_) return s;
  double u = std::fmod(s - s0_, period_);
  if (u < 0.0) u += period_;
  return s0_ + u;
}

}  // namespace shrinker
