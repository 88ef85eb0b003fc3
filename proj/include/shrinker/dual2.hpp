#pragma once

#include <array>
#include <functional>

namespace shrinker {

/// Second-order jet in two parameters (s, t).
///
/// Carries a value together with its first partials (d_s, d_t) and second
/// partials (d_ss, d_st, d_tt). Arithmetic propagates all six components
/// through the product and chain rules, so any composite expression built
/// from seeded parameters yields its exact partials (up to rounding).
struct Dual2 {
  double value = 0.0;
  double d_s = 0.0;
  double d_t = 0.0;
  double d_ss = 0.0;
  double d_st = 0.0;
  double d_tt = 0.0;

  constexpr Dual2() = default;
  constexpr Dual2(double v) : value(v) {}  // NOLINT: implicit lift of constants
  constexpr Dual2(double v, double s, double t, double ss, double st, double tt)
      : value(v), d_s(s), d_t(t), d_ss(ss), d_st(st), d_tt(tt) {}

  static constexpr Dual2 constant(double v) { return Dual2{v}; }
  static constexpr Dual2 seed_s(double v) { return {v, 1.0, 0.0, 0.0, 0.0, 0.0}; }
  static constexpr Dual2 seed_t(double v) { return {v, 0.0, 1.0, 0.0, 0.0, 0.0}; }

  Dual2& operator+=(const Dual2& o);
  Dual2& operator-=(const Dual2& o);
  Dual2& operator*=(const Dual2& o);
  Dual2& operator/=(const Dual2& o);
};

Dual2 operator-(const Dual2& a);
Dual2 operator+(Dual2 a, const Dual2& b);
Dual2 operator-(Dual2 a, const Dual2& b);
Dual2 operator*(const Dual2& a, const Dual2& b);
Dual2 operator/(const Dual2& a, const Dual2& b);

/// Applies a scalar function with known value f, slope f1 and curvature f2
/// at x.value to the jet x.
Dual2 chain(const Dual2& x, double f, double f1, double f2);

Dual2 sin(const Dual2& x);
Dual2 cos(const Dual2& x);
Dual2 exp(const Dual2& x);
Dual2 log(const Dual2& x);
Dual2 sqrt(const Dual2& x);
Dual2 pow(const Dual2& x, double p);

using DualVec3 = std::array<Dual2, 3>;

/// A surface patch X(s, t) written over jets.
using Patch = std::function<DualVec3(const Dual2& s, const Dual2& t)>;

}  // namespace shrinker
