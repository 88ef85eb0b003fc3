#include "shrinker/dual2.hpp"

#include <cmath>

#include "shrinker/errors.hpp"

namespace shrinker {

Dual2& Dual2::operator+=(const Dual2& o) {
  value += o.value;
  d_s += o.d_s;
  d_t += o.d_t;
  d_ss += o.d_ss;
  d_st += o.d_st;
  d_tt += o.d_tt;
  return *this;
}

Dual2& Dual2::operator-=(const Dual2& o) {
  value -= o.value;
  d_s -= o.d_s;
  d_t -= o.d_t;
  d_ss -= o.d_ss;
  d_st -= o.d_st;
  d_tt -= o.d_tt;
  return *this;
}

Dual2& Dual2::operator*=(const Dual2& o) {
  *this = *this * o;
  return *this;
}

Dual2& Dual2::operator/=(const Dual2& o) {
  *this = *this / o;
  return *this;
}

Dual2 operator-(const Dual2& a) {
  return {-a.value, -a.d_s, -a.d_t, -a.d_ss, -a.d_st, -a.d_tt};
}

Dual2 operator+(Dual2 a, const Dual2& b) { return a += b; }
Dual2 operator-(Dual2 a, const Dual2& b) { return a -= b; }

Dual2 operator*(const Dual2& a, const Dual2& b) {
  return {a.value * b.value,
          a.d_s * b.value + a.value * b.d_s,
          a.d_t * b.value + a.value * b.d_t,
          a.d_ss * b.value + 2.0 * a.d_s * b.d_s + a.value * b.d_ss,
          a.d_st * b.value + a.d_s * b.d_t + a.d_t * b.d_s + a.value * b.d_st,
          a.d_tt * b.value + 2.0 * a.d_t * b.d_t + a.value * b.d_tt};
}

Dual2 operator/(const Dual2& a, const Dual2& b) {
  if (b.value == 0.0) throw DomainError("Dual2: division by zero");
  const double inv = 1.0 / b.value;
  return a * chain(b, inv, -inv * inv, 2.0 * inv * inv * inv);
}

Dual2 chain(const Dual2& x, double f, double f1, double f2) {
  return {f,
          f1 * x.d_s,
          f1 * x.d_t,
          f2 * x.d_s * x.d_s + f1 * x.d_ss,
          f2 * x.d_s * x.d_t + f1 * x.d_st,
          f2 * x.d_t * x.d_t + f1 * x.d_tt};
}

Dual2 sin(const Dual2& x) {
  const double s = std::sin(x.value);
  return chain(x, s, std::cos(x.value), -s);
}

Dual2 cos(const Dual2& x) {
  const double c = std::cos(x.value);
  return chain(x, c, -std::sin(x.value), -c);
}

Dual2 exp(const Dual2& x) {
  const double e = std::exp(x.value);
  return chain(x, e, e, e);
}

Dual2 log(const Dual2& x) {
  if (x.value <= 0.0) throw DomainError("Dual2: log of nonpositive value");
  const double inv = 1.0 / x.value;
  return chain(x, std::log(x.value), inv, -inv * inv);
}

Dual2 sqrt(const Dual2& x) {
  if (x.value < 0.0) throw DomainError("Dual2: sqrt of negative value");
  const double r = std::sqrt(x.value);
  if (r == 0.0) {
    if (x.d_s != 0.0 || x.d_t != 0.0 || x.d_ss != 0.0 || x.d_st != 0.0 || x.d_tt != 0.0)
      throw DomainError("Dual2: sqrt not differentiable at zero");
    return Dual2{0.0};
  }
  return chain(x, r, 0.5 / r, -0.25 / (r * x.value));
}

Dual2 pow(const Dual2& x, double p) {
  if (x.value < 0.0 && std::floor(p) != p)
    throw DomainError("Dual2: fractional power of negative value");
  if (x.value == 0.0 && p < 2.0 && p != 0.0 && p != 1.0)
    throw DomainError("Dual2: power not twice differentiable at zero");
  if (p == 0.0) return Dual2{1.0};
  if (p == 1.0) return x;
  return chain(x, std::pow(x.value, p), p * std::pow(x.value, p - 1.0),
               p * (p - 1.0) * std::pow(x.value, p - 2.0));
}

}  // namespace shrinker
