#include "shrinker/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "shrinker/errors.hpp"

namespace shrinker {
namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TrigPoly::TrigPoly(int order) {
  if (order < 0) throw ArgumentError("TrigPoly: negative order");
  a_.assign(order + 1, 0.0);
  b_.assign(order + 1, 0.0);
}

TrigPoly::TrigPoly(std::vector<double> a, std::vector<double> b)
    : TrigPoly(std::move(a), std::move(b), 0.0) {}

TrigPoly::TrigPoly(std::vector<double> a, std::vector<double> b, double scale) {
  if (a.empty()) throw ArgumentError("TrigPoly: need at least a_0");
  if (b.size() + 1 != a.size())
    throw ArgumentError("TrigPoly: expected b_1..b_n matching a_0..a_n");
  a_ = std::move(a);
  b_.reserve(a_.size());
  b_.push_back(0.0);
  b_.insert(b_.end(), b.begin(), b.end());
  scale_ = std::max({1.0, scale, max_abs(a_), max_abs(b_)});
}

TrigPoly TrigPoly::constant(double c) { return TrigPoly({c}, {}); }

TrigPoly TrigPoly::cos_term(int j, double amplitude) {
  TrigPoly p(j);
  p.a_[j] = amplitude;
  p.scale_ = std::max(1.0, std::abs(amplitude));
  return p;
}

TrigPoly TrigPoly::sin_term(int j, double amplitude) {
  if (j < 1) throw ArgumentError("TrigPoly: sine term needs j >= 1");
  TrigPoly p(j);
  p.b_[j] = amplitude;
  p.scale_ = std::max(1.0, std::abs(amplitude));
  return p;
}

double TrigPoly::a(int j) const {
  if (j < 0 || j > order())
    throw ArgumentError("coeff: index " + std::to_string(j) + " outside 0.." +
                        std::to_string(order()));
  return a_[j];
}

double TrigPoly::b(int j) const {
  if (j < 1 || j > order())
    throw ArgumentError("coeff: sine index " + std::to_string(j) + " outside 1.." +
                        std::to_string(order()));
  return b_[j];
}

double TrigPoly::operator()(double t) const {
  double sum = a_[0];
  for (int j = 1; j <= order(); ++j)
    sum += a_[j] * std::cos(j * t) + b_[j] * std::sin(j * t);
  return sum;
}

double TrigPoly::max_abs_coeff() const { return std::max(max_abs(a_), max_abs(b_)); }

double TrigPoly::max_abs_coeff_above(int order_cut) const {
  double m = 0.0;
  for (int j = std::max(0, order_cut + 1); j <= order(); ++j)
    m = std::max({m, std::abs(a_[j]), std::abs(b_[j])});
  return m;
}

void TrigPoly::widen(int order) {
  if (order <= this->order()) return;
  a_.resize(order + 1, 0.0);
  b_.resize(order + 1, 0.0);
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
  widen(o.order());
  for (int j = 0; j <= o.order(); ++j) {
    a_[j] += o.a_[j];
    b_[j] += o.b_[j];
  }
  scale_ = std::max(scale_, o.scale_);
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o) {
  widen(o.order());
  for (int j = 0; j <= o.order(); ++j) {
    a_[j] -= o.a_[j];
    b_[j] -= o.b_[j];
  }
  scale_ = std::max(scale_, o.scale_);
  return *this;
}

TrigPoly& TrigPoly::operator*=(double c) {
  for (auto& x : a_) x *= c;
  for (auto& x : b_) x *= c;
  scale_ = std::max(1.0, std::abs(c) * scale_);
  return *this;
}

TrigPoly operator+(TrigPoly p, const TrigPoly& q) { return p += q; }
TrigPoly operator-(TrigPoly p, const TrigPoly& q) { return p -= q; }
TrigPoly operator*(TrigPoly p, double c) { return p *= c; }
TrigPoly operator*(double c, TrigPoly p) { return p *= c; }

TrigPoly trig_mul(const TrigPoly& p, const TrigPoly& q) {
  // Work with the exponential form f = sum_{m=-n..n} c_m e^{imt}, where
  // c_0 = a_0 and c_{+-j} = (a_j -+ i b_j) / 2; the product is a convolution.
  using cplx = std::complex<double>;
  auto to_exp = [](const TrigPoly& f) {
    const int n = f.order();
    std::vector<cplx> c(2 * n + 1);
    c[n] = f.a(0);
    for (int j = 1; j <= n; ++j) {
      c[n + j] = cplx(f.a(j), -f.b(j)) * 0.5;
      c[n - j] = std::conj(c[n + j]);
    }
    return c;
  };
  const int np = p.order();
  const int nq = q.order();
  const int n = np + nq;
  const auto cp = to_exp(p);
  const auto cq = to_exp(q);
  std::vector<cplx> c(2 * n + 1);
  for (int i = -np; i <= np; ++i)
    for (int j = -nq; j <= nq; ++j) c[n + i + j] += cp[np + i] * cq[nq + j];

  std::vector<double> a(n + 1), b(n);
  a[0] = c[n].real();
  for (int j = 1; j <= n; ++j) {
    // c_j + c_{-j} = a_j, i (c_j - c_{-j}) = b_j
    a[j] = (c[n + j] + c[n - j]).real();
    b[j - 1] = (cplx(0.0, 1.0) * (c[n + j] - c[n - j])).real();
  }
  return TrigPoly(std::move(a), std::move(b), p.scale() * q.scale());
}

TrigPoly operator*(const TrigPoly& p, const TrigPoly& q) { return trig_mul(p, q); }

double coeff(const TrigPoly& p, int j, Harmonic kind) {
  return kind == Harmonic::Cos ? p.a(j) : p.b(j);
}

bool is_zero(const TrigPoly& p, double tol) {
  if (tol < 0.0) throw ArgumentError("is_zero: negative tolerance");
  return p.max_abs_coeff() <= tol * p.scale();
}

}  // namespace shrinker
