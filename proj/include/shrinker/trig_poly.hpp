#pragma once

#include <vector>

namespace shrinker {

enum class Harmonic { Cos, Sin };

/// Finite Fourier series a_0 + sum_{j=1..n} (a_j cos jt + b_j sin jt).
///
/// Besides the coefficients, every polynomial remembers the magnitude of the
/// data it was produced from (`scale`). `is_zero` measures coefficients
/// against that magnitude, so a residual assembled from large terms that
/// cancel is judged relative to the terms, not to 1.
class TrigPoly {
 public:
  TrigPoly() : TrigPoly(0) {}
  explicit TrigPoly(int order);
  /// a holds a_0..a_n, b holds b_1..b_n (so b.size() == a.size() - 1).
  TrigPoly(std::vector<double> a, std::vector<double> b);
  TrigPoly(std::vector<double> a, std::vector<double> b, double scale);

  static TrigPoly constant(double c);
  static TrigPoly cos_term(int j, double amplitude = 1.0);
  static TrigPoly sin_term(int j, double amplitude = 1.0);

  int order() const { return static_cast<int>(a_.size()) - 1; }
  double a(int j) const;
  double b(int j) const;
  double scale() const { return scale_; }

  double operator()(double t) const;

  double max_abs_coeff() const;
  /// Largest |a_j|, |b_j| over j > order_cut.
  double max_abs_coeff_above(int order_cut) const;

  TrigPoly& operator+=(const TrigPoly& o);
  TrigPoly& operator-=(const TrigPoly& o);
  TrigPoly& operator*=(double c);

 private:
  void widen(int order);

  std::vector<double> a_;
  std::vector<double> b_;  // b_[0] unused, kept at zero
  double scale_ = 1.0;
};

TrigPoly operator+(TrigPoly p, const TrigPoly& q);
TrigPoly operator-(TrigPoly p, const TrigPoly& q);
TrigPoly operator*(TrigPoly p, double c);
TrigPoly operator*(double c, TrigPoly p);

/// Exact product via product-to-sum identities; order p.order() + q.order().
TrigPoly trig_mul(const TrigPoly& p, const TrigPoly& q);
TrigPoly operator*(const TrigPoly& p, const TrigPoly& q);

/// Coefficient a_j (Cos) or b_j (Sin). Throws ArgumentError when j is out of
/// range or a sine coefficient of index 0 is requested.
double coeff(const TrigPoly& p, int j, Harmonic kind);

/// True iff every coefficient is at most tol * p.scale() in magnitude.
bool is_zero(const TrigPoly& p, double tol);

}  // namespace shrinker
