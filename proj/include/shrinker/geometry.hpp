#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cstddef>
#include <utility>
#include <vector>

#include "shrinker/dual2.hpp"

namespace shrinker {

using Vec3 = Eigen::Vector3d;

/// Position and all first/second parameter derivatives of a patch at one point.
struct ImmersionJet2 {
  Vec3 X = Vec3::Zero();
  Vec3 Xs = Vec3::Zero();
  Vec3 Xt = Vec3::Zero();
  Vec3 Xss = Vec3::Zero();
  Vec3 Xst = Vec3::Zero();
  Vec3 Xtt = Vec3::Zero();

  /// Jet of the dilated surface c X (parameters unchanged).
  ImmersionJet2 scaled(double c) const;
  /// Jet of the same surface with the roles of s and t exchanged.
  ImmersionJet2 swapped() const;
};

/// First fundamental form, the cross-product weighted second form
/// (ebar = <X_ss, X_s x X_t>, ...), det(X, X_s, X_t) and W = EG - F^2.
struct FormData {
  double E = 0.0, F = 0.0, G = 0.0;
  double ebar = 0.0, fbar = 0.0, gbar = 0.0;
  double detX = 0.0;
  double W = 0.0;
  Vec3 N = Vec3::Zero();  ///< X_s x X_t / |X_s x X_t|

  double e() const;
  double f() const;
  double g() const;
};

/// Sign of lambda selects the flow: shrinker (> 0), expander (< 0), minimal (= 0).
struct ShrinkerParam {
  double lambda = 0.0;

  enum class Kind { Shrinker, Expander, Minimal };
  Kind kind() const {
    return lambda > 0.0 ? Kind::Shrinker : (lambda < 0.0 ? Kind::Expander : Kind::Minimal);
  }
};

ImmersionJet2 eval_jet2(const Patch& patch, double s, double t);

/// Throws DegenerateError when W <= 1e-12 scale^4, with scale the largest
/// coordinate of X_s, X_t.
FormData fundamental_data(const ImmersionJet2& jet);

struct CurvatureSupport {
  double H = 0.0;        ///< (ebar G + gbar E - 2 fbar F) / (2 W^{3/2})
  double support = 0.0;  ///< <X, N> = detX / sqrt(W)
};

CurvatureSupport mean_curvature_and_support(const FormData& fd);

/// ebar G + gbar E - 2 fbar F + 2 lambda W det(X, X_s, X_t).
/// Vanishes identically exactly on self-similar surfaces with parameter lambda.
double shrinker_residual(const ImmersionJet2& jet, double lambda);

/// Uniform parameter grid. Samples are cell centred, so an open interval
/// such as the polar angle (0, pi) of a sphere chart never hits its ends.
struct ParamGrid {
  double s0 = 0.0, s1 = 1.0;
  std::size_t ns = 16;
  double t0 = 0.0, t1 = 1.0;
  std::size_t nt = 16;

  std::vector<std::pair<double, double>> points() const;
};

double max_abs_residual(const Patch& patch, const ParamGrid& grid, double lambda);

struct LambdaFit {
  double lambda = 0.0;
  double spread = 0.0;   ///< max |lambda_i - lambda| over the points used
  std::size_t used = 0;  ///< grid points that passed the support threshold
};

/// Inverts the residual pointwise, lambda_i = -(ebar G + gbar E - 2 fbar F) / (2 W detX),
/// skipping points with |detX| < 1e-8 scale^3 or a degenerate metric.
/// Throws IndeterminateError when no point survives.
LambdaFit fit_lambda(const Patch& patch, const ParamGrid& grid);

}  // namespace shrinker
