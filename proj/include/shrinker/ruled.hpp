#pragma once

#include <span>
#include <string>
#include <vector>

#include "shrinker/geometry.hpp"

namespace shrinker::ruled {

/// Pointwise data of X(s, t) = gamma(s) t + p(s) with gamma an arclength curve
/// on the unit sphere, frame (e1, e2, e3) = (gamma, gamma', gamma x gamma'),
/// k = <gamma'', gamma x gamma'> and p = a e2 + b e3.
struct RuledJet {
  double k = 0.0, kp = 0.0;
  double a = 0.0, ap = 0.0, app = 0.0;
  double b = 0.0, bp = 0.0, bpp = 0.0;

  void validate() const;
};

/// c0 + c1 t + c2 t^2 + c3 t^3.
struct PolyInT {
  double c0 = 0.0, c1 = 0.0, c2 = 0.0, c3 = 0.0;
  double operator()(double t) const { return c0 + t * (c1 + t * (c2 + t * c3)); }
};

/// Coefficients of the self-shrinker residual ebar G + gbar E - 2 fbar F
/// + 2 lambda (EG - F^2) det(X, X_s, X_t) as a cubic in the ruling parameter t,
/// assembled from frame-coordinate determinants. With this frame one finds
/// F = -a, fbar = b' + k a, det = -b t + a b' - b a' + k (a^2 + b^2), so
/// c3 = -2 lambda b and, for b = 0, c2 = k (2 lambda a^2 - 1).
PolyInT ruled_residual_poly(const RuledJet& rj, double lambda);

/// Explicit ambient jet of X = gamma t + p at the jet's s, with the frame
/// placed at the standard basis there.
ImmersionJet2 ruled_immersion_jet(const RuledJet& rj, double t);

/// Cubic through the residual of the explicit jet at t = -1, 0, 1, 2.
PolyInT ruled_sampled_poly(const RuledJet& rj, double lambda);

/// Frame coordinates of p'' obtained by differentiating p' with the frame equations.
Vec3 p_second(const RuledJet& rj);

struct IdentityDefects {
  double det_pp_gp_g = 0.0;  ///< det(p'', gamma', gamma)
  double det_pp_p_g = 0.0;   ///< det(p'', p', gamma)
  double d1 = 0.0;           ///< det(p'', gamma', gamma) - a k'
  double d2 = 0.0;           ///< det(p'', p', gamma) + a^2 k (1 + k^2)
};

/// Requires b = b' = b'' = 0 and a' = a'' = 0 (ArgumentError otherwise).
/// The determinants come from the differentiated p''; a direct evaluation
/// gives det(p'', gamma', gamma) = -a k', so d1 = -2 a k'.
IdentityDefects ruled_identity_check(const RuledJet& rj);

enum class RuledVerdict { CylinderOverPlanarShrinker, Plane };

std::string to_string(RuledVerdict v);

struct Theorem2Step {
  std::string name;
  std::string deduction;
  bool consistent = true;  ///< the jets satisfy what this step deduces
  double worst = 0.0;      ///< largest |coefficient| of this order over the jets
};

struct Theorem2Result {
  RuledVerdict verdict = RuledVerdict::Plane;
  bool consistent = true;  ///< false: the jets contradict a deduction (see steps)
  std::string reason;
  std::vector<Theorem2Step> steps;
};

/// Deduction chain for a ruled surface assumed self-similar with parameter
/// lambda != 0. Parallel rulings give a cylinder over a planar shrinker.
/// Otherwise c3 = 0 gives b = 0; c2 = 0 gives k = 0 (plane) or 2 lambda a^2 = 1
/// with a constant; c1 = -a k' = 0 gives k constant; the constant term then
/// reduces to a^2 k, so k = 0 and the surface is a plane. When jets are given,
/// each deduction is checked against them and violations are reported.
Theorem2Result theorem2_classify(bool rulings_parallel, std::span<const RuledJet> jets,
                                 double lambda, double tol = 1e-9);

}  // namespace shrinker::ruled
