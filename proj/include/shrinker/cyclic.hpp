#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shrinker/geometry.hpp"
#include "shrinker/trig_poly.hpp"

namespace shrinker::cyclic {

/// Pointwise data of a circle-foliated surface, expressed in the Frenet frame
/// (T, N, B) of the curve normal to the circles. k, tau: curvature and
/// torsion of that curve; R: circle radius; (p, q, r): coordinates of the
/// circle centre z in the frame. Suffix p marks one derivative in s.
struct CyclicJet {
  double k = 0.0, kp = 0.0;
  double tau = 0.0, taup = 0.0;
  double R = 1.0, Rp = 0.0, Rpp = 0.0;
  double p = 0.0, pp = 0.0, ppp = 0.0;
  double q = 0.0, qp = 0.0, qpp = 0.0;
  double r = 0.0, rp = 0.0, rpp = 0.0;

  /// Frame coordinates (alpha, beta, gamma) of z'(s).
  double alpha() const { return pp - k * q; }
  double beta() const { return qp + p * k - tau * r; }
  double gamma() const { return rp + tau * q; }
  double alpha_p() const { return ppp - kp * q - k * qp; }
  double beta_p() const { return qpp + pp * k + p * kp - taup * r - tau * rp; }
  double gamma_p() const { return rpp + taup * q + tau * qp; }

  /// Throws ArgumentError unless R > 0, k >= 0 and all fields are finite.
  void validate() const;
};

/// X(s, t) = R (N cos t + B sin t) + z at the jet's s, in frame coordinates.
/// Second derivatives use T' = k N, N' = -k T + tau B, B' = -tau N.
ImmersionJet2 cyclic_immersion_jet(const CyclicJet& cj, double t);

/// ebar G + gbar E - 2 fbar F as a trigonometric polynomial in t
/// (order 3 by construction; a larger order exposes the vanishing tail).
TrigPoly cyclic_lhs_poly(const CyclicJet& cj, int order = 3);

/// R^{-3} (EG - F^2) det(X, X_s, X_t) as a trigonometric polynomial (order 4).
TrigPoly cyclic_rhs_poly(const CyclicJet& cj, int order = 4);

/// Closed forms of individual coefficients in terms of the jet, each one
/// confirmed against the Fourier extraction in the test suite.
namespace closed_form {
double a3(const CyclicJet& cj);
double b3(const CyclicJet& cj);
double a2(const CyclicJet& cj);
double b2(const CyclicJet& cj);
/// a'_4 = (kR/4) (A q - beta gamma r), b'_4 = (kR/4) (A r + beta gamma q),
/// A = (R^2 k^2 - gamma^2 + beta^2) / 2.
double a4p(const CyclicJet& cj);
double b4p(const CyclicJet& cj);
/// Determinant of the (q, r) system behind a'_4 = b'_4 = 0, up to (kR/4)^2.
double system_determinant(const CyclicJet& cj);
}  // namespace closed_form

struct Witness {
  std::string name;
  double value = 0.0;
};

enum class CyclicVerdict { SphereCase, ParallelRequired, Contradiction, NotSelfSimilar };

std::string to_string(CyclicVerdict v);

struct CyclicClassification {
  CyclicVerdict verdict = CyclicVerdict::NotSelfSimilar;
  double lambda = 0.0;  ///< meaningful for SphereCase only
  std::string reason;
  std::vector<Witness> witness;
};

/// Runs the case split forced by the vanishing of the order-4 coefficients.
/// Nonsingular (q, r) system: q = r = 0 identically (checked on the jet's
/// q, r and their derivatives) gives SphereCase with lambda = -a_3 / (2 R^3 a'_3),
/// anything else is NotSelfSimilar. Singular system: beta = 0, R^2 k^2 = gamma^2
/// and the order-3 then order-2 coefficients lead to Contradiction.
/// Throws FrameDegenerateError when k < 1e-6.
CyclicClassification lemma2_classify(const CyclicJet& cj, std::optional<double> lambda_hint,
                                     double tol = 1e-9);

/// Circles in horizontal planes: X(s, t) = (a(s) + R cos t, b(s) + R sin t, s).
struct ParallelCircleJet {
  double a = 0.0, ap = 0.0, app = 0.0;
  double b = 0.0, bp = 0.0, bpp = 0.0;
  double R = 1.0, Rp = 0.0, Rpp = 0.0;
  double s = 0.0;
};

ImmersionJet2 parallel_circle_jet(const ParallelCircleJet& pj, double t);

enum class ParallelVerdict { Revolution, LinearCenters, Minimal, NotSelfSimilar };

std::string to_string(ParallelVerdict v);

struct ParallelCircleAnalysis {
  TrigPoly lhs;  ///< ebar G + gbar E - 2 fbar F
  TrigPoly rhs;  ///< (EG - F^2) det(X, X_s, X_t)
  ParallelVerdict verdict = ParallelVerdict::NotSelfSimilar;
  std::string reason;
  std::vector<Witness> witness;
};

/// a' = b' = 0 gives Revolution. Otherwise the order-3 coefficients of rhs must
/// vanish, which (a', b') != 0 only allows for centres a = a0 s, b = b0 s;
/// then the order-2 coefficients, proportional to (s R' - R), decide between
/// Minimal (det identically zero and lhs zero) and LinearCenters.
ParallelCircleAnalysis parallel_circle_analysis(const ParallelCircleJet& pj, double lambda,
                                                double tol = 1e-9);

}  // namespace shrinker::cyclic
