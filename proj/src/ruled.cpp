#include "shrinker/ruled.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "shrinker/errors.hpp"

namespace shrinker::ruled {
namespace {

double det3(const Vec3& u, const Vec3& v, const Vec3& w) { return u.dot(v.cross(w)); }

/// Frame coordinates of p' = -a e1 + (a' - k b) e2 + (b' + k a) e3.
Vec3 p_first(const RuledJet& rj) { return {-rj.a, rj.ap - rj.k * rj.b, rj.bp + rj.k * rj.a}; }

bool near_zero(double v, double tol) { return std::abs(v) <= tol; }

}  // namespace

void RuledJet::validate() const {
  for (double v : {k, kp, a, ap, app, b, bp, bpp})
    if (!std::isfinite(v)) throw ArgumentError("RuledJet: non-finite field");
}

Vec3 p_second(const RuledJet& rj) {
  const Vec3 v = p_first(rj);
  // derivatives of the coordinates of p'
  const double d1 = -rj.ap;
  const double d2 = rj.app - rj.kp * rj.b - rj.k * rj.bp;
  const double d3 = rj.bpp + rj.kp * rj.a + rj.k * rj.ap;
  // e1' = e2, e2' = k e3 - e1, e3' = -k e2
  return {d1 - v[1], d2 + v[0] - rj.k * v[2], d3 + rj.k * v[1]};
}

PolyInT ruled_residual_poly(const RuledJet& rj, double lambda) {
  rj.validate();
  const Vec3 g{1.0, 0.0, 0.0};
  const Vec3 gp{0.0, 1.0, 0.0};
  const Vec3 gpp{-1.0, 0.0, rj.k};
  const Vec3 p{0.0, rj.a, rj.b};
  const Vec3 p1 = p_first(rj);
  const Vec3 p2 = p_second(rj);

  // ebar(t) = det(gamma'' t + p'', gamma' t + p', gamma)
  const double e2 = det3(gpp, gp, g);
  const double e1 = det3(gpp, p1, g) + det3(p2, gp, g);
  const double e0 = det3(p2, p1, g);
  // -2 fbar F with fbar = det(gamma', p', gamma), F = <gamma, p'>; G = 1, gbar = 0
  const double mixed = -2.0 * det3(gp, p1, g) * g.dot(p1);
  // W(t) = |gamma' t + p'|^2 - <gamma, p'>^2
  const double w2 = 1.0;
  const double w1 = 2.0 * gp.dot(p1);
  const double w0 = p1.squaredNorm() - g.dot(p1) * g.dot(p1);
  // det(X, X_s, X_t) = t det(p, gamma', gamma) + det(p, p', gamma)
  const double d1 = det3(p, gp, g);
  const double d0 = det3(p, p1, g);

  PolyInT poly;
  poly.c3 = 2.0 * lambda * w2 * d1;
  poly.c2 = e2 + 2.0 * lambda * (w2 * d0 + w1 * d1);
  poly.c1 = e1 + 2.0 * lambda * (w1 * d0 + w0 * d1);
  poly.c0 = e0 + mixed + 2.0 * lambda * w0 * d0;
  return poly;
}

PolyInT ruled_sampled_poly(const RuledJet& rj, double lambda) {
  Eigen::Matrix4d V;
  Eigen::Vector4d y;
  for (int i = 0; i < 4; ++i) {
    const double t = i - 1.0;
    V.row(i) << 1.0, t, t * t, t * t * t;
    y(i) = shrinker_residual(ruled_immersion_jet(rj, t), lambda);
  }
  const Eigen::Vector4d c = V.fullPivLu().solve(y);
  return {c(0), c(1), c(2), c(3)};
}

ImmersionJet2 ruled_immersion_jet(const RuledJet& rj, double t) {
  rj.validate();
  const double k = rj.k, kp = rj.kp;
  const Vec3 e1 = Vec3::UnitX(), e2 = Vec3::UnitY(), e3 = Vec3::UnitZ();
  const Vec3 e1p = e2;
  const Vec3 e2p = k * e3 - e1;
  const Vec3 e3p = -k * e2;
  const Vec3 e1pp = e2p;
  const Vec3 e2pp = kp * e3 + k * e3p - e1p;
  const Vec3 e3pp = -kp * e2 - k * e2p;

  const Vec3 p = rj.a * e2 + rj.b * e3;
  const Vec3 p1 = rj.ap * e2 + rj.a * e2p + rj.bp * e3 + rj.b * e3p;
  const Vec3 p2 = rj.app * e2 + 2.0 * rj.ap * e2p + rj.a * e2pp + rj.bpp * e3 +
                  2.0 * rj.bp * e3p + rj.b * e3pp;

  ImmersionJet2 jet;
  jet.X = e1 * t + p;
  jet.Xs = e1p * t + p1;
  jet.Xt = e1;
  jet.Xss = e1pp * t + p2;
  jet.Xst = e1p;
  jet.Xtt = Vec3::Zero();
  return jet;
}

IdentityDefects ruled_identity_check(const RuledJet& rj) {
  rj.validate();
  constexpr double kExact = 1e-12;
  if (!near_zero(rj.b, kExact) || !near_zero(rj.bp, kExact) || !near_zero(rj.bpp, kExact) ||
      !near_zero(rj.ap, kExact) || !near_zero(rj.app, kExact))
    throw ArgumentError("ruled_identity_check: needs b = 0 and a constant along the jet");
  const Vec3 g{1.0, 0.0, 0.0};
  const Vec3 gp{0.0, 1.0, 0.0};
  const Vec3 p1 = p_first(rj);
  const Vec3 p2 = p_second(rj);
  IdentityDefects out;
  out.det_pp_gp_g = det3(p2, gp, g);
  out.det_pp_p_g = det3(p2, p1, g);
  out.d1 = out.det_pp_gp_g - rj.a * rj.kp;
  out.d2 = out.det_pp_p_g + rj.a * rj.a * rj.k * (1.0 + rj.k * rj.k);
  return out;
}

std::string to_string(RuledVerdict v) {
  switch (v) {
    case RuledVerdict::CylinderOverPlanarShrinker: return "CylinderOverPlanarShrinker";
    case RuledVerdict::Plane: return "Plane";
  }
  return "?";
}

Theorem2Result theorem2_classify(bool rulings_parallel, std::span<const RuledJet> jets,
                                 double lambda, double tol) {
  Theorem2Result out;
  if (rulings_parallel) {
    out.verdict = RuledVerdict::CylinderOverPlanarShrinker;
    out.reason = "parallel rulings: a cylinder whose cross-section must be a planar self-shrinking curve";
    out.steps.push_back({"rulings", "gamma constant, X = gamma t + p(s) is a cylinder", true, 0.0});
    return out;
  }
  if (lambda == 0.0) throw ArgumentError("theorem2_classify: lambda must be nonzero");
  for (const auto& rj : jets) rj.validate();

  std::vector<PolyInT> polys;
  polys.reserve(jets.size());
  for (const auto& rj : jets) polys.push_back(ruled_residual_poly(rj, lambda));
  auto worst = [&](double PolyInT::*c) {
    double m = 0.0;
    for (const auto& p : polys) m = std::max(m, std::abs(p.*c));
    return m;
  };
  auto fail = [&](Theorem2Step step, std::string why) {
    step.consistent = false;
    out.steps.push_back(std::move(step));
    out.consistent = false;
    out.reason = std::move(why);
  };
  out.verdict = RuledVerdict::Plane;

  // t^3
  Theorem2Step s3{"t^3", "c3 = -2 lambda b = 0, so b vanishes identically", true, worst(&PolyInT::c3)};
  for (const auto& rj : jets)
    if (!near_zero(rj.b, tol) || !near_zero(rj.bp, tol) || !near_zero(rj.bpp, tol)) {
      fail(s3, "jet has b != 0, so the t^3 coefficient -2 lambda b cannot vanish");
      return out;
    }
  out.steps.push_back(s3);

  // t^2
  Theorem2Step s2{"t^2", "c2 = k (2 lambda a^2 - 1) = 0: k = 0 (plane) or a constant with 2 lambda a^2 = 1",
                  true, worst(&PolyInT::c2)};
  std::vector<const RuledJet*> curved;
  for (const auto& rj : jets)
    if (!near_zero(rj.k, tol) || !near_zero(rj.kp, tol)) curved.push_back(&rj);
  if (curved.empty()) {
    out.steps.push_back(s2);
    out.reason = "k = 0: gamma is a great circle and X = gamma t + a gamma' lies in a plane through the origin";
    return out;
  }
  if (lambda < 0.0) {
    fail(s2, "k != 0 needs 2 lambda a^2 = 1, impossible for lambda < 0");
    return out;
  }
  for (const RuledJet* rj : curved)
    if (!near_zero(2.0 * lambda * rj->a * rj->a - 1.0, tol) || !near_zero(rj->ap, tol) ||
        !near_zero(rj->app, tol)) {
      fail(s2, "jet has k != 0 but a is not the constant with 2 lambda a^2 = 1");
      return out;
    }
  out.steps.push_back(s2);

  // t^1
  Theorem2Step s1{"t^1", "c1 = -a k' = 0 with a != 0, so k is constant", true, worst(&PolyInT::c1)};
  for (const RuledJet* rj : curved)
    if (!near_zero(rj->kp, tol)) {
      fail(s1, "jet has k' != 0, so the t coefficient -a k' cannot vanish");
      return out;
    }
  out.steps.push_back(s1);

  // t^0
  Theorem2Step s0{"t^0", "c0 = a^2 k (1 - k^2 + 2 lambda a^2 k^2) = a^2 k = 0, so k = 0: a plane", true,
                  worst(&PolyInT::c0)};
  fail(s0, "constant term a^2 k is nonzero on jets with k != 0; only the plane survives");
  return out;
}

}  // namespace shrinker::ruled
