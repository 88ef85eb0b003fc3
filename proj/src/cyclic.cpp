#include "shrinker/cyclic.hpp"

#include <algorithm>
#include <cmath>

#include "shrinker/errors.hpp"
#include "shrinker/numerics.hpp"

namespace shrinker::cyclic {
namespace {

constexpr double kFrameDegenerate = 1e-6;

/// Frenet-frame rotation: coordinates of d/ds of the frame applied to v.
Vec3 rotate(const Vec3& v, double k, double tau) {
  return {-k * v[1], k * v[0] - tau * v[2], tau * v[1]};
}

double lhs_at(const ImmersionJet2& jet) {
  const FormData fd = fundamental_data(jet);
  return fd.ebar * fd.G + fd.gbar * fd.E - 2.0 * fd.fbar * fd.F;
}

double w_det_at(const ImmersionJet2& jet) {
  const FormData fd = fundamental_data(jet);
  return fd.W * fd.detX;
}

double max_abs(std::initializer_list<double> xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

void CyclicJet::validate() const {
  for (double v : {k, kp, tau, taup, R, Rp, Rpp, p, pp, ppp, q, qp, qpp, r, rp, rpp})
    if (!std::isfinite(v)) throw ArgumentError("CyclicJet: non-finite field");
  if (!(R > 0.0)) throw ArgumentError("CyclicJet: radius R must be positive");
  if (k < 0.0) throw ArgumentError("CyclicJet: Frenet curvature k must be nonnegative");
}

ImmersionJet2 cyclic_immersion_jet(const CyclicJet& cj, double t) {
  cj.validate();
  const double c = std::cos(t), s = std::sin(t);
  // Frame coordinates of X and of its plain s-derivatives (frame held fixed).
  const Vec3 x{cj.p, cj.q + cj.R * c, cj.r + cj.R * s};
  const Vec3 x1{cj.pp, cj.qp + cj.Rp * c, cj.rp + cj.Rp * s};
  const Vec3 x2{cj.ppp, cj.qpp + cj.Rpp * c, cj.rpp + cj.Rpp * s};
  const Vec3 xt{0.0, -cj.R * s, cj.R * c};
  const Vec3 x1t{0.0, -cj.Rp * s, cj.Rp * c};
  const Vec3 xtt{0.0, -cj.R * c, -cj.R * s};

  ImmersionJet2 jet;
  jet.X = x;
  jet.Xs = x1 + rotate(x, cj.k, cj.tau);
  // d/ds of the coordinate vector Xs, then the frame's own rotation.
  const Vec3 dxs = x2 + rotate(x, cj.kp, cj.taup) + rotate(x1, cj.k, cj.tau);
  jet.Xss = dxs + rotate(jet.Xs, cj.k, cj.tau);
  jet.Xt = xt;
  jet.Xst = x1t + rotate(xt, cj.k, cj.tau);
  jet.Xtt = xtt;
  return jet;
}

TrigPoly cyclic_lhs_poly(const CyclicJet& cj, int order) {
  cj.validate();
  return numerics::fourier_extract([&](double t) { return lhs_at(cyclic_immersion_jet(cj, t)); },
                                   order);
}

TrigPoly cyclic_rhs_poly(const CyclicJet& cj, int order) {
  cj.validate();
  const double r3 = cj.R * cj.R * cj.R;
  return numerics::fourier_extract(
      [&](double t) { return w_det_at(cyclic_immersion_jet(cj, t)) / r3; }, order);
}

namespace closed_form {

double a3(const CyclicJet& cj) {
  const double R = cj.R, k = cj.k, be = cj.beta(), ga = cj.gamma();
  return -R * R * R * k / 2.0 * (k * k * R * R + be * be - ga * ga);
}

double b3(const CyclicJet& cj) { return -cj.k * cj.R * cj.R * cj.R * cj.beta() * cj.gamma(); }

double a2(const CyclicJet& cj) {
  const double R = cj.R, k = cj.k, be = cj.beta();
  return R * R * R / 2.0 *
         (5.0 * cj.alpha() * k * k * R + cj.beta_p() * k * R - be * cj.kp * R - 6.0 * be * k * cj.Rp);
}

double b2(const CyclicJet& cj) {
  const double R = cj.R, k = cj.k, ga = cj.gamma();
  return R * R * R / 2.0 * (cj.gamma_p() * k * R - ga * cj.kp * R - 6.0 * ga * k * cj.Rp);
}

double a4p(const CyclicJet& cj) {
  const double be = cj.beta(), ga = cj.gamma();
  const double A = 0.5 * (cj.R * cj.R * cj.k * cj.k - ga * ga + be * be);
  return cj.k * cj.R / 4.0 * (A * cj.q - be * ga * cj.r);
}

double b4p(const CyclicJet& cj) {
  const double be = cj.beta(), ga = cj.gamma();
  const double A = 0.5 * (cj.R * cj.R * cj.k * cj.k - ga * ga + be * be);
  return cj.k * cj.R / 4.0 * (A * cj.r + be * ga * cj.q);
}

double system_determinant(const CyclicJet& cj) {
  const double be = cj.beta(), ga = cj.gamma();
  const double A = 0.5 * (cj.R * cj.R * cj.k * cj.k - ga * ga + be * be);
  return A * A + be * be * ga * ga;
}

}  // namespace closed_form

std::string to_string(CyclicVerdict v) {
  switch (v) {
    case CyclicVerdict::SphereCase: return "SphereCase";
    case CyclicVerdict::ParallelRequired: return "ParallelRequired";
    case CyclicVerdict::Contradiction: return "Contradiction";
    case CyclicVerdict::NotSelfSimilar: return "NotSelfSimilar";
  }
  return "?";
}

CyclicClassification lemma2_classify(const CyclicJet& cj, std::optional<double> lambda_hint,
                                     double tol) {
  cj.validate();
  if (cj.k < kFrameDegenerate)
    throw FrameDegenerateError("lemma2_classify: center curve curvature below 1e-6");

  const TrigPoly lhs = cyclic_lhs_poly(cj, 4);
  const TrigPoly rhs = cyclic_rhs_poly(cj, 4);
  const double R = cj.R, k = cj.k, be = cj.beta(), ga = cj.gamma();
  const double R3 = R * R * R;

  CyclicClassification out;
  auto note = [&](std::string name, double v) { out.witness.push_back({std::move(name), v}); };
  note("a'_4", rhs.a(4));
  note("b'_4", rhs.b(4));

  const double det = closed_form::system_determinant(cj);
  const double det_scale = std::max(1.0, std::pow(R * R * k * k + be * be + ga * ga, 2) / 4.0);
  note("system_determinant", det);

  if (det > tol * det_scale) {
    // Nonsingular: a'_4 = b'_4 = 0 on an interval forces q = r = 0 there, so
    // the jet must show q, r and their derivatives all zero.
    const double qr = max_abs({cj.q, cj.r, cj.qp, cj.rp, cj.qpp, cj.rpp});
    note("max|q,r,q',r',q'',r''|", qr);
    if (qr > tol * std::max(1.0, R)) {
      out.verdict = CyclicVerdict::NotSelfSimilar;
      out.reason = "nonsingular (q, r) system but q, r do not vanish identically: "
                   "a'_4, b'_4 cannot be cancelled by the order-3 left side";
      return out;
    }
    const double a3 = lhs.a(3), a3p = rhs.a(3);
    note("a_3", a3);
    note("a'_3", a3p);
    if (std::abs(a3p) <= tol * rhs.scale()) {
      out.verdict = CyclicVerdict::NotSelfSimilar;
      out.reason = "a'_3 vanishes, lambda undetermined";
      return out;
    }
    const double lambda = -a3 / (2.0 * R3 * a3p);
    note("lambda", lambda);
    note("lambda*(R^2+p^2)", lambda * (R * R + cj.p * cj.p));
    if (lambda_hint && std::abs(lambda - *lambda_hint) > 1e3 * tol * std::max(1.0, std::abs(*lambda_hint))) {
      out.verdict = CyclicVerdict::NotSelfSimilar;
      out.reason = "sphere case requires lambda = -a_3 / (2 R^3 a'_3), which differs from the given lambda";
      return out;
    }
    out.verdict = CyclicVerdict::SphereCase;
    out.lambda = lambda;
    out.reason = "q = r = gamma = 0; lambda = -a_3 / (2 R^3 a'_3) = c / |X|^2";
    return out;
  }

  // Singular: beta = 0 and R^2 k^2 = gamma^2, so a_3 = b_3 = 0.
  note("beta", be);
  note("R^2k^2-gamma^2", R * R * k * k - ga * ga);
  note("a_3", lhs.a(3));
  note("b_3", lhs.b(3));
  note("a'_3", rhs.a(3));
  note("b'_3", rhs.b(3));
  out.verdict = CyclicVerdict::Contradiction;
  if (std::max(std::abs(rhs.a(3)), std::abs(rhs.b(3))) > tol * rhs.scale()) {
    out.reason = "a_3 = b_3 = 0 but a'_3, b'_3 do not vanish";
    return out;
  }
  if (max_abs({cj.q, cj.r}) <= tol * std::max(1.0, R)) {
    out.reason = "q = r = 0 forces gamma = r' + tau q = 0, yet gamma = +-Rk != 0";
    return out;
  }
  note("a'_2", rhs.a(2));
  note("b'_2", rhs.b(2));
  out.reason = "alpha = R' = 0, so a_2 = b_2 = 0 forces a'_2 = kRq gamma^2/2 and "
               "b'_2 = kRr gamma^2/2 to vanish, i.e. q = r = 0, contradicting gamma != 0";
  return out;
}

ImmersionJet2 parallel_circle_jet(const ParallelCircleJet& pj, double t) {
  if (!(pj.R > 0.0)) throw ArgumentError("ParallelCircleJet: radius R must be positive");
  const double c = std::cos(t), s = std::sin(t);
  ImmersionJet2 jet;
  jet.X = {pj.a + pj.R * c, pj.b + pj.R * s, pj.s};
  jet.Xs = {pj.ap + pj.Rp * c, pj.bp + pj.Rp * s, 1.0};
  jet.Xt = {-pj.R * s, pj.R * c, 0.0};
  jet.Xss = {pj.app + pj.Rpp * c, pj.bpp + pj.Rpp * s, 0.0};
  jet.Xst = {-pj.Rp * s, pj.Rp * c, 0.0};
  jet.Xtt = {-pj.R * c, -pj.R * s, 0.0};
  return jet;
}

std::string to_string(ParallelVerdict v) {
  switch (v) {
    case ParallelVerdict::Revolution: return "Revolution";
    case ParallelVerdict::LinearCenters: return "LinearCenters";
    case ParallelVerdict::Minimal: return "Minimal";
    case ParallelVerdict::NotSelfSimilar: return "NotSelfSimilar";
  }
  return "?";
}

ParallelCircleAnalysis parallel_circle_analysis(const ParallelCircleJet& pj, double lambda,
                                                double tol) {
  if (!(pj.R > 0.0)) throw ArgumentError("ParallelCircleJet: radius R must be positive");
  ParallelCircleAnalysis out;
  out.lhs = numerics::fourier_extract([&](double t) { return lhs_at(parallel_circle_jet(pj, t)); }, 4);
  out.rhs = numerics::fourier_extract([&](double t) { return w_det_at(parallel_circle_jet(pj, t)); }, 4);
  auto note = [&](std::string name, double v) { out.witness.push_back({std::move(name), v}); };
  note("rhs_cos3t", out.rhs.a(3));
  note("rhs_sin3t", out.rhs.b(3));
  note("a's-a", pj.ap * pj.s - pj.a);
  note("b's-b", pj.bp * pj.s - pj.b);
  note("rhs_cos2t", out.rhs.a(2));
  note("rhs_sin2t", out.rhs.b(2));
  note("sR'-R", pj.s * pj.Rp - pj.R);
  note("max_residual_coeff", (out.lhs + 2.0 * lambda * out.rhs).max_abs_coeff());

  if (max_abs({pj.ap, pj.bp}) <= tol) {
    out.verdict = ParallelVerdict::Revolution;
    out.reason = "a' = b' = 0: circles are coaxial, surface of revolution";
    return out;
  }
  const double scale = out.rhs.scale();
  if (max_abs({out.rhs.a(3), out.rhs.b(3)}) > tol * scale) {
    out.verdict = ParallelVerdict::NotSelfSimilar;
    out.reason = "order-3 coefficients of (EG-F^2) det are nonzero while the left side has none";
    return out;
  }
  if (max_abs({out.rhs.a(2), out.rhs.b(2)}) <= tol * scale) {
    if (is_zero(out.lhs, tol)) {
      out.verdict = ParallelVerdict::Minimal;
      out.reason = "s R' - R = 0: det vanishes identically and so does the mean curvature";
    } else {
      out.verdict = ParallelVerdict::NotSelfSimilar;
      out.reason = "det vanishes identically but the mean curvature term does not";
    }
    return out;
  }
  out.verdict = ParallelVerdict::LinearCenters;
  out.reason = "centres move linearly (a = a0 s, b = b0 s); the order-2 coefficients force "
               "a0 = b0 = 0 (revolution) unless s R' - R = 0";
  return out;
}

}  // namespace shrinker::cyclic
