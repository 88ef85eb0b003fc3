#include "shrinker/geometry.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>

#include "shrinker/errors.hpp"

namespace shrinker {
namespace {

constexpr double kRegularity = 1e-12;
constexpr double kSupportFloor = 1e-8;

double triple(const Vec3& a, const Vec3& b, const Vec3& c) { return a.dot(b.cross(c)); }

double max_coord(std::initializer_list<const Vec3*> vs) {
  double m = 0.0;
  for (const Vec3* v : vs) m = std::max(m, v->cwiseAbs().maxCoeff());
  return m;
}

}  // namespace

ImmersionJet2 ImmersionJet2::scaled(double c) const {
  return {c * X, c * Xs, c * Xt, c * Xss, c * Xst, c * Xtt};
}

ImmersionJet2 ImmersionJet2::swapped() const { return {X, Xt, Xs, Xtt, Xst, Xss}; }

double FormData::e() const { return ebar / std::sqrt(W); }
double FormData::f() const { return fbar / std::sqrt(W); }
double FormData::g() const { return gbar / std::sqrt(W); }

ImmersionJet2 eval_jet2(const Patch& patch, double s, double t) {
  const DualVec3 x = patch(Dual2::seed_s(s), Dual2::seed_t(t));
  ImmersionJet2 jet;
  for (int i = 0; i < 3; ++i) {
    jet.X[i] = x[i].value;
    jet.Xs[i] = x[i].d_s;
    jet.Xt[i] = x[i].d_t;
    jet.Xss[i] = x[i].d_ss;
    jet.Xst[i] = x[i].d_st;
    jet.Xtt[i] = x[i].d_tt;
  }
  return jet;
}

FormData fundamental_data(const ImmersionJet2& jet) {
  FormData fd;
  const Vec3 cross = jet.Xs.cross(jet.Xt);
  fd.E = jet.Xs.squaredNorm();
  fd.F = jet.Xs.dot(jet.Xt);
  fd.G = jet.Xt.squaredNorm();
  fd.W = fd.E * fd.G - fd.F * fd.F;
  const double scale = max_coord({&jet.Xs, &jet.Xt});
  if (!(fd.W > kRegularity * std::pow(scale, 4)) || !(fd.W > 0.0))
    throw DegenerateError("fundamental_data: X_s and X_t are (nearly) parallel");
  fd.ebar = jet.Xss.dot(cross);
  fd.fbar = jet.Xst.dot(cross);
  fd.gbar = jet.Xtt.dot(cross);
  fd.detX = triple(jet.X, jet.Xs, jet.Xt);
  fd.N = cross / std::sqrt(fd.W);
  return fd;
}

CurvatureSupport mean_curvature_and_support(const FormData& fd) {
  if (!(fd.W > 0.0)) throw DegenerateError("mean_curvature_and_support: W <= 0");
  const double root = std::sqrt(fd.W);
  return {(fd.ebar * fd.G + fd.gbar * fd.E - 2.0 * fd.fbar * fd.F) / (2.0 * fd.W * root),
          fd.detX / root};
}

double shrinker_residual(const ImmersionJet2& jet, double lambda) {
  const FormData fd = fundamental_data(jet);
  return fd.ebar * fd.G + fd.gbar * fd.E - 2.0 * fd.fbar * fd.F + 2.0 * lambda * fd.W * fd.detX;
}

std::vector<std::pair<double, double>> ParamGrid::points() const {
  if (ns == 0 || nt == 0) throw ArgumentError("ParamGrid: empty grid");
  std::vector<std::pair<double, double>> pts;
  pts.reserve(ns * nt);
  const double ds = (s1 - s0) / static_cast<double>(ns);
  const double dt = (t1 - t0) / static_cast<double>(nt);
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < nt; ++j)
      pts.emplace_back(s0 + (static_cast<double>(i) + 0.5) * ds,
                       t0 + (static_cast<double>(j) + 0.5) * dt);
  return pts;
}

double max_abs_residual(const Patch& patch, const ParamGrid& grid, double lambda) {
  double worst = 0.0;
  for (const auto& [s, t] : grid.points())
    worst = std::max(worst, std::abs(shrinker_residual(eval_jet2(patch, s, t), lambda)));
  return worst;
}

LambdaFit fit_lambda(const Patch& patch, const ParamGrid& grid) {
  std::vector<double> samples;
  for (const auto& [s, t] : grid.points()) {
    const ImmersionJet2 jet = eval_jet2(patch, s, t);
    FormData fd;
    try {
      fd = fundamental_data(jet);
    } catch (const DegenerateError&) {
      continue;
    }
    const double scale = max_coord({&jet.X, &jet.Xs, &jet.Xt});
    if (std::abs(fd.detX) < kSupportFloor * scale * scale * scale) continue;
    const double curvature = fd.ebar * fd.G + fd.gbar * fd.E - 2.0 * fd.fbar * fd.F;
    samples.push_back(-curvature / (2.0 * fd.W * fd.detX));
  }
  if (samples.empty())
    throw IndeterminateError("fit_lambda: det(X, X_s, X_t) vanishes on the grid (minimal candidate)");
  LambdaFit fit;
  fit.used = samples.size();
  for (double l : samples) fit.lambda += l;
  fit.lambda /= static_cast<double>(samples.size());
  for (double l : samples) fit.spread = std::max(fit.spread, std::abs(l - fit.lambda));
  return fit;
}

}  // namespace shrinker
