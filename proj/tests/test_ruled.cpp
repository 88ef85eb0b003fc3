#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "shrinker/errors.hpp"
#include "shrinker/ruled.hpp"

using namespace shrinker;
using namespace shrinker::ruled;

namespace {

RuledJet random_jet(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), kk(0.2, 2.0);
  RuledJet j;
  j.k = kk(rng), j.kp = u(rng);
  j.a = u(rng), j.ap = u(rng), j.app = u(rng);
  j.b = u(rng), j.bp = u(rng), j.bpp = u(rng);
  return j;
}

/// Second-order Taylor model of the frame around s = 0 pushed through dual numbers.
Patch taylor_patch(const RuledJet& j) {
  const double k = j.k, kp = j.kp;
  const Vec3 e1 = Vec3::UnitX(), e2 = Vec3::UnitY(), e3 = Vec3::UnitZ();
  const Vec3 e1d = e2, e2d = -e1 + k * e3, e3d = -k * e2;
  const Vec3 e1dd = e2d, e2dd = -e1d + kp * e3 + k * e3d, e3dd = -kp * e2 - k * e2d;
  return [=](const Dual2& s, const Dual2& t) -> DualVec3 {
    const Dual2 h = 0.5 * s * s;
    const Dual2 a = j.a + j.ap * s + j.app * h;
    const Dual2 b = j.b + j.bp * s + j.bpp * h;
    DualVec3 x;
    for (int i = 0; i < 3; ++i) {
      const Dual2 g = e1[i] + e1d[i] * s + e1dd[i] * h;
      const Dual2 n2 = e2[i] + e2d[i] * s + e2dd[i] * h;
      const Dual2 n3 = e3[i] + e3d[i] * s + e3dd[i] * h;
      x[i] = g * t + a * n2 + b * n3;
    }
    return x;
  };
}

Eigen::Vector4d vandermonde(const Patch& patch, double lambda) {
  Eigen::Matrix4d V;
  Eigen::Vector4d y;
  const double ts[4] = {-1.5, -0.25, 0.5, 2.0};
  for (int i = 0; i < 4; ++i) {
    V.row(i) << 1.0, ts[i], ts[i] * ts[i], ts[i] * ts[i] * ts[i];
    y(i) = shrinker_residual(eval_jet2(patch, 0.0, ts[i]), lambda);
  }
  return V.colPivHouseholderQr().solve(y);
}

}  // namespace

TEST_CASE("residual cubic matches sampled residuals") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    const auto rj = random_jet(rng);
    const double lambda = 0.3 + i * 0.01;
    const auto p = ruled_residual_poly(rj, lambda);
    const Eigen::Vector4d o = vandermonde(taylor_patch(rj), lambda);
    const double scale = std::max(1.0, o.cwiseAbs().maxCoeff());
    CHECK(std::abs(p.c0 - o(0)) < 1e-9 * scale);
    CHECK(std::abs(p.c1 - o(1)) < 1e-9 * scale);
    CHECK(std::abs(p.c2 - o(2)) < 1e-9 * scale);
    CHECK(std::abs(p.c3 - o(3)) < 1e-9 * scale);
    const auto q = ruled_sampled_poly(rj, lambda);
    CHECK(std::abs(q.c2 - o(2)) < 1e-9 * scale);
  }
}

TEST_CASE("coefficient identities") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 100; ++i) {
    auto rj = random_jet(rng);
    const double lambda = 0.8;
    CHECK(ruled_residual_poly(rj, lambda).c3 == doctest::Approx(-2 * lambda * rj.b).epsilon(1e-12));
    rj.b = rj.bp = rj.bpp = 0.0;
    CHECK(ruled_residual_poly(rj, lambda).c2 ==
          doctest::Approx(rj.k * (2 * lambda * rj.a * rj.a - 1.0)).epsilon(1e-12));
    rj.ap = rj.app = 0.0;
    const auto p = ruled_residual_poly(rj, lambda);
    CHECK(p.c1 == doctest::Approx(-rj.a * rj.kp).epsilon(1e-12));
    const double a2 = rj.a * rj.a, k = rj.k;
    CHECK(p.c0 == doctest::Approx(a2 * k * (1.0 - k * k + 2 * lambda * a2 * k * k)).epsilon(1e-12));
    // on the branch 2 lambda a^2 = 1 the constant term is a^2 k
    const auto q = ruled_residual_poly(rj, 1.0 / (2 * a2));
    CHECK(q.c0 == doctest::Approx(a2 * k).epsilon(1e-10));
  }
}

TEST_CASE("determinant identities for constant a") {
  RuledJet rj;
  rj.k = 0.7, rj.kp = 0.4, rj.a = 1.3;
  const auto d = ruled_identity_check(rj);
  CHECK(d.det_pp_gp_g == doctest::Approx(-rj.a * rj.kp));
  CHECK(d.d1 == doctest::Approx(-2 * rj.a * rj.kp));
  CHECK(std::abs(d.d2) < 1e-14);
  rj.b = 0.1;
  CHECK_THROWS_AS(ruled_identity_check(rj), ArgumentError);
}

TEST_CASE("deduction chain") {
  const auto cyl = theorem2_classify(true, {}, 1.0);
  CHECK(cyl.verdict == RuledVerdict::CylinderOverPlanarShrinker);
  CHECK_THROWS_AS(theorem2_classify(false, {}, 0.0), ArgumentError);

  std::vector<RuledJet> plane(3);
  plane[0].a = 0.5, plane[1].a = -1.0, plane[2].a = 2.0;
  const auto ok = theorem2_classify(false, plane, 1.0);
  CHECK(ok.verdict == RuledVerdict::Plane);
  CHECK(ok.consistent);

  std::mt19937_64 rng(23);
  std::vector<RuledJet> random{random_jet(rng), random_jet(rng)};
  const auto bad = theorem2_classify(false, random, 1.0);
  CHECK_FALSE(bad.consistent);
  CHECK_FALSE(bad.steps.empty());
}
