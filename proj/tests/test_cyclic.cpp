#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "shrinker/cyclic.hpp"
#include "shrinker/errors.hpp"

using namespace shrinker;
using namespace shrinker::cyclic;

namespace {

CyclicJet random_jet(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.5, 2.0), kk(0.2, 2.0);
  CyclicJet j;
  j.k = kk(rng), j.kp = u(rng), j.tau = u(rng), j.taup = u(rng);
  j.R = pos(rng), j.Rp = u(rng), j.Rpp = u(rng);
  j.p = u(rng), j.pp = u(rng), j.ppp = u(rng);
  j.q = u(rng), j.qp = u(rng), j.qpp = u(rng);
  j.r = u(rng), j.rp = u(rng), j.rpp = u(rng);
  return j;
}

/// Frenet frame at s by RK4 on F' = F A(s), F(0) = I.
Eigen::Matrix3d frame_at(const CyclicJet& j, double s) {
  auto A = [&](double x) {
    const double k = j.k + j.kp * x, tau = j.tau + j.taup * x;
    Eigen::Matrix3d a;
    a << 0, -k, 0, k, 0, -tau, 0, tau, 0;
    return a;
  };
  Eigen::Matrix3d F = Eigen::Matrix3d::Identity();
  const int n = 400;
  const double h = s / n;
  for (int i = 0; i < n; ++i) {
    const double x = i * h;
    const Eigen::Matrix3d k1 = F * A(x);
    const Eigen::Matrix3d k2 = (F + 0.5 * h * k1) * A(x + 0.5 * h);
    const Eigen::Matrix3d k3 = (F + 0.5 * h * k2) * A(x + 0.5 * h);
    const Eigen::Matrix3d k4 = (F + h * k3) * A(x + h);
    F += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return F;
}

Vec3 position(const CyclicJet& j, double s, double t) {
  const double R = j.R + j.Rp * s + 0.5 * j.Rpp * s * s;
  const Vec3 x(j.p + j.pp * s + 0.5 * j.ppp * s * s, j.q + j.qp * s + 0.5 * j.qpp * s * s + R * std::cos(t),
               j.r + j.rp * s + 0.5 * j.rpp * s * s + R * std::sin(t));
  return frame_at(j, s) * x;
}

Vec3 tangent_t(const CyclicJet& j, double s, double t) {
  const double R = j.R + j.Rp * s + 0.5 * j.Rpp * s * s;
  return frame_at(j, s) * Vec3(0.0, -R * std::sin(t), R * std::cos(t));
}

/// Ambient jet from the integrated frame and five-point differences in s.
ImmersionJet2 oracle_jet(const CyclicJet& j, double t) {
  const double h = 2e-3;
  auto X = [&](double s) { return position(j, s, t); };
  auto Xt = [&](double s) { return tangent_t(j, s, t); };
  ImmersionJet2 o;
  o.X = X(0.0);
  o.Xs = (-X(2 * h) + 8 * X(h) - 8 * X(-h) + X(-2 * h)) / (12 * h);
  o.Xss = (-X(2 * h) + 16 * X(h) - 30 * o.X + 16 * X(-h) - X(-2 * h)) / (12 * h * h);
  o.Xt = Xt(0.0);
  o.Xst = (-Xt(2 * h) + 8 * Xt(h) - 8 * Xt(-h) + Xt(-2 * h)) / (12 * h);
  o.Xtt = Vec3(0.0, -j.R * std::cos(t), -j.R * std::sin(t));
  return o;
}

double rel(double a, double b, double scale) { return std::abs(a - b) / std::max({std::abs(b), scale, 1e-300}); }

}  // namespace

TEST_CASE("cyclic jet agrees with an integrated Frenet frame") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    const auto cj = random_jet(rng);
    for (double t : {0.0, 0.9, 2.5, 4.0}) {
      const auto a = cyclic_immersion_jet(cj, t);
      const auto o = oracle_jet(cj, t);
      CHECK((a.X - o.X).norm() < 1e-12);
      CHECK((a.Xs - o.Xs).norm() < 1e-7);
      CHECK((a.Xss - o.Xss).norm() < 1e-5);
      CHECK((a.Xt - o.Xt).norm() < 1e-12);
      CHECK((a.Xst - o.Xst).norm() < 1e-7);
      const auto fo = fundamental_data(o);
      const double lhs_o = fo.ebar * fo.G + fo.gbar * fo.E - 2 * fo.fbar * fo.F;
      const TrigPoly lhs = cyclic_lhs_poly(cj);
      CHECK(rel(lhs(t), lhs_o, lhs.scale()) < 1e-5);
      const TrigPoly rhs = cyclic_rhs_poly(cj);
      CHECK(rel(rhs(t), fo.W * fo.detX / std::pow(cj.R, 3), rhs.scale()) < 1e-6);
    }
  }
}

TEST_CASE("coefficient closed forms") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto cj = random_jet(rng);
    const TrigPoly lhs = cyclic_lhs_poly(cj, 6);
    const TrigPoly rhs = cyclic_rhs_poly(cj, 8);
    CHECK(lhs.max_abs_coeff_above(3) < 1e-12 * lhs.scale());
    CHECK(rhs.max_abs_coeff_above(4) < 1e-12 * rhs.scale());
    CHECK(rel(lhs.a(3), closed_form::a3(cj), 1e-12 * lhs.scale()) < 1e-8);
    CHECK(rel(lhs.b(3), closed_form::b3(cj), 1e-12 * lhs.scale()) < 1e-8);
    CHECK(rel(lhs.a(2), closed_form::a2(cj), 1e-12 * lhs.scale()) < 1e-8);
    CHECK(rel(lhs.b(2), closed_form::b2(cj), 1e-12 * lhs.scale()) < 1e-8);
    CHECK(rel(rhs.a(4), closed_form::a4p(cj), 1e-12 * rhs.scale()) < 1e-8);
    CHECK(rel(rhs.b(4), closed_form::b4p(cj), 1e-12 * rhs.scale()) < 1e-8);
  }
}

TEST_CASE("sphere case recovers lambda from the centre offset") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.5, 2.0);
  for (int i = 0; i < 20; ++i) {
    CyclicJet cj;
    cj.k = pos(rng), cj.kp = u(rng), cj.tau = u(rng), cj.taup = u(rng);
    cj.R = pos(rng), cj.Rp = u(rng), cj.Rpp = u(rng);
    cj.p = u(rng), cj.pp = u(rng), cj.ppp = u(rng);
    const auto res = lemma2_classify(cj, std::nullopt);
    REQUIRE(res.verdict == CyclicVerdict::SphereCase);
    CHECK(res.lambda * (cj.R * cj.R + cj.p * cj.p) == doctest::Approx(1.0).epsilon(1e-10));
    const auto wrong = lemma2_classify(cj, 2.0 * res.lambda);
    CHECK(wrong.verdict == CyclicVerdict::NotSelfSimilar);
  }
}

TEST_CASE("singular system leads to a contradiction") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.5, 2.0);
  for (int i = 0; i < 20; ++i) {
    CyclicJet cj = random_jet(rng);
    cj.qp = cj.tau * cj.r - cj.p * cj.k;      // beta = 0
    cj.rp = cj.R * cj.k - cj.tau * cj.q;      // gamma = R k
    REQUIRE(std::abs(closed_form::system_determinant(cj)) < 1e-12);
    const auto res = lemma2_classify(cj, std::nullopt);
    CHECK(res.verdict == CyclicVerdict::Contradiction);
    CHECK_FALSE(res.witness.empty());
  }
}

TEST_CASE("off-centre circles are not self-similar") {
  CyclicJet cj;
  cj.k = 1.0, cj.R = 1.0, cj.q = 0.3, cj.p = 0.2;
  CHECK(lemma2_classify(cj, std::nullopt).verdict == CyclicVerdict::NotSelfSimilar);
}

TEST_CASE("vanishing curvature needs the parallel analysis") {
  CyclicJet cj;
  cj.k = 0.0;
  CHECK_THROWS_AS(lemma2_classify(cj, std::nullopt), FrameDegenerateError);
  cj.R = -1.0;
  CHECK_THROWS_AS(cyclic_lhs_poly(cj), ArgumentError);
}

namespace {

ParallelCircleJet random_parallel(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.5, 2.0);
  ParallelCircleJet j;
  j.a = u(rng), j.ap = u(rng), j.app = u(rng);
  j.b = u(rng), j.bp = u(rng), j.bpp = u(rng);
  j.R = pos(rng), j.Rp = u(rng), j.Rpp = u(rng);
  j.s = u(rng);
  return j;
}

}  // namespace

TEST_CASE("parallel circle jet matches automatic differentiation") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 10; ++i) {
    const auto pj = random_parallel(rng);
    Patch patch = [&](const Dual2& s, const Dual2& t) -> DualVec3 {
      const Dual2 d = s - pj.s;
      const Dual2 a = pj.a + pj.ap * d + 0.5 * pj.app * d * d;
      const Dual2 b = pj.b + pj.bp * d + 0.5 * pj.bpp * d * d;
      const Dual2 R = pj.R + pj.Rp * d + 0.5 * pj.Rpp * d * d;
      return {a + R * cos(t), b + R * sin(t), s};
    };
    for (double t : {0.2, 1.7, 3.3}) {
      const auto a = parallel_circle_jet(pj, t);
      const auto o = eval_jet2(patch, pj.s, t);
      CHECK((a.X - o.X).norm() < 1e-14);
      CHECK((a.Xs - o.Xs).norm() < 1e-14);
      CHECK((a.Xss - o.Xss).norm() < 1e-14);
      CHECK((a.Xst - o.Xst).norm() < 1e-14);
      CHECK((a.Xtt - o.Xtt).norm() < 1e-14);
    }
  }
}

TEST_CASE("parallel circles: order-3 and order-2 structure") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    auto pj = random_parallel(rng);
    const auto an = parallel_circle_analysis(pj, 1.0);
    const double R3 = std::pow(pj.R, 3);
    const double A = pj.s * pj.ap - pj.a, B = pj.s * pj.bp - pj.b;
    const double ap = pj.ap, bp = pj.bp;
    const double c3 = R3 / 4 * ((ap * ap - bp * bp) * A - 2 * ap * bp * B);
    const double s3 = R3 / 4 * ((ap * ap - bp * bp) * B + 2 * ap * bp * A);
    CHECK(rel(an.rhs.a(3), c3, 1e-12 * an.rhs.scale()) < 1e-9);
    CHECK(rel(an.rhs.b(3), s3, 1e-12 * an.rhs.scale()) < 1e-9);
    CHECK(an.verdict == ParallelVerdict::NotSelfSimilar);

    // linear centres: order 3 vanishes, order 2 is proportional to (s R' - R)
    pj.a = ap * pj.s, pj.b = bp * pj.s, pj.app = 0.0, pj.bpp = 0.0;
    const auto lin = parallel_circle_analysis(pj, 1.0);
    CHECK(is_zero(TrigPoly({0, 0, 0, lin.rhs.a(3)}, {0, 0, lin.rhs.b(3)}, lin.rhs.scale()), 1e-13));
    const double k = pj.s * pj.Rp - pj.R;
    CHECK(rel(lin.rhs.a(2), R3 * k * (ap * ap - bp * bp) / 2, 1e-12 * lin.rhs.scale()) < 1e-9);
    CHECK(rel(lin.rhs.b(2), R3 * k * ap * bp, 1e-12 * lin.rhs.scale()) < 1e-9);
    CHECK(lin.verdict != ParallelVerdict::Revolution);
  }
}

TEST_CASE("parallel circles: surfaces of revolution") {
  ParallelCircleJet pj;
  pj.R = 1.3, pj.Rp = 0.2, pj.s = 0.4;
  CHECK(parallel_circle_analysis(pj, 1.0).verdict == ParallelVerdict::Revolution);
}
