#include <doctest.h>

#include <cmath>
#include <numbers>

#include "shrinker/dual2.hpp"
#include "shrinker/errors.hpp"
#include "shrinker/numerics.hpp"

using namespace shrinker;
namespace nm = shrinker::numerics;

namespace {

template <class F>
void check_against_differences(F f, double s, double t) {
  const Dual2 v = f(Dual2::seed_s(s), Dual2::seed_t(t));
  auto g = [&](double a, double b) { return f(Dual2(a), Dual2(b)).value; };
  const double h = 1e-4, H = 1e-3;
  CHECK(v.value == doctest::Approx(g(s, t)).epsilon(1e-14));
  CHECK(v.d_s == doctest::Approx((g(s + h, t) - g(s - h, t)) / (2 * h)).epsilon(1e-7));
  CHECK(v.d_t == doctest::Approx((g(s, t + h) - g(s, t - h)) / (2 * h)).epsilon(1e-7));
  CHECK(v.d_ss == doctest::Approx((g(s + H, t) - 2 * g(s, t) + g(s - H, t)) / (H * H)).epsilon(1e-5));
  CHECK(v.d_tt == doctest::Approx((g(s, t + H) - 2 * g(s, t) + g(s, t - H)) / (H * H)).epsilon(1e-5));
  const double mixed = (g(s + H, t + H) - g(s + H, t - H) - g(s - H, t + H) + g(s - H, t - H)) / (4 * H * H);
  CHECK(v.d_st == doctest::Approx(mixed).epsilon(1e-5));
}

}  // namespace

TEST_CASE("dual jets agree with finite differences") {
  check_against_differences(
      [](const Dual2& s, const Dual2& t) {
        return sin(s * t) + exp(s) / (1.0 + t * t) + sqrt(2.0 + s) + log(3.0 + t) + pow(1.5 + s, 2.5);
      },
      0.3, -0.7);
  check_against_differences([](const Dual2& s, const Dual2& t) { return cos(s - t) * (s / (t + 4.0)); }, -1.1,
                            0.4);
}

TEST_CASE("dual domain errors") {
  const Dual2 zero = Dual2::seed_s(0.0);
  CHECK_THROWS_AS(log(zero), DomainError);
  CHECK_THROWS_AS(sqrt(Dual2::seed_t(-1.0)), DomainError);
  CHECK_THROWS_AS(Dual2(1.0) / zero, DomainError);
  CHECK_NOTHROW(sqrt(Dual2(0.0)));
}

TEST_CASE("fourier extraction is exact on trigonometric polynomials") {
  auto f = [](double t) { return 1.0 + 2.0 * std::cos(t) - 3.0 * std::sin(2 * t) + 0.5 * std::cos(3 * t); };
  const TrigPoly p = nm::fourier_extract(f, 3);
  CHECK(p.a(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p.a(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(p.b(2) == doctest::Approx(-3.0).epsilon(1e-14));
  CHECK(p.a(3) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(p.b(1)) < 1e-14);
  CHECK(p.scale() == doctest::Approx(6.5).epsilon(0.5));
  CHECK_THROWS_AS(nm::fourier_extract(f, -1), ArgumentError);
  CHECK_THROWS_AS(nm::fourier_extract(f, 3, 8), ArgumentError);
}

TEST_CASE("fixed-step integration of exponential growth") {
  nm::Field f = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0]; };
  const auto traj = nm::integrate_fixed(f, {1.0}, 0.0, 1.0, 1000);
  CHECK(traj.size() == 1001);
  CHECK(traj.back()[0] == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
}

TEST_CASE("tighter tolerance gives a smaller endpoint error") {
  nm::Field f = [](double, std::span<const double> y, std::span<double> dy) {
    dy[0] = y[1];
    dy[1] = -y[0];
  };
  double previous = 1.0;
  for (double tol : {1e-3, 1e-5, 1e-7}) {
    const auto traj = nm::integrate_ivp(f, {1.0, 0.0}, {0.0, 2000.0}, tol);
    const double err = std::abs(traj.back()[0] - std::cos(2000.0));
    CHECK(err < previous);
    CHECK(err < 10 * tol);
    previous = err;
  }
  // halving never makes it worse
  previous = 1.0;
  for (double tol = 1e-4; tol > 1e-6; tol /= 2) {
    const auto traj = nm::integrate_ivp(f, {1.0, 0.0}, {0.0, 2000.0}, tol);
    const double err = std::abs(traj.back()[0] - std::cos(2000.0));
    CHECK(err <= previous);
    previous = err;
  }
}

TEST_CASE("integration failure carries the last good state") {
  nm::Field f = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0] * y[0]; };
  try {
    nm::integrate_fixed(f, {1.0}, 0.0, 2.0, 200);
    FAIL("expected an integration error");
  } catch (const IntegrationError& e) {
    CHECK(e.last_time() < 1.05);
    CHECK(e.last_state().size() == 1);
  }
}

TEST_CASE("event location") {
  nm::Field f = [](double, std::span<const double> y, std::span<double> dy) {
    dy[0] = y[1];
    dy[1] = -y[0];
  };
  nm::EventOptions opt;
  opt.step = 1e-2;
  opt.direction = nm::Crossing::Falling;
  auto ev = [](double, std::span<const double> y) { return y[0]; };
  const auto res = nm::integrate_until(f, {1.0, 0.0}, 0.0, ev, opt);
  REQUIRE(res.status == nm::EventResult::Status::Event);
  CHECK(res.t == doctest::Approx(std::numbers::pi / 2).epsilon(1e-10));

  opt.direction = nm::Crossing::Rising;
  const auto rising = nm::integrate_until(f, {1.0, 0.0}, 0.0, ev, opt);
  CHECK(rising.t == doctest::Approx(1.5 * std::numbers::pi).epsilon(1e-10));

  opt.t_max = 1.0;
  CHECK(nm::integrate_until(f, {1.0, 0.0}, 0.0, ev, opt).status == nm::EventResult::Status::Horizon);

  opt.t_max = 10.0;
  opt.abort = [](double t, std::span<const double>) { return t > 0.5; };
  CHECK(nm::integrate_until(f, {1.0, 0.0}, 0.0, ev, opt).status == nm::EventResult::Status::Aborted);
}

TEST_CASE("bisection") {
  auto c = [](double x) { return std::cos(x); };
  CHECK(nm::bracket_root(c, 0.0, 2.0, 1e-14) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-13));
  CHECK_THROWS_AS(nm::bracket_root(c, 0.0, 1.0, 1e-12), BracketError);
}
