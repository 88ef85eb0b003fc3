#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "shrinker/errors.hpp"
#include "shrinker/io.hpp"
#include "shrinker/solutions.hpp"

using namespace shrinker;
using namespace shrinker::solutions;

TEST_CASE("canonical parameters") {
  for (double R : {0.3, 1.0, 4.0}) {
    const double ls = canonical_shrinker(Sphere{R}).lambda;
    const double lc = canonical_shrinker(Cylinder{R}).lambda;
    CHECK(std::abs(ls / lc - 2.0) < 1e-12);
  }
}

TEST_CASE("uniform resampling and distances") {
  const auto c = circle_curve(1.0, 256);
  c.validate();
  const auto r = resample_uniform(c, 300);
  REQUIRE(r.size() == 300);
  for (const auto& p : r.points) CHECK(std::abs(p.norm() - 1.0) < 1e-8);
  CHECK(hausdorff_distance(c, circle_curve(1.1, 200)) == doctest::Approx(0.1).epsilon(1e-4));
  CHECK(hausdorff_distance(c, c) < 1e-12);

  auto bad = SampledCurve::from_points({{0, 0}, {1, 0}, {1, 1}, {0, 5}}, false);
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
}

TEST_CASE("round circle as a planar shrinker") {
  const auto c = abresch_langer_shoot(1.0, 1.0, 1e-8);
  CHECK(c.success);
  CHECK(c.closure_defect < 1e-8);
  CHECK(c.rotation_index == 1);
  for (const auto& p : c.curve.points) CHECK(std::abs(p.norm() - 1.0) < 1e-9);
  const auto c4 = abresch_langer_shoot(4.0, 2.0, 1e-8);
  CHECK(c4.success);
  CHECK(c4.curve.length == doctest::Approx(std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("non-closing shot is reported, not thrown") {
  const auto r = abresch_langer_shoot(1.0, 0.2, 1e-8);
  CHECK_FALSE(r.success);
  CHECK(r.lobes == 0);
  CHECK(r.closure_defect > 1e-3);
  CHECK_THROWS_AS(abresch_langer_shoot(-1.0, 1.0, 1e-8), ArgumentError);
}

TEST_CASE("closed curves with higher rotation index") {
  const auto found = abresch_langer_scan(1.0, 1.0, 3.0, 1e-6);
  REQUIRE_FALSE(found.empty());
  bool two_three = false;
  for (const auto& r : found) {
    CHECK(r.success);
    CHECK(r.rotation_index >= 2);
    CHECK(planar_shrinker_defect(r.curve, 1.0) < 1e-5);
    if (r.rotation_index == 2 && r.lobes == 3) two_three = true;
  }
  CHECK(two_three);

  // rescaling: lambda -> 4 lambda halves the curve and doubles k0
  const auto a = abresch_langer_close(1.0, 2, 3, 1.5, 2.5, 1e-8);
  const auto b = abresch_langer_close(4.0, 2, 3, 3.0, 5.0, 1e-8);
  CHECK(b.parameter == doctest::Approx(2.0 * a.parameter).epsilon(1e-12));
  CHECK(b.curve.length == doctest::Approx(0.5 * a.curve.length).epsilon(1e-10));
  CHECK_THROWS_AS(abresch_langer_close(1.0, 5, 7, 1.5, 2.5, 1e-8), BracketError);
}

TEST_CASE("self-shrinking torus profile") {
  const auto shot = angenent_profile_shoot(1.0, {1.5, 2.0}, 1e-8);
  REQUIRE(shot.success);
  CHECK(shot.closure_defect < 1e-8);
  CHECK(profile_shrinker_defect(shot.curve, 1.0) < 1e-7);
  const std::size_t n = shot.curve.size();
  double asym = 0.0, rmin = 1e9;
  for (std::size_t i = 1; i < n; ++i) {
    const auto& p = shot.curve.points[i];
    const auto& q = shot.curve.points[n - i];
    asym = std::max(asym, std::abs(p.x() - q.x()) + std::abs(p.y() + q.y()));
    rmin = std::min(rmin, p.x());
  }
  CHECK(asym < 1e-8);
  CHECK(rmin > 0.1);

  const auto surface = revolve_profile(shot.curve);
  ParamGrid g = surface.grid;
  g.ns = 128, g.nt = 64;
  CHECK(max_abs_residual(surface.patch, g, 1.0) < 1e-6);

  const auto small = angenent_profile_shoot(4.0, {0.75, 1.0}, 1e-8);
  REQUIRE(small.curve.size() == n);
  double diff = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    diff = std::max(diff, (small.curve.points[i] - 0.5 * shot.curve.points[i]).norm());
  CHECK(diff < 1e-6);

  CHECK_THROWS_AS(angenent_profile_shoot(1.0, {1.0, 1.2}, 1e-8), BracketError);
}

TEST_CASE("revolving simple profiles") {
  // vertical line r = 1 against the canonical cylinder
  std::vector<Vec2> line;
  for (int i = 0; i < 64; ++i) line.emplace_back(1.0, -1.0 + i / 31.5);
  const auto cyl_surface = revolve_profile(SampledCurve::from_points(line, false));
  const auto cyl = canonical_shrinker(Cylinder{1.0});
  for (double s : {-0.5, 0.1, 0.7})
    for (double t : {0.3, 2.0}) {
      const auto a = fundamental_data(eval_jet2(cyl_surface.patch, s + 1.0, t));
      const auto b = fundamental_data(eval_jet2(cyl.patch, s, t));
      CHECK(std::abs(a.E - b.E) < 1e-10);
      CHECK(std::abs(a.F - b.F) < 1e-10);
      CHECK(std::abs(a.G - b.G) < 1e-10);
      CHECK(std::abs(a.ebar - b.ebar) < 1e-10);
      CHECK(std::abs(a.fbar - b.fbar) < 1e-10);
      CHECK(std::abs(a.gbar - b.gbar) < 1e-10);
      CHECK(std::abs(std::abs(a.detX) - std::abs(b.detX)) < 1e-10);
    }

  // standard torus from the circle of radius 1 centred at (2, 0)
  std::vector<Vec2> circle;
  const int n = 2048;
  for (int i = 0; i < n; ++i) {
    const double phi = 2 * std::numbers::pi * i / n;
    circle.emplace_back(2.0 + std::cos(phi), std::sin(phi));
  }
  const auto prof = SampledCurve::from_points(circle, true);
  const auto torus = revolve_profile(prof);
  const double rate = 2 * std::numbers::pi / prof.length;  // dphi/ds
  for (double s : {0.1, 1.7, 4.4}) {
    const double phi = s * rate;
    const auto fd = fundamental_data(eval_jet2(torus.patch, s, 0.8));
    CHECK(std::abs(fd.E - rate * rate) < 1e-8);
    CHECK(std::abs(fd.G - std::pow(2.0 + std::cos(phi), 2)) < 1e-8);
    CHECK(std::abs(fd.F) < 1e-10);
  }

  std::vector<Vec2> touching{{0.0, 0.0}, {0.1, 0.1}, {0.2, 0.2}, {0.3, 0.3},
                             {0.4, 0.4}, {0.5, 0.5}, {0.6, 0.6}, {0.7, 0.7}};
  CHECK_THROWS_AS(revolve_profile(SampledCurve::from_points(touching, false)), DegenerateError);
}

TEST_CASE("curve-shortening flow") {
  const auto circle = circle_curve(1.0, 512);
  const auto flow = csf_evolve(circle, 1e-3, 0.1);
  REQUIRE(flow.completed);
  for (const auto& p : flow.curve.points) CHECK(std::abs(p.norm() - std::sqrt(0.8)) < 1e-4);
  CHECK(self_similarity_check(circle, flow.curve, 1.0, 0.1) < 1e-4);

  const auto same = csf_evolve(circle, 1e-3, 0.0);
  CHECK(same.curve.points == circle.points);

  const auto al = abresch_langer_close(1.0, 2, 3, 1.5, 2.5, 1e-8);
  const auto init = resample_uniform(al.curve, 1024);
  const auto evolved = csf_evolve(init, 1e-3, 0.05);
  REQUIRE(evolved.completed);
  CHECK(self_similarity_check(init, evolved.curve, 1.0, 0.05) < 1e-3);

  const auto square = square_curve(2.0, 1024);
  const auto rounded = csf_evolve(square, 1e-3, 0.05);
  CHECK(self_similarity_check(square, rounded.curve, 1.0, 0.05) > 1e-2);

  const auto tiny = csf_evolve(circle_curve(0.1, 64), 1e-3, 0.1);
  CHECK_FALSE(tiny.completed);
  CHECK(tiny.time_reached < 0.1);

  CHECK_THROWS_AS(self_similarity_check(circle, circle, 1.0, 0.5), ArgumentError);
  CHECK_THROWS_AS(csf_evolve(SampledCurve::from_points(square.points, false), 1e-3, 0.1), ArgumentError);
}

TEST_CASE("jet and curve serialization") {
  cyclic::CyclicJet cj;
  cj.k = 0.5, cj.R = 1.5, cj.qpp = -0.25;
  const auto back = io::cyclic_jet_from_json(io::to_json(cj));
  CHECK(back.qpp == -0.25);
  CHECK(back.R == 1.5);

  auto j = io::to_json(cj);
  j.erase("tau");
  CHECK_THROWS_AS(io::cyclic_jet_from_json(j), ArgumentError);
  j = io::to_json(cj);
  j["extra"] = 1.0;
  CHECK_THROWS_AS(io::cyclic_jet_from_json(j), ArgumentError);

  ruled::RuledJet rj;
  rj.a = 2.0;
  const auto arr = io::json::array({io::to_json(rj), io::to_json(rj)});
  CHECK(io::ruled_jets_from_json(arr).size() == 2);

  const auto circle = circle_curve(1.0, 64);
  std::stringstream ss;
  io::write_curve_csv(ss, circle, io::CurveKind::Planar);
  io::CurveKind kind;
  const auto read = io::read_curve_csv(ss, &kind);
  CHECK(kind == io::CurveKind::Planar);
  CHECK(read.closed);
  CHECK(read.size() == 64);
  CHECK((read.points[5] - circle.points[5]).norm() == 0.0);

  std::stringstream bad("s,u,v\n0,1,2\n");
  CHECK_THROWS_AS(io::read_curve_csv(bad), ArgumentError);
}
