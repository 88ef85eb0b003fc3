#include "shrinker/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <numeric>

#include "shrinker/errors.hpp"
#include "shrinker/numerics.hpp"

namespace shrinker::solutions {
namespace {

using numerics::State;
constexpr double kPi = std::numbers::pi;
// arclength step in units of 1 / sqrt(lambda)
constexpr double kUnitStep = 1e-3;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ArgumentError(std::string(what) + " must be positive");
}

numerics::Field planar_field(double lambda) {
  return [lambda](double, std::span<const double> y, std::span<double> dy) {
    const double c = std::cos(y[2]), s = std::sin(y[2]);
    dy[0] = c;
    dy[1] = s;
    dy[2] = lambda * (y[0] * s - y[1] * c);
  };
}

numerics::Field profile_field(double lambda) {
  return [lambda](double, std::span<const double> y, std::span<double> dy) {
    const double c = std::cos(y[2]), s = std::sin(y[2]);
    dy[0] = c;
    dy[1] = s;
    dy[2] = 2.0 * lambda * (y[0] * s - y[1] * c) - s / y[0];
  };
}

struct Traced {
  SampledCurve curve;
  State end;
};

/// Fixed-step trace of length L, sampled uniformly in arclength; the final
/// state is returned separately and not stored as a point when closed.
Traced trace(const numerics::Field& field, const State& y0, double length, std::size_t steps,
             bool closed) {
  const auto traj = numerics::integrate_fixed(field, y0, 0.0, length, steps);
  Traced out;
  const std::size_t count = closed ? steps : steps + 1;
  out.curve.points.reserve(count);
  out.curve.s.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.curve.points.emplace_back(traj.states[i][0], traj.states[i][1]);
    out.curve.s.push_back(traj.times[i]);
  }
  out.curve.closed = closed;
  out.curve.arclength = true;
  out.curve.length = length;
  out.end = traj.back();
  return out;
}

std::size_t steps_for(double length, double lambda) {
  const double n = std::ceil(length * std::sqrt(lambda) / kUnitStep / 8.0) * 8.0;
  return static_cast<std::size_t>(std::max(64.0, n));
}

struct HalfLobe {
  double length = 0.0;
  double turning = 0.0;  // theta at the next curvature extremum minus pi/2
};

std::optional<HalfLobe> planar_half_lobe(double lambda, double k0) {
  const double unit = 1.0 / std::sqrt(lambda);
  numerics::EventOptions opt;
  opt.step = kUnitStep * unit;
  opt.t_max = 1e3 * unit;
  const double bound2 = 1e6 * unit * unit;
  opt.abort = [bound2](double, std::span<const double> y) {
    return y[0] * y[0] + y[1] * y[1] > bound2;
  };
  // <X, T> vanishes exactly at curvature extrema
  auto event = [](double, std::span<const double> y) {
    return y[0] * std::cos(y[2]) + y[1] * std::sin(y[2]);
  };
  const auto res = numerics::integrate_until(planar_field(lambda), {k0 / lambda, 0.0, kPi / 2}, 0.0,
                                             event, opt);
  if (res.status != numerics::EventResult::Status::Event) return std::nullopt;
  return HalfLobe{res.t, res.y[2] - kPi / 2};
}

ShootResult planar_closed(double lambda, double k0, double half_length, int m, int n, double tol) {
  const double length = 2.0 * n * half_length;
  const State y0{k0 / lambda, 0.0, kPi / 2};
  auto traced = trace(planar_field(lambda), y0, length, steps_for(length, lambda), true);
  ShootResult r;
  r.lambda = lambda;
  r.parameter = k0;
  r.closure_defect = std::hypot(traced.end[0] - y0[0], traced.end[1] - y0[1]) +
                     std::abs(traced.end[2] - y0[2] - 2.0 * kPi * m);
  r.rotation_index = m;
  r.lobes = n;
  r.curve = std::move(traced.curve);
  r.success = r.closure_defect < tol;
  r.status = r.success ? "closed" : "closure defect above tolerance";
  return r;
}

/// Fourth-order periodic first and second differences of a uniform sample.
void periodic_derivatives(const std::vector<double>& f, double h, std::vector<double>& d1,
                          std::vector<double>& d2) {
  const std::size_t n = f.size();
  d1.assign(n, 0.0);
  d2.assign(n, 0.0);
  auto at = [&](std::size_t i, long off) {
    return f[static_cast<std::size_t>(static_cast<long>(i + n) + off) % n];
  };
  for (std::size_t i = 0; i < n; ++i) {
    d1[i] = (-at(i, 2) + 8.0 * at(i, 1) - 8.0 * at(i, -1) + at(i, -2)) / (12.0 * h);
    d2[i] = (-at(i, 2) + 16.0 * at(i, 1) - 30.0 * f[i] + 16.0 * at(i, -1) - at(i, -2)) / (12.0 * h * h);
  }
}

struct Derivs {
  std::vector<double> x, y, x1, y1, x2, y2;
};

Derivs closed_derivatives(const SampledCurve& curve) {
  if (!curve.closed) throw ArgumentError("shrinker defect: curve must be closed");
  if (curve.size() < 8) throw ArgumentError("shrinker defect: need at least 8 points");
  const SampledCurve c = uniformly_spaced(curve) ? curve : resample_uniform(curve, curve.size());
  const double h = c.length / static_cast<double>(c.size());
  Derivs d;
  for (const auto& p : c.points) {
    d.x.push_back(p.x());
    d.y.push_back(p.y());
  }
  periodic_derivatives(d.x, h, d.x1, d.x2);
  periodic_derivatives(d.y, h, d.y1, d.y2);
  return d;
}

Vec3 unit_axis(const Vec3& axis) {
  const double n = axis.norm();
  if (!(n > 0.0)) throw ArgumentError("canonical_shrinker: cylinder axis must be nonzero");
  return axis / n;
}

}  // namespace

CanonicalShrinker canonical_shrinker(const CanonicalKind& kind) {
  CanonicalShrinker out;
  if (const auto* sp = std::get_if<Sphere>(&kind)) {
    const double R = sp->radius;
    require_positive(R, "sphere radius");
    out.name = "sphere";
    out.lambda = 1.0 / (R * R);
    out.chart = ParamGrid{0.0, kPi, 64, 0.0, 2.0 * kPi, 64};
    out.patch = [R](const Dual2& u, const Dual2& v) -> DualVec3 {
      const Dual2 su = sin(u);
      return {R * su * cos(v), R * su * sin(v), R * cos(u)};
    };
  } else if (const auto* cy = std::get_if<Cylinder>(&kind)) {
    const double r = cy->radius;
    require_positive(r, "cylinder radius");
    const Vec3 a = unit_axis(cy->axis);
    const Vec3 helper = std::abs(a.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    const Vec3 e1 = (helper - helper.dot(a) * a).normalized();
    const Vec3 e2 = a.cross(e1);
    out.name = "cylinder";
    out.lambda = 1.0 / (2.0 * r * r);
    out.chart = ParamGrid{-1.0, 1.0, 64, 0.0, 2.0 * kPi, 64};
    out.patch = [r, a, e1, e2](const Dual2& s, const Dual2& t) -> DualVec3 {
      const Dual2 c = r * cos(t), sn = r * sin(t);
      return {a.x() * s + e1.x() * c + e2.x() * sn, a.y() * s + e1.y() * c + e2.y() * sn,
              a.z() * s + e1.z() * c + e2.z() * sn};
    };
  } else {
    const auto& pl = std::get<Plane>(kind);
    const double h = pl.through_origin ? 0.0 : pl.offset;
    if (!pl.through_origin && !(std::abs(h) > 0.0))
      throw ArgumentError("canonical_shrinker: plane offset must be nonzero");
    out.name = "plane";
    out.lambda = 0.0;
    out.any_lambda = pl.through_origin;
    out.chart = ParamGrid{-1.0, 1.0, 64, -1.0, 1.0, 64};
    out.patch = [h](const Dual2& s, const Dual2& t) -> DualVec3 { return {s, t, Dual2(h)}; };
  }
  return out;
}

std::optional<double> abresch_langer_turning(double lambda, double k0) {
  require_positive(lambda, "lambda");
  require_positive(k0, "k0");
  const auto half = planar_half_lobe(lambda, k0);
  if (!half) return std::nullopt;
  return half->turning / kPi;
}

ShootResult abresch_langer_shoot(double lambda, double k0, double tol, int max_lobes) {
  require_positive(lambda, "lambda");
  require_positive(k0, "k0");
  require_positive(tol, "tol");
  if (max_lobes < 1) throw ArgumentError("abresch_langer_shoot: max_lobes must be >= 1");

  if (std::abs(k0 * k0 - lambda) <= 1e-12 * lambda) {
    // constant curvature: one lobe is the whole circle
    ShootResult r = planar_closed(lambda, k0, kPi / k0, 1, 1, tol);
    r.status = r.success ? "circle" : r.status;
    return r;
  }

  const auto half = planar_half_lobe(lambda, k0);
  if (!half) {
    ShootResult r;
    r.lambda = lambda;
    r.parameter = k0;
    r.closure_defect = std::numeric_limits<double>::infinity();
    r.status = "not closing: trajectory escapes without a curvature extremum";
    return r;
  }
  const double rho = half->turning / kPi;
  int best_m = 0, best_n = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= max_lobes; ++n) {
    const int m = static_cast<int>(std::lround(rho * n));
    const double est = 2.0 * kPi * n * std::abs(rho - static_cast<double>(m) / n);
    if (m > 0 && est < best) {
      best = est;
      best_m = m;
      best_n = n;
    }
  }
  if (best > 1e-3) {
    const double length = 2.0 * half->length;
    auto traced = trace(planar_field(lambda), {k0 / lambda, 0.0, kPi / 2}, length,
                        steps_for(length, lambda), false);
    ShootResult r;
    r.lambda = lambda;
    r.parameter = k0;
    r.closure_defect = best;
    r.curve = std::move(traced.curve);
    r.status = "not closing: turning per lobe " + std::to_string(rho) +
               " has no rational approximation with at most " + std::to_string(max_lobes) + " lobes";
    return r;
  }
  return planar_closed(lambda, k0, half->length, best_m, best_n, tol);
}

ShootResult abresch_langer_close(double lambda, int m, int n, double lo, double hi, double tol) {
  require_positive(lambda, "lambda");
  require_positive(tol, "tol");
  if (m < 1 || n < 1) throw ArgumentError("abresch_langer_close: m and n must be positive");
  if (!(lo > 0.0 && hi > lo)) throw ArgumentError("abresch_langer_close: need 0 < lo < hi");
  const double target = static_cast<double>(m) / n;
  auto f = [&](double k) {
    const auto rho = abresch_langer_turning(lambda, k);
    if (!rho) throw BracketError("abresch_langer_close: trajectory escapes at k0 = " + std::to_string(k));
    return *rho - target;
  };
  const double k = numerics::bracket_root(f, lo, hi, 4.0 * std::numeric_limits<double>::epsilon() * hi);
  const auto half = planar_half_lobe(lambda, k);
  return planar_closed(lambda, k, half->length, m, n, tol);
}

std::vector<ShootResult> abresch_langer_scan(double lambda, double lo, double hi, double tol,
                                             int max_lobes, int samples) {
  require_positive(lambda, "lambda");
  if (!(lo > 0.0 && hi > lo)) throw ArgumentError("abresch_langer_scan: need 0 < lo < hi");
  if (samples < 2) throw ArgumentError("abresch_langer_scan: need at least 2 samples");
  const double circle = std::sqrt(lambda);

  struct Node {
    double k;
    std::optional<double> rho;
  };
  std::vector<Node> nodes;
  for (int i = 0; i <= samples; ++i) {
    const double k = lo + (hi - lo) * i / samples;
    if (std::abs(k - circle) < 1e-6 * circle) continue;
    nodes.push_back({k, abresch_langer_turning(lambda, k)});
  }
  // refine until neighbouring turnings differ by less than 0.02 so that no
  // rational value is skipped
  for (int level = 0; level < 12; ++level) {
    std::vector<Node> refined{nodes.front()};
    bool changed = false;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      const Node& a = nodes[i - 1];
      const Node& b = nodes[i];
      if (a.rho && b.rho && std::abs(*a.rho - *b.rho) > 0.02) {
        const double k = 0.5 * (a.k + b.k);
        if (std::abs(k - circle) >= 1e-6 * circle) {
          refined.push_back({k, abresch_langer_turning(lambda, k)});
          changed = true;
        }
      }
      refined.push_back(b);
    }
    nodes = std::move(refined);
    if (!changed) break;
  }

  std::vector<ShootResult> found;
  std::vector<std::pair<int, int>> seen;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const Node& a = nodes[i - 1];
    const Node& b = nodes[i];
    if (!a.rho || !b.rho) continue;
    // skip the circle, where the turning has a removable singularity
    if ((a.k - circle) * (b.k - circle) < 0.0) continue;
    const double r0 = std::min(*a.rho, *b.rho), r1 = std::max(*a.rho, *b.rho);
    for (int n = 1; n <= max_lobes; ++n)
      for (int m = static_cast<int>(std::ceil(r0 * n)); m <= static_cast<int>(std::floor(r1 * n)); ++m) {
        if (m < 1 || std::gcd(m, n) != 1) continue;
        const double target = static_cast<double>(m) / n;
        if (target == r0 || target == r1) continue;
        if (std::find(seen.begin(), seen.end(), std::make_pair(m, n)) != seen.end()) continue;
        seen.emplace_back(m, n);
        found.push_back(abresch_langer_close(lambda, m, n, a.k, b.k, tol));
      }
  }
  return found;
}

std::optional<double> angenent_angle_defect(double lambda, double r0) {
  require_positive(lambda, "lambda");
  require_positive(r0, "r0");
  const double unit = 1.0 / std::sqrt(lambda);
  numerics::EventOptions opt;
  opt.step = kUnitStep * unit;
  opt.t_max = 1e2 * unit;
  opt.direction = numerics::Crossing::Falling;
  const double axis = 1e-6 * unit, bound2 = 1e6 * unit * unit;
  opt.abort = [axis, bound2](double, std::span<const double> y) {
    return y[0] < axis || y[0] * y[0] + y[1] * y[1] > bound2;
  };
  auto event = [](double, std::span<const double> y) { return y[1]; };
  try {
    const auto res = numerics::integrate_until(profile_field(lambda), {r0, 0.0, kPi / 2}, 0.0, event, opt);
    if (res.status != numerics::EventResult::Status::Event) return std::nullopt;
    return res.y[2] - 1.5 * kPi;
  } catch (const IntegrationError&) {
    return std::nullopt;
  }
}

ShootResult angenent_profile_shoot(double lambda, std::pair<double, double> bracket, double tol) {
  require_positive(lambda, "lambda");
  require_positive(tol, "tol");
  const auto [lo, hi] = bracket;
  if (!(lo > 0.0 && hi > lo)) throw ArgumentError("angenent_profile_shoot: need 0 < r_lo < r_hi");
  const auto flo = angenent_angle_defect(lambda, lo);
  const auto fhi = angenent_angle_defect(lambda, hi);
  if (!flo || !fhi || (*flo > 0.0) == (*fhi > 0.0))
    throw BracketError("angenent_profile_shoot: closure angle does not change sign on [" +
                       std::to_string(lo) + ", " + std::to_string(hi) + "]");
  auto f = [&](double r) {
    const auto d = angenent_angle_defect(lambda, r);
    if (!d) throw BracketError("angenent_profile_shoot: profile leaves the domain at r0 = " + std::to_string(r));
    return *d;
  };
  const double r0 = numerics::bracket_root(f, lo, hi, 4.0 * std::numeric_limits<double>::epsilon() * hi);

  // loop length: outer point -> inner point -> back to the outer point
  const double unit = 1.0 / std::sqrt(lambda);
  numerics::EventOptions opt;
  opt.step = kUnitStep * unit;
  opt.t_max = 1e2 * unit;
  auto event = [](double, std::span<const double> y) { return y[1]; };
  const State y0{r0, 0.0, kPi / 2};
  opt.direction = numerics::Crossing::Falling;
  const auto first = numerics::integrate_until(profile_field(lambda), y0, 0.0, event, opt);
  opt.direction = numerics::Crossing::Rising;
  const auto second = numerics::integrate_until(profile_field(lambda), first.y, first.t, event, opt);
  if (second.status != numerics::EventResult::Status::Event)
    throw IntegrationError("angenent_profile_shoot: profile does not return to z = 0", second.t, second.y);
  const double length = second.t;

  auto traced = trace(profile_field(lambda), y0, length, steps_for(length, lambda), true);
  ShootResult r;
  r.lambda = lambda;
  r.parameter = r0;
  r.closure_defect = std::hypot(traced.end[0] - y0[0], traced.end[1] - y0[1]) +
                     std::abs(traced.end[2] - y0[2] - 2.0 * kPi);
  r.rotation_index = 1;
  r.lobes = 1;
  r.curve = std::move(traced.curve);
  r.success = r.closure_defect < tol;
  r.status = r.success ? "closed" : "closure defect above tolerance";
  return r;
}

RevolvedSurface revolve_profile(const SampledCurve& profile) {
  if (profile.size() < 8) throw ArgumentError("revolve_profile: need at least 8 points");
  for (const auto& p : profile.points)
    if (!(p.x() > 0.0)) throw DegenerateError("revolve_profile: profile touches the axis");
  const SampledCurve c = uniformly_spaced(profile) ? profile : resample_uniform(profile, profile.size());
  const std::size_t n = c.size();
  const double h = c.closed ? c.length / static_cast<double>(n) : (c.s.back() - c.s.front()) / static_cast<double>(n - 1);
  std::vector<double> rv(n), zv(n);
  for (std::size_t i = 0; i < n; ++i) {
    rv[i] = c.points[i].x();
    zv[i] = c.points[i].y();
  }
  auto r = std::make_shared<UniformSpline>(rv, c.s.front(), h, c.closed);
  auto z = std::make_shared<UniformSpline>(zv, c.s.front(), h, c.closed);

  RevolvedSurface out;
  out.patch = [r, z](const Dual2& s, const Dual2& t) -> DualVec3 {
    const double u = s.value;
    const Dual2 R = chain(s, r->value(u), r->prime(u), r->double_prime(u));
    const Dual2 Z = chain(s, z->value(u), z->prime(u), z->double_prime(u));
    return {R * cos(t), R * sin(t), Z};
  };
  const double s1 = c.closed ? c.s.front() + c.length : c.s.back();
  out.grid = ParamGrid{c.s.front(), s1, 128, 0.0, 2.0 * kPi, 64};
  return out;
}

double planar_shrinker_defect(const SampledCurve& curve, double lambda) {
  const Derivs d = closed_derivatives(curve);
  double worst = 0.0;
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    const double speed = std::hypot(d.x1[i], d.y1[i]);
    const double kappa = (d.x1[i] * d.y2[i] - d.y1[i] * d.x2[i]) / (speed * speed * speed);
    const double rhs = lambda * (d.x[i] * d.y1[i] - d.y[i] * d.x1[i]) / speed;
    worst = std::max(worst, std::abs(kappa - rhs));
  }
  return worst;
}

double profile_shrinker_defect(const SampledCurve& profile, double lambda) {
  const Derivs d = closed_derivatives(profile);
  double worst = 0.0;
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    const double speed = std::hypot(d.x1[i], d.y1[i]);
    const double kappa = (d.x1[i] * d.y2[i] - d.y1[i] * d.x2[i]) / (speed * speed * speed);
    const double rhs = (2.0 * lambda * (d.x[i] * d.y1[i] - d.y[i] * d.x1[i]) - d.y1[i] / d.x[i]) / speed;
    worst = std::max(worst, std::abs(kappa - rhs));
  }
  return worst;
}

FlowResult csf_evolve(const SampledCurve& curve, double dt, double T) {
  if (!curve.closed) throw ArgumentError("csf_evolve: curve must be closed");
  if (curve.size() < 8) throw ArgumentError("csf_evolve: need at least 8 points");
  if (!(dt > 0.0)) throw ArgumentError("csf_evolve: dt must be positive");
  if (!(T >= 0.0) || !std::isfinite(T)) throw ArgumentError("csf_evolve: T must be finite and nonnegative");

  FlowResult out;
  out.curve = curve;
  if (T == 0.0) {
    out.completed = true;
    return out;
  }

  const std::size_t n = curve.size();
  std::vector<Vec2> P = curve.points;
  std::vector<Vec2> next(n);
  std::vector<double> h(n);
  double t = 0.0;
  std::size_t steps = 0;
  while (t < T) {
    if (steps % 20 == 0) P = resample_uniform(SampledCurve::from_points(std::move(P), true), n).points;
    double hmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      h[i] = (P[(i + 1) % n] - P[i]).norm();
      hmin = std::min(hmin, h[i]);
    }
    if (!(hmin > 0.0)) {
      out.stop_reason = "collapsed segment";
      break;
    }
    const double step = std::min({dt, 0.25 * hmin * hmin, T - t});
    bool blowup = false;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t ip = (i + 1) % n, im = (i + n - 1) % n;
      const Vec2 fwd = (P[ip] - P[i]) / h[i];
      const Vec2 bwd = (P[i] - P[im]) / h[im];
      const double turn = std::atan2(bwd.x() * fwd.y() - bwd.y() * fwd.x(), bwd.dot(fwd));
      if (std::abs(turn) > 2.5) blowup = true;
      next[i] = P[i] + step * (2.0 / (h[im] + h[i])) * (fwd - bwd);
    }
    if (blowup) {
      out.stop_reason = "curvature blow-up";
      break;
    }
    std::swap(P, next);
    t += step;
    ++steps;
  }
  out.time_reached = t;
  out.steps = steps;
  out.completed = out.stop_reason.empty();
  out.curve = SampledCurve::from_points(std::move(P), true);
  return out;
}

double self_similarity_check(const SampledCurve& initial, const SampledCurve& evolved, double lambda,
                             double T) {
  if (!(T >= 0.0) || !std::isfinite(T)) throw ArgumentError("self_similarity_check: T must be nonnegative");
  const double factor = 1.0 - 2.0 * lambda * T;
  if (!(factor > 0.0)) throw ArgumentError("self_similarity_check: T must be below 1/(2 lambda)");
  return hausdorff_distance(evolved, scaled(initial, std::sqrt(factor)), 2048);
}

}  // namespace shrinker::solutions
