#include "shrinker/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "shrinker/errors.hpp"

namespace shrinker::numerics {
namespace {

constexpr std::size_t kMinSteps = 10000;
constexpr std::size_t kMaxSteps = std::size_t{1} << 24;

bool all_finite(std::span<const double> y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

/// Scratch space for one RK4 step so the hot loop does not allocate.
class Rk4 {
 public:
  Rk4(const Field& field, std::size_t dim)
      : field_(field), k1_(dim), k2_(dim), k3_(dim), k4_(dim), tmp_(dim) {}

  void step(double t, std::span<const double> y, double h, std::span<double> out) {
    const std::size_t n = y.size();
    field_(t, y, k1_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * h * k1_[i];
    field_(t + 0.5 * h, tmp_, k2_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * h * k2_[i];
    field_(t + 0.5 * h, tmp_, k3_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + h * k3_[i];
    field_(t + h, tmp_, k4_);
    for (std::size_t i = 0; i < n; ++i)
      out[i] = y[i] + h / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
  }

 private:
  const Field& field_;
  State k1_, k2_, k3_, k4_, tmp_;
};

}  // namespace

TrigPoly fourier_extract(const std::function<double(double)>& f, int order,
                         std::size_t samples) {
  if (order < 0) throw ArgumentError("fourier_extract: negative order");
  if (samples == 0) samples = 4 * (static_cast<std::size_t>(order) + 2);
  if (samples < 2 * static_cast<std::size_t>(order) + 3)
    throw ArgumentError("fourier_extract: need at least 2n+3 samples");

  const double n = static_cast<double>(samples);
  std::vector<double> values(samples);
  double magnitude = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    values[i] = f(2.0 * std::numbers::pi * static_cast<double>(i) / n);
    magnitude = std::max(magnitude, std::abs(values[i]));
  }

  std::vector<double> a(order + 1, 0.0), b(order, 0.0);
  for (std::size_t i = 0; i < samples; ++i) a[0] += values[i];
  a[0] /= n;
  for (int j = 1; j <= order; ++j) {
    double ca = 0.0, cb = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
      // reduce j*i mod samples before scaling so the angle stays in [0, 2pi)
      const double angle =
          2.0 * std::numbers::pi * static_cast<double>((static_cast<std::size_t>(j) * i) % samples) / n;
      ca += values[i] * std::cos(angle);
      cb += values[i] * std::sin(angle);
    }
    a[j] = 2.0 * ca / n;
    b[j - 1] = 2.0 * cb / n;
  }
  return TrigPoly(std::move(a), std::move(b), magnitude);
}

Trajectory integrate_fixed(const Field& field, State y0, double t0, double t1,
                           std::size_t steps) {
  if (steps == 0) throw ArgumentError("integrate_fixed: zero steps");
  const double h = (t1 - t0) / static_cast<double>(steps);
  Trajectory out;
  out.times.reserve(steps + 1);
  out.states.reserve(steps + 1);
  out.times.push_back(t0);
  out.states.push_back(std::move(y0));
  Rk4 rk(field, out.states.front().size());
  State next(out.states.front().size());
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = t0 + static_cast<double>(i) * h;
    rk.step(t, out.states.back(), h, next);
    if (!all_finite(next))
      throw IntegrationError("integrate: non-finite state", out.times.back(), out.states.back());
    out.times.push_back(i + 1 == steps ? t1 : t0 + static_cast<double>(i + 1) * h);
    out.states.push_back(next);
  }
  return out;
}

Trajectory integrate_ivp(const Field& field, State y0, std::pair<double, double> span,
                         double tol) {
  if (!(tol > 0.0)) throw ArgumentError("integrate_ivp: tol must be positive");
  if (!(span.second > span.first)) throw ArgumentError("integrate_ivp: empty span");
  std::size_t steps = kMinSteps;
  Trajectory coarse = integrate_fixed(field, y0, span.first, span.second, steps);
  while (true) {
    Trajectory fine = integrate_fixed(field, y0, span.first, span.second, 2 * steps);
    double err = 0.0;
    for (std::size_t i = 0; i < y0.size(); ++i)
      err = std::max(err, std::abs(fine.back()[i] - coarse.back()[i]) / 15.0);
    if (err <= tol) return fine;
    steps *= 2;
    if (2 * steps > kMaxSteps)
      throw IntegrationError("integrate_ivp: step count cap reached before tolerance",
                             fine.times.back(), fine.back());
    coarse = std::move(fine);
  }
}

EventResult integrate_until(const Field& field, State y0, double t0,
                            const std::function<double(double, std::span<const double>)>& event,
                            const EventOptions& options) {
  if (!(options.step > 0.0)) throw ArgumentError("integrate_until: step must be positive");
  const std::size_t dim = y0.size();
  Rk4 rk(field, dim);
  EventResult result;
  State y = std::move(y0);
  State next(dim);
  double t = t0;
  double g_prev = event(t, y);
  bool first = true;
  if (options.keep_states) {
    result.trajectory.times.push_back(t);
    result.trajectory.states.push_back(y);
  }

  auto crosses = [&](double g0, double g1) {
    switch (options.direction) {
      case Crossing::Rising: return g0 < 0.0 && g1 >= 0.0;
      case Crossing::Falling: return g0 > 0.0 && g1 <= 0.0;
      case Crossing::Any: break;
    }
    return (g0 < 0.0 && g1 >= 0.0) || (g0 > 0.0 && g1 <= 0.0);
  };

  while (t < t0 + options.t_max) {
    const double h = options.step;
    rk.step(t, y, h, next);
    if (!all_finite(next)) throw IntegrationError("integrate_until: non-finite state", t, y);
    const double g_next = event(t + h, next);
    if (!first && crosses(g_prev, g_next)) {
      // Locate the crossing inside [t, t+h] by bisecting the sub-step length.
      double lo = 0.0, hi = h;
      State probe(dim);
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(t)); ++it) {
        const double mid = 0.5 * (lo + hi);
        rk.step(t, y, mid, probe);
        if (crosses(g_prev, event(t + mid, probe)))
          hi = mid;
        else
          lo = mid;
      }
      rk.step(t, y, hi, probe);
      result.status = EventResult::Status::Event;
      result.t = t + hi;
      result.y = probe;
      if (options.keep_states) {
        result.trajectory.times.push_back(result.t);
        result.trajectory.states.push_back(probe);
      }
      return result;
    }
    first = false;
    t += h;
    y.swap(next);
    g_prev = g_next;
    if (options.keep_states) {
      result.trajectory.times.push_back(t);
      result.trajectory.states.push_back(y);
    }
    if (options.abort && options.abort(t, y)) {
      result.status = EventResult::Status::Aborted;
      result.t = t;
      result.y = y;
      return result;
    }
  }
  result.status = EventResult::Status::Horizon;
  result.t = t;
  result.y = y;
  return result;
}

double bracket_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw ArgumentError("bracket_root: tol must be positive");
  if (lo > hi) std::swap(lo, hi);
  double flo = f(lo);
  if (flo == 0.0) return lo;
  const double fhi = f(hi);
  if (fhi == 0.0) return hi;
  if (!(flo * fhi < 0.0))
    throw BracketError("bracket_root: no sign change on [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  for (int it = 0; it < 400 && hi - lo >= tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace shrinker::numerics
