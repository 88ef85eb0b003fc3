#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "shrinker/trig_poly.hpp"

namespace shrinker::numerics {

/// Samples f uniformly on [0, 2pi) and returns its trigonometric
/// coefficients up to `order`: a_0 is the sample mean, a_j and b_j the
/// discrete cosine/sine sums scaled by 2/N. With samples == 0 the default
/// N = 4 (order + 2) is used. Exact to rounding when f is a trigonometric
/// polynomial of order <= `order` (and samples >= 2 order + 3).
TrigPoly fourier_extract(const std::function<double(double)>& f, int order,
                         std::size_t samples = 0);

using State = std::vector<double>;

/// dy/dt = field(t, y), written into dydt.
using Field = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;

  std::size_t size() const { return times.size(); }
  const State& back() const { return states.back(); }
};

/// Classical RK4 with `steps` equal steps from t0 to t1. Every state is kept.
Trajectory integrate_fixed(const Field& field, State y0, double t0, double t1,
                           std::size_t steps);

/// Fixed-step RK4 over span with at least 1e4 steps, doubling the step count
/// until the Richardson estimate |y_2n - y_n| / 15 of the endpoint error is
/// below tol. Throws IntegrationError on non-finite states or when the step
/// count cap is reached.
Trajectory integrate_ivp(const Field& field, State y0, std::pair<double, double> span,
                         double tol);

enum class Crossing { Any, Rising, Falling };

struct EventOptions {
  double step = 1e-3;
  double t_max = 1e3;
  Crossing direction = Crossing::Any;
  /// Optional abort predicate checked after each step (e.g. escape to infinity).
  std::function<bool(double t, std::span<const double> y)> abort;
  bool keep_states = false;
};

struct EventResult {
  enum class Status { Event, Aborted, Horizon } status = Status::Horizon;
  double t = 0.0;
  State y;
  Trajectory trajectory;  // filled only when keep_states
};

/// Fixed-step RK4 from (t0, y0) until event(t, y) changes sign. The crossing
/// is located by bisection on the length of the final RK4 sub-step, so the
/// returned state is as accurate as the integrator itself. The starting point
/// is never reported as an event.
EventResult integrate_until(const Field& field, State y0, double t0,
                            const std::function<double(double, std::span<const double>)>& event,
                            const EventOptions& options);

/// Bisection on [lo, hi]; requires f(lo) f(hi) <= 0. Returns the midpoint of
/// the final bracket (width < tol), or an endpoint/midpoint with f == 0 exactly,
/// preferring lo.
double bracket_root(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace shrinker::numerics
