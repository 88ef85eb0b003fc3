#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace shrinker {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition on an argument violated (bad index, nonpositive radius, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Elementary function evaluated outside its domain (sqrt of a negative, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Surface patch is not an immersion at the evaluation point (W ~ 0).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Center curve curvature too small for a Frenet frame.
class FrameDegenerateError : public Error {
 public:
  using Error::Error;
};

/// Root finding was asked to work on an interval without a sign change.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// fit_lambda found no grid point with a usable support value.
class IndeterminateError : public Error {
 public:
  using Error::Error;
};

/// ODE integration could not continue. Carries the last finite state.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double last_time,
                   std::vector<double> last_state)
      : Error(what), last_time_(last_time), last_state_(std::move(last_state)) {}

  double last_time() const noexcept { return last_time_; }
  const std::vector<double>& last_state() const noexcept { return last_state_; }

 private:
  double last_time_;
  std::vector<double> last_state_;
};

}  // namespace shrinker
