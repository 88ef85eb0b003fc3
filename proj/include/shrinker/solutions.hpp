#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "shrinker/curve.hpp"
#include "shrinker/dual2.hpp"
#include "shrinker/geometry.hpp"

namespace shrinker::solutions {

struct Sphere {
  double radius = 1.0;
};
struct Cylinder {
  double radius = 1.0;
  Vec3 axis = Vec3::UnitZ();
};
struct Plane {
  bool through_origin = true;
  double offset = 1.0;  ///< distance from the origin when not through it
};
using CanonicalKind = std::variant<Sphere, Cylinder, Plane>;

struct CanonicalShrinker {
  std::string name;
  Patch patch;
  ParamGrid chart;      ///< parameter domain of the chart
  double lambda = 0.0;  ///< unique self-similarity parameter (0 for planes)
  bool any_lambda = false;  ///< plane through the origin: residual vanishes for every lambda
};

/// Sphere(R): lambda = 1/R^2. Cylinder(r): lambda = 1/(2 r^2). Plane: minimal.
CanonicalShrinker canonical_shrinker(const CanonicalKind& kind);

struct ShootResult {
  SampledCurve curve;
  double parameter = 0.0;  ///< k0 for planar curves, r0 for profiles
  double closure_defect = 0.0;
  int rotation_index = 0;
  int lobes = 0;  ///< curvature periods in the closed curve (0 if not closing)
  bool success = false;
  double lambda = 0.0;
  std::string status;
};

/// Fraction of a full turn swept by the tangent over one lobe of the planar
/// shrinker started at (k0/lambda, 0) with vertical tangent, i.e. twice the
/// turning between consecutive curvature extrema over 2 pi. Empty when the
/// trajectory escapes or no extremum is reached.
std::optional<double> abresch_langer_turning(double lambda, double k0);

/// Integrates the planar shrinker curve kappa = lambda <X, n> from the symmetric
/// initial condition with curvature k0, picks the closest rational turning m/n
/// (n <= max_lobes) and measures the closure defect of the resulting n-lobe
/// curve. The round circle (k0^2 = lambda) is one lobe with rotation index 1.
ShootResult abresch_langer_shoot(double lambda, double k0, double tol, int max_lobes = 24);

/// Root-finds k0 in [lo, hi] so that the curve closes after n lobes with
/// rotation index m. Throws BracketError when m/n is not bracketed.
ShootResult abresch_langer_close(double lambda, int m, int n, double lo, double hi, double tol);

/// Scans k0 over [lo, hi], refining until the turning function is resolved,
/// and returns every closed curve with at most max_lobes lobes.
std::vector<ShootResult> abresch_langer_scan(double lambda, double lo, double hi, double tol,
                                             int max_lobes = 8, int samples = 64);

/// Turning defect theta - 3 pi / 2 at the first downward crossing of z = 0 for
/// the profile shot from (r0, 0) with vertical tangent. Empty when the
/// trajectory reaches the axis or escapes.
std::optional<double> angenent_angle_defect(double lambda, double r0);

/// Closed, uniformly sampled profile of the self-shrinking torus of revolution.
/// Throws BracketError when the angle defect does not change sign on the bracket.
ShootResult angenent_profile_shoot(double lambda, std::pair<double, double> bracket, double tol);

struct RevolvedSurface {
  Patch patch;
  ParamGrid grid;  ///< full profile parameter range by [0, 2 pi)
};

/// X(s, t) = (r(s) cos t, r(s) sin t, z(s)) with cubic-spline profile jets
/// (periodic for closed profiles). Throws DegenerateError if r <= 0 anywhere.
RevolvedSurface revolve_profile(const SampledCurve& profile);

/// Max over samples of |kappa - lambda <X, n>| using periodic fourth-order
/// differences on a uniformly resampled copy of a closed planar curve.
double planar_shrinker_defect(const SampledCurve& curve, double lambda);

/// Same for a profile curve of a surface of revolution (r, z).
double profile_shrinker_defect(const SampledCurve& profile, double lambda);

struct FlowResult {
  SampledCurve curve;
  double time_reached = 0.0;
  bool completed = false;
  std::size_t steps = 0;
  std::string stop_reason;
};

/// Curve-shortening flow by explicit steps of size min(dt, 0.25 h_min^2),
/// remeshing to uniform spacing every 20 steps. Stops early when the turning
/// between neighbouring segments exceeds 2.5 rad.
FlowResult csf_evolve(const SampledCurve& curve, double dt, double T);

/// Hausdorff distance between the evolved curve and sqrt(1 - 2 lambda T) initial.
double self_similarity_check(const SampledCurve& initial, const SampledCurve& evolved, double lambda,
                             double T);

}  // namespace shrinker::solutions
