#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "shrinker/curve.hpp"
#include "shrinker/cyclic.hpp"
#include "shrinker/ruled.hpp"
#include "shrinker/solutions.hpp"

namespace shrinker::io {

using nlohmann::json;

// Jets are flat objects whose keys are exactly the struct field names.
// Missing, unknown or non-numeric keys raise ArgumentError.
json to_json(const cyclic::CyclicJet& j);
json to_json(const cyclic::ParallelCircleJet& j);
json to_json(const ruled::RuledJet& j);

cyclic::CyclicJet cyclic_jet_from_json(const json& j);
cyclic::ParallelCircleJet parallel_jet_from_json(const json& j);
/// Accepts one object or an array of objects.
std::vector<ruled::RuledJet> ruled_jets_from_json(const json& j);

json read_json_file(const std::string& path);

enum class CurveKind { Planar, Profile };

/// Header `s,x,y` (planar) or `s,r,z` (profile), one row per sample.
void write_curve_csv(std::ostream& os, const SampledCurve& curve, CurveKind kind);

/// The curve is taken to be closed when the gap from the last point back to
/// the first is within twice the median spacing.
SampledCurve read_curve_csv(std::istream& is, CurveKind* kind = nullptr);
SampledCurve read_curve_csv_file(const std::string& path, CurveKind* kind = nullptr);

json to_json(const solutions::ShootResult& r);

}  // namespace shrinker::io
