#include "shrinker/io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <utility>

#include "shrinker/errors.hpp"

namespace shrinker::io {
namespace {

template <class T>
using FieldList = std::vector<std::pair<const char*, double T::*>>;

const FieldList<cyclic::CyclicJet>& cyclic_fields() {
  using J = cyclic::CyclicJet;
  static const FieldList<J> f{{"k", &J::k},     {"kp", &J::kp},   {"tau", &J::tau}, {"taup", &J::taup},
                              {"R", &J::R},     {"Rp", &J::Rp},   {"Rpp", &J::Rpp}, {"p", &J::p},
                              {"pp", &J::pp},   {"ppp", &J::ppp}, {"q", &J::q},     {"qp", &J::qp},
                              {"qpp", &J::qpp}, {"r", &J::r},     {"rp", &J::rp},   {"rpp", &J::rpp}};
  return f;
}

const FieldList<cyclic::ParallelCircleJet>& parallel_fields() {
  using J = cyclic::ParallelCircleJet;
  static const FieldList<J> f{{"a", &J::a},   {"ap", &J::ap},   {"app", &J::app}, {"b", &J::b},
                              {"bp", &J::bp}, {"bpp", &J::bpp}, {"R", &J::R},     {"Rp", &J::Rp},
                              {"Rpp", &J::Rpp}, {"s", &J::s}};
  return f;
}

const FieldList<ruled::RuledJet>& ruled_fields() {
  using J = ruled::RuledJet;
  static const FieldList<J> f{{"k", &J::k},   {"kp", &J::kp}, {"a", &J::a},   {"ap", &J::ap},
                              {"app", &J::app}, {"b", &J::b}, {"bp", &J::bp}, {"bpp", &J::bpp}};
  return f;
}

template <class T>
json dump(const T& v, const FieldList<T>& fields) {
  json j = json::object();
  for (const auto& [name, member] : fields) j[name] = v.*member;
  return j;
}

template <class T>
T load(const json& j, const FieldList<T>& fields, const char* what) {
  if (!j.is_object()) throw ArgumentError(std::string(what) + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    const bool known = std::any_of(fields.begin(), fields.end(), [&](const auto& f) { return key == f.first; });
    if (!known) throw ArgumentError(std::string(what) + ": unknown key '" + key + "'");
  }
  T v;
  for (const auto& [name, member] : fields) {
    const auto it = j.find(name);
    if (it == j.end()) throw ArgumentError(std::string(what) + ": missing key '" + name + "'");
    if (!it->is_number()) throw ArgumentError(std::string(what) + ": key '" + name + "' is not a number");
    v.*member = it->template get<double>();
  }
  return v;
}

}  // namespace

json to_json(const cyclic::CyclicJet& j) { return dump(j, cyclic_fields()); }
json to_json(const cyclic::ParallelCircleJet& j) { return dump(j, parallel_fields()); }
json to_json(const ruled::RuledJet& j) { return dump(j, ruled_fields()); }

cyclic::CyclicJet cyclic_jet_from_json(const json& j) { return load(j, cyclic_fields(), "cyclic jet"); }

cyclic::ParallelCircleJet parallel_jet_from_json(const json& j) {
  return load(j, parallel_fields(), "parallel circle jet");
}

std::vector<ruled::RuledJet> ruled_jets_from_json(const json& j) {
  std::vector<ruled::RuledJet> out;
  if (j.is_array()) {
    for (const auto& item : j) out.push_back(load(item, ruled_fields(), "ruled jet"));
    if (out.empty()) throw ArgumentError("ruled jet: empty array");
  } else {
    out.push_back(load(j, ruled_fields(), "ruled jet"));
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ArgumentError(path + ": " + e.what());
  }
}

void write_curve_csv(std::ostream& os, const SampledCurve& curve, CurveKind kind) {
  os << (kind == CurveKind::Planar ? "s,x,y\n" : "s,r,z\n");
  const auto old = os.precision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < curve.size(); ++i)
    os << curve.s[i] << ',' << curve.points[i].x() << ',' << curve.points[i].y() << '\n';
  os.precision(old);
}

SampledCurve read_curve_csv(std::istream& is, CurveKind* kind) {
  std::string line;
  if (!std::getline(is, line)) throw ArgumentError("curve CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  CurveKind k;
  if (line == "s,x,y")
    k = CurveKind::Planar;
  else if (line == "s,r,z")
    k = CurveKind::Profile;
  else
    throw ArgumentError("curve CSV: header must be 's,x,y' or 's,r,z'");

  SampledCurve c;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double s, x, y;
    if (!(ls >> s >> x >> y)) throw ArgumentError("curve CSV: malformed row " + std::to_string(row));
    std::string rest;
    if (ls >> rest) throw ArgumentError("curve CSV: extra columns in row " + std::to_string(row));
    c.s.push_back(s);
    c.points.emplace_back(x, y);
  }
  if (c.size() < 4) throw ArgumentError("curve CSV: need at least 4 rows");

  std::vector<double> gaps;
  for (std::size_t i = 1; i < c.size(); ++i) gaps.push_back((c.points[i] - c.points[i - 1]).norm());
  std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
  const double median = gaps[gaps.size() / 2];
  const double closing = (c.points.front() - c.points.back()).norm();
  c.closed = closing <= 2.0 * median;
  const double last_step = c.s.back() - c.s[c.size() - 2];
  c.length = c.s.back() - c.s.front() + (c.closed ? last_step : 0.0);
  c.arclength = true;
  if (kind) *kind = k;
  return c;
}

SampledCurve read_curve_csv_file(const std::string& path, CurveKind* kind) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path);
  return read_curve_csv(in, kind);
}

json to_json(const solutions::ShootResult& r) {
  return json{{"parameter", r.parameter},       {"closure_defect", r.closure_defect},
              {"rotation_index", r.rotation_index}, {"lobes", r.lobes},
              {"success", r.success},           {"lambda", r.lambda},
              {"status", r.status},             {"points", r.curve.size()},
              {"length", r.curve.length}};
}

}  // namespace shrinker::io
