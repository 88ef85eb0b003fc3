#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <optional>
#include <random>
#include <sstream>

#include "shrinker/curve.hpp"
#include "shrinker/cyclic.hpp"
#include "shrinker/errors.hpp"
#include "shrinker/geometry.hpp"
#include "shrinker/io.hpp"
#include "shrinker/ruled.hpp"
#include "shrinker/solutions.hpp"

namespace shrinker::cli {
namespace {

using json = nlohmann::json;

struct Options {
  // global
  double tol = std::nan("");
  std::uint64_t seed = 42;
  std::string out;
  std::string format;

  // shared
  std::string jet;
  double lambda = std::nan("");
  double radius = 1.0;
  int grid = 64;

  // residual
  std::string surface;
  std::string profile;
  std::vector<double> axis{0.0, 0.0, 1.0};
  double offset = 0.0;

  // coeffs
  int order = 4;

  // classify ruled
  bool parallel = false;

  // construct
  std::vector<double> bracket;
  std::optional<double> k0;
  int rotation = 0;
  int lobes = 0;
  std::vector<double> range;
  std::vector<double> scan;
  int max_lobes = 8;

  // flowcheck
  std::string curve;
  std::string shape = "circle";
  double side = 2.0;
  double T = 0.05;
  double dt = 1e-3;
  int points = 1024;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  const std::vector<std::string>& args;
  Options& opt;
  std::ostream& out;
  std::ostream& err;
};

double tol_or(const Options& o, double fallback) { return std::isnan(o.tol) ? fallback : o.tol; }

json base_report(const Context& c) {
  return json{{"command", c.args},      {"inputs", json::object()}, {"outputs", json::object()},
              {"comparisons", json::array()}, {"pass", true},           {"tolerances", json::object()}};
}

json compare(const std::string& name, double oracle, double closed_form, double scale, double tol) {
  const double delta = std::abs(oracle - closed_form);
  const double rel = delta / std::max({std::abs(oracle), std::abs(closed_form), 1e-14 * scale, 1e-300});
  return json{{"name", name},          {"oracle", oracle},       {"closed_form", closed_form},
              {"delta", delta},        {"relative_delta", rel},  {"pass", rel <= tol}};
}

bool all_pass(const json& comparisons) {
  return std::all_of(comparisons.begin(), comparisons.end(), [](const json& c) { return c["pass"].get<bool>(); });
}

/// Report to --out when given, otherwise to the output stream.
void emit_text(const Context& c, const std::string& text) {
  if (c.opt.out.empty()) {
    c.out << text;
    return;
  }
  std::ofstream f(c.opt.out);
  if (!f) throw UsageError("cannot write " + c.opt.out);
  f << text;
}

int finish(const Context& c, json& report) {
  emit_text(c, report.dump(2) + "\n");
  return report["pass"].get<bool>() ? 0 : 1;
}

void require_json_format(const Context& c) {
  if (!c.opt.format.empty() && c.opt.format != "json")
    throw UsageError("this command only supports --format json");
}

std::string curve_csv(const SampledCurve& curve, io::CurveKind kind) {
  std::ostringstream os;
  io::write_curve_csv(os, curve, kind);
  return os.str();
}

/// Curve commands: the curve goes to --out (or to stdout with --format csv),
/// the report to stdout.
int finish_with_curve(const Context& c, json& report, const SampledCurve& curve, io::CurveKind kind) {
  const std::string csv = curve_csv(curve, kind);
  if (!c.opt.out.empty()) {
    std::ofstream f(c.opt.out);
    if (!f) throw UsageError("cannot write " + c.opt.out);
    f << csv;
    report["outputs"]["curve_file"] = c.opt.out;
  }
  if (c.opt.format == "csv") {
    if (c.opt.out.empty()) c.out << csv;
  } else {
    c.out << report.dump(2) << "\n";
  }
  return report["pass"].get<bool>() ? 0 : 1;
}

// Random jets for runs without --jet; fixed by --seed.
cyclic::CyclicJet random_cyclic(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.5, 2.0), kk(0.2, 2.0);
  cyclic::CyclicJet j;
  j.k = kk(rng), j.kp = u(rng), j.tau = u(rng), j.taup = u(rng);
  j.R = pos(rng), j.Rp = u(rng), j.Rpp = u(rng);
  j.p = u(rng), j.pp = u(rng), j.ppp = u(rng);
  j.q = u(rng), j.qp = u(rng), j.qpp = u(rng);
  j.r = u(rng), j.rp = u(rng), j.rpp = u(rng);
  return j;
}

ruled::RuledJet random_ruled(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), kk(0.2, 2.0);
  ruled::RuledJet j;
  j.k = kk(rng), j.kp = u(rng);
  j.a = u(rng), j.ap = u(rng), j.app = u(rng);
  j.b = u(rng), j.bp = u(rng), j.bpp = u(rng);
  return j;
}

cyclic::ParallelCircleJet random_parallel(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.5, 2.0);
  cyclic::ParallelCircleJet j;
  j.a = u(rng), j.ap = u(rng), j.app = u(rng);
  j.b = u(rng), j.bp = u(rng), j.bpp = u(rng);
  j.R = pos(rng), j.Rp = u(rng), j.Rpp = u(rng);
  j.s = u(rng);
  return j;
}

json poly_json(const TrigPoly& p) {
  json a = json::array(), b = json::array();
  for (int j = 0; j <= p.order(); ++j) {
    a.push_back(p.a(j));
    b.push_back(j == 0 ? 0.0 : p.b(j));
  }
  return json{{"a", a}, {"b", b}, {"scale", p.scale()}};
}

json witness_json(const std::vector<cyclic::Witness>& w) {
  json arr = json::array();
  for (const auto& x : w) arr.push_back(json{{"name", x.name}, {"value", x.value}});
  return arr;
}

// ---------------------------------------------------------------- residual

int run_residual(const Context& c) {
  require_json_format(c);
  const Options& o = c.opt;
  json r = base_report(c);
  r["inputs"] = json{{"surface", o.surface}, {"grid", o.grid}};
  if (o.grid < 1) throw UsageError("--grid must be positive");
  const auto n = static_cast<std::size_t>(o.grid);

  Patch patch;
  ParamGrid grid;
  double lambda = o.lambda;
  double tol = tol_or(o, 1e-9);
  std::optional<double> c_scale;  // lambda * c_scale is the measured constant

  if (o.surface == "sphere" || o.surface == "cylinder" || o.surface == "plane") {
    solutions::CanonicalKind kind;
    if (o.surface == "sphere") {
      kind = solutions::Sphere{o.radius};
      c_scale = o.radius * o.radius;
    } else if (o.surface == "cylinder") {
      if (o.axis.size() != 3) throw UsageError("--axis takes three numbers");
      kind = solutions::Cylinder{o.radius, Vec3(o.axis[0], o.axis[1], o.axis[2])};
      c_scale = 2.0 * o.radius * o.radius;
    } else {
      kind = solutions::Plane{o.offset == 0.0, o.offset};
    }
    if (o.surface != "plane") r["inputs"]["radius"] = o.radius;
    const auto cs = solutions::canonical_shrinker(kind);
    patch = cs.patch;
    grid = cs.chart;
    if (std::isnan(lambda)) lambda = cs.lambda;
    r["outputs"]["canonical_lambda"] = cs.lambda;
    r["outputs"]["any_lambda"] = cs.any_lambda;
  } else if (o.surface == "angenent" || o.surface == "profile") {
    if (std::isnan(lambda)) lambda = 1.0;
    tol = tol_or(o, 1e-6);
    SampledCurve profile;
    if (o.surface == "angenent") {
      const double unit = 1.0 / std::sqrt(lambda);
      const auto shot = solutions::angenent_profile_shoot(lambda, {1.5 * unit, 2.0 * unit}, 1e-8);
      r["outputs"]["shoot"] = io::to_json(shot);
      profile = shot.curve;
    } else {
      if (o.profile.empty()) throw UsageError("--surface profile needs --profile FILE");
      io::CurveKind kind;
      profile = io::read_curve_csv_file(o.profile, &kind);
      if (kind != io::CurveKind::Profile) throw UsageError("--profile expects an s,r,z curve");
      r["inputs"]["profile"] = o.profile;
    }
    const auto rev = solutions::revolve_profile(profile);
    patch = rev.patch;
    grid = rev.grid;
  } else {
    throw UsageError("unknown surface '" + o.surface + "'");
  }
  grid.ns = n;
  grid.nt = n;
  r["inputs"]["lambda"] = lambda;

  const double worst = max_abs_residual(patch, grid, lambda);
  r["outputs"]["max_abs_residual"] = worst;
  try {
    const auto fit = fit_lambda(patch, grid);
    r["outputs"]["lambda_fit"] = fit.lambda;
    r["outputs"]["lambda_spread"] = fit.spread;
    if (c_scale) r["outputs"]["c_measured"] = fit.lambda * *c_scale;
  } catch (const IndeterminateError&) {
    r["outputs"]["lambda_fit"] = nullptr;
  }
  r["tolerances"]["residual"] = tol;
  r["comparisons"].push_back(json{{"name", "max_abs_residual"}, {"value", worst}, {"bound", tol}, {"pass", worst < tol}});
  r["pass"] = worst < tol;
  return finish(c, r);
}

// ---------------------------------------------------------------- coeffs

int run_coeffs_cyclic(const Context& c) {
  const Options& o = c.opt;
  if (o.order < 4) throw UsageError("--order must be at least 4");
  std::mt19937_64 rng(o.seed);
  const auto jet = o.jet.empty() ? random_cyclic(rng) : io::cyclic_jet_from_json(io::read_json_file(o.jet));
  jet.validate();
  const double tol = tol_or(o, 1e-8);
  const TrigPoly lhs = cyclic::cyclic_lhs_poly(jet, o.order);
  const TrigPoly rhs = cyclic::cyclic_rhs_poly(jet, o.order);

  namespace cf = cyclic::closed_form;
  json cmp = json::array();
  cmp.push_back(compare("a3", lhs.a(3), cf::a3(jet), lhs.scale(), tol));
  cmp.push_back(compare("b3", lhs.b(3), cf::b3(jet), lhs.scale(), tol));
  cmp.push_back(compare("a2", lhs.a(2), cf::a2(jet), lhs.scale(), tol));
  cmp.push_back(compare("b2", lhs.b(2), cf::b2(jet), lhs.scale(), tol));
  cmp.push_back(compare("ap4", rhs.a(4), cf::a4p(jet), rhs.scale(), tol));
  cmp.push_back(compare("bp4", rhs.b(4), cf::b4p(jet), rhs.scale(), tol));
  const bool pass = all_pass(cmp);

  if (o.format.empty() || o.format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "j,a,b,ap,bp,delta_a,delta_b,delta_ap,delta_bp\n";
    auto cell = [&](int j, const char* name) -> std::string {
      for (const auto& x : cmp)
        if (x["name"] == std::string(name) + std::to_string(j)) {
          std::ostringstream v;
          v.precision(17);
          v << x["oracle"].get<double>() - x["closed_form"].get<double>();
          return v.str();
        }
      return "";
    };
    for (int j = 0; j <= o.order; ++j) {
      os << j << ',' << lhs.a(j) << ',' << (j ? lhs.b(j) : 0.0) << ',' << rhs.a(j) << ','
         << (j ? rhs.b(j) : 0.0) << ',' << cell(j, "a") << ',' << cell(j, "b") << ',' << cell(j, "ap")
         << ',' << cell(j, "bp") << '\n';
    }
    emit_text(c, os.str());
    return pass ? 0 : 1;
  }
  json r = base_report(c);
  r["inputs"] = json{{"jet", io::to_json(jet)}, {"order", o.order}, {"seed", o.seed}};
  r["outputs"] = json{{"lhs", poly_json(lhs)}, {"rhs", poly_json(rhs)}};
  r["comparisons"] = cmp;
  r["tolerances"]["relative"] = tol;
  r["pass"] = pass;
  return finish(c, r);
}

int run_coeffs_ruled(const Context& c) {
  const Options& o = c.opt;
  std::mt19937_64 rng(o.seed);
  const auto jets = o.jet.empty() ? std::vector<ruled::RuledJet>{random_ruled(rng)}
                                  : io::ruled_jets_from_json(io::read_json_file(o.jet));
  const double lambda = std::isnan(o.lambda) ? 1.0 : o.lambda;
  const double tol = tol_or(o, 1e-9);

  json rows = json::array();
  bool pass = true;
  std::ostringstream os;
  os.precision(17);
  os << "jet,c0,c1,c2,c3,oracle_c0,oracle_c1,oracle_c2,oracle_c3,max_delta\n";
  for (std::size_t i = 0; i < jets.size(); ++i) {
    jets[i].validate();
    const auto p = ruled::ruled_residual_poly(jets[i], lambda);
    const auto q = ruled::ruled_sampled_poly(jets[i], lambda);
    const double cs[4] = {p.c0, p.c1, p.c2, p.c3}, qs[4] = {q.c0, q.c1, q.c2, q.c3};
    double worst = 0.0, scale = 1.0;
    for (int k = 0; k < 4; ++k) {
      worst = std::max(worst, std::abs(cs[k] - qs[k]));
      scale = std::max(scale, std::abs(qs[k]));
    }
    const bool ok = worst <= tol * scale;
    pass = pass && ok;
    os << i;
    for (double v : cs) os << ',' << v;
    for (double v : qs) os << ',' << v;
    os << ',' << worst << '\n';
    rows.push_back(json{{"jet", io::to_json(jets[i])}, {"poly", {p.c0, p.c1, p.c2, p.c3}},
                        {"oracle", {q.c0, q.c1, q.c2, q.c3}}, {"max_delta", worst}, {"pass", ok}});
  }
  if (o.format.empty() || o.format == "csv") {
    emit_text(c, os.str());
    return pass ? 0 : 1;
  }
  json r = base_report(c);
  r["inputs"] = json{{"lambda", lambda}, {"jets", jets.size()}, {"seed", o.seed}};
  r["outputs"]["coefficients"] = rows;
  for (const auto& row : rows)
    r["comparisons"].push_back(json{{"name", "sampled_oracle"}, {"delta", row["max_delta"]}, {"pass", row["pass"]}});
  r["tolerances"]["absolute_over_scale"] = tol;
  r["pass"] = pass;
  return finish(c, r);
}

// ---------------------------------------------------------------- classify

int run_classify_cyclic(const Context& c) {
  require_json_format(c);
  const Options& o = c.opt;
  std::mt19937_64 rng(o.seed);
  const auto jet = o.jet.empty() ? random_cyclic(rng) : io::cyclic_jet_from_json(io::read_json_file(o.jet));
  const double tol = tol_or(o, 1e-9);
  json r = base_report(c);
  r["inputs"] = json{{"jet", io::to_json(jet)}};
  if (!std::isnan(o.lambda)) r["inputs"]["lambda"] = o.lambda;
  r["tolerances"]["classification"] = tol;
  std::optional<double> hint;
  if (!std::isnan(o.lambda)) hint = o.lambda;
  try {
    const auto res = cyclic::lemma2_classify(jet, hint, tol);
    r["outputs"] = json{{"verdict", cyclic::to_string(res.verdict)}, {"reason", res.reason},
                        {"witness", witness_json(res.witness)}};
    if (res.verdict == cyclic::CyclicVerdict::SphereCase) r["outputs"]["lambda"] = res.lambda;
  } catch (const FrameDegenerateError& e) {
    r["outputs"] = json{{"verdict", cyclic::to_string(cyclic::CyclicVerdict::ParallelRequired)},
                        {"reason", e.what()}, {"witness", json::array()}};
  }
  return finish(c, r);
}

int run_classify_parallel(const Context& c) {
  require_json_format(c);
  const Options& o = c.opt;
  std::mt19937_64 rng(o.seed);
  const auto jet = o.jet.empty() ? random_parallel(rng) : io::parallel_jet_from_json(io::read_json_file(o.jet));
  const double lambda = std::isnan(o.lambda) ? 1.0 : o.lambda;
  const double tol = tol_or(o, 1e-9);
  const auto res = cyclic::parallel_circle_analysis(jet, lambda, tol);
  json r = base_report(c);
  r["inputs"] = json{{"jet", io::to_json(jet)}, {"lambda", lambda}};
  r["outputs"] = json{{"verdict", cyclic::to_string(res.verdict)}, {"reason", res.reason},
                      {"witness", witness_json(res.witness)}, {"lhs", poly_json(res.lhs)},
                      {"rhs", poly_json(res.rhs)}};
  r["tolerances"]["classification"] = tol;
  return finish(c, r);
}

int run_classify_ruled(const Context& c) {
  require_json_format(c);
  const Options& o = c.opt;
  std::vector<ruled::RuledJet> jets;
  if (!o.jet.empty()) jets = io::ruled_jets_from_json(io::read_json_file(o.jet));
  const double lambda = std::isnan(o.lambda) ? 1.0 : o.lambda;
  const double tol = tol_or(o, 1e-9);
  const auto res = ruled::theorem2_classify(o.parallel, jets, lambda, tol);
  json r = base_report(c);
  json jj = json::array();
  for (const auto& j : jets) jj.push_back(io::to_json(j));
  r["inputs"] = json{{"jets", jj}, {"lambda", lambda}, {"rulings_parallel", o.parallel}};
  json steps = json::array();
  for (const auto& s : res.steps)
    steps.push_back(json{{"name", s.name}, {"deduction", s.deduction}, {"consistent", s.consistent},
                         {"worst", s.worst}});
  r["outputs"] = json{{"verdict", ruled::to_string(res.verdict)}, {"consistent", res.consistent},
                      {"reason", res.reason}, {"steps", steps}};
  r["tolerances"]["classification"] = tol;
  r["pass"] = res.consistent;
  return finish(c, r);
}

// ---------------------------------------------------------------- construct

int run_construct_canonical(const Context& c, bool sphere) {
  require_json_format(c);
  const Options& o = c.opt;
  const double tol = tol_or(o, 1e-9);
  const auto cs = sphere ? solutions::canonical_shrinker(solutions::Sphere{o.radius})
                         : solutions::canonical_shrinker(solutions::Cylinder{o.radius});
  ParamGrid grid = cs.chart;
  grid.ns = grid.nt = static_cast<std::size_t>(std::max(1, o.grid));
  const double worst = max_abs_residual(cs.patch, grid, cs.lambda);
  json r = base_report(c);
  r["inputs"] = json{{"radius", o.radius}, {"grid", o.grid}};
  r["outputs"] = json{{"surface", cs.name}, {"lambda", cs.lambda}, {"max_abs_residual", worst}};
  r["tolerances"]["residual"] = tol;
  r["pass"] = worst < tol;
  return finish(c, r);
}

int run_construct_angenent(const Context& c) {
  const Options& o = c.opt;
  const double lambda = std::isnan(o.lambda) ? 1.0 : o.lambda;
  const double tol = tol_or(o, 1e-8);
  if (lambda <= 0.0) throw UsageError("--lambda must be positive");
  const double unit = 1.0 / std::sqrt(lambda);
  std::pair<double, double> br{1.5 * unit, 2.0 * unit};
  if (!o.bracket.empty()) {
    if (o.bracket.size() != 2) throw UsageError("--bracket takes two numbers");
    br = {o.bracket[0], o.bracket[1]};
  }
  const auto shot = solutions::angenent_profile_shoot(lambda, br, tol);
  const auto rev = solutions::revolve_profile(shot.curve);
  const double worst = max_abs_residual(rev.patch, rev.grid, lambda);
  json r = base_report(c);
  r["inputs"] = json{{"lambda", lambda}, {"bracket", {br.first, br.second}}};
  r["outputs"] = io::to_json(shot);
  r["outputs"]["profile_ode_defect"] = solutions::profile_shrinker_defect(shot.curve, lambda);
  r["outputs"]["surface_max_abs_residual"] = worst;
  r["tolerances"] = json{{"closure", tol}};
  r["comparisons"].push_back(json{{"name", "closure_defect"}, {"value", shot.closure_defect}, {"bound", tol},
                                  {"pass", shot.success}});
  r["pass"] = shot.success;
  return finish_with_curve(c, r, shot.curve, io::CurveKind::Profile);
}

int run_construct_abresch_langer(const Context& c) {
  const Options& o = c.opt;
  const double lambda = std::isnan(o.lambda) ? 1.0 : o.lambda;
  const double tol = tol_or(o, 1e-8);
  if (lambda <= 0.0) throw UsageError("--lambda must be positive");
  const double unit = std::sqrt(lambda);
  json r = base_report(c);
  r["inputs"] = json{{"lambda", lambda}};
  r["tolerances"] = json{{"closure", tol}};

  std::vector<solutions::ShootResult> results;
  if (!o.scan.empty()) {
    if (o.scan.size() != 2) throw UsageError("--scan takes two numbers");
    r["inputs"]["scan"] = o.scan;
    r["inputs"]["max_lobes"] = o.max_lobes;
    results = solutions::abresch_langer_scan(lambda, o.scan[0], o.scan[1], tol, o.max_lobes);
  } else if (o.rotation > 0 || o.lobes > 0) {
    if (o.rotation < 1 || o.lobes < 1) throw UsageError("--rotation and --lobes go together");
    std::vector<double> range = o.range.empty() ? std::vector<double>{1.01 * unit, 3.0 * unit} : o.range;
    if (range.size() != 2) throw UsageError("--range takes two numbers");
    r["inputs"]["rotation"] = o.rotation;
    r["inputs"]["lobes"] = o.lobes;
    r["inputs"]["range"] = range;
    results.push_back(solutions::abresch_langer_close(lambda, o.rotation, o.lobes, range[0], range[1], tol));
  } else {
    const double k0 = o.k0.value_or(unit);
    r["inputs"]["k0"] = k0;
    results.push_back(solutions::abresch_langer_shoot(lambda, k0, tol));
  }

  json arr = json::array();
  for (const auto& s : results) {
    r["comparisons"].push_back(json{{"name", "closure_defect"}, {"value", s.closure_defect}, {"bound", tol},
                                    {"pass", s.success}});
    json j = io::to_json(s);
    if (s.success) j["ode_defect"] = solutions::planar_shrinker_defect(s.curve, lambda);
    arr.push_back(j);
  }
  r["outputs"]["curves"] = arr;
  const auto first = std::find_if(results.begin(), results.end(), [](const auto& s) { return s.success; });
  r["pass"] = first != results.end();
  const SampledCurve curve = first != results.end() ? first->curve : (results.empty() ? SampledCurve{} : results.front().curve);
  return finish_with_curve(c, r, curve, io::CurveKind::Planar);
}

// ---------------------------------------------------------------- flowcheck

int run_flowcheck(const Context& c) {
  const Options& o = c.opt;
  const double lambda = std::isnan(o.lambda) ? 1.0 : o.lambda;
  const double tol = tol_or(o, 1e-3);
  if (o.points < 8) throw UsageError("--points must be at least 8");
  const auto n = static_cast<std::size_t>(o.points);
  json r = base_report(c);
  r["inputs"] = json{{"lambda", lambda}, {"T", o.T}, {"dt", o.dt}, {"points", o.points}};

  SampledCurve initial;
  if (!o.curve.empty()) {
    io::CurveKind kind;
    initial = io::read_curve_csv_file(o.curve, &kind);
    if (kind != io::CurveKind::Planar) throw UsageError("--curve expects an s,x,y curve");
    if (!initial.closed) throw UsageError("--curve must be a closed curve");
    initial = resample_uniform(initial, n);
    r["inputs"]["curve"] = o.curve;
  } else if (o.shape == "circle") {
    initial = circle_curve(o.radius, n);
    r["inputs"]["shape"] = "circle";
    r["inputs"]["radius"] = o.radius;
  } else if (o.shape == "square") {
    initial = square_curve(o.side, n - n % 4);
    r["inputs"]["shape"] = "square";
    r["inputs"]["side"] = o.side;
  } else if (o.shape == "abresch-langer") {
    const int m = o.rotation > 0 ? o.rotation : 2, lobes = o.lobes > 0 ? o.lobes : 3;
    const double unit = std::sqrt(lambda);
    const auto shot = solutions::abresch_langer_close(lambda, m, lobes, 1.01 * unit, 3.0 * unit, 1e-8);
    initial = resample_uniform(shot.curve, n);
    r["inputs"]["shape"] = "abresch-langer";
    r["inputs"]["rotation"] = m;
    r["inputs"]["lobes"] = lobes;
    r["outputs"]["k0"] = shot.parameter;
  } else {
    throw UsageError("unknown shape '" + o.shape + "'");
  }

  const auto flow = solutions::csf_evolve(initial, o.dt, o.T);
  r["outputs"]["time_reached"] = flow.time_reached;
  r["outputs"]["completed"] = flow.completed;
  r["outputs"]["steps"] = flow.steps;
  if (!flow.completed) r["outputs"]["stop_reason"] = flow.stop_reason;
  bool pass = flow.completed;
  if (flow.completed) {
    const double d = solutions::self_similarity_check(initial, flow.curve, lambda, o.T);
    r["outputs"]["hausdorff"] = d;
    r["comparisons"].push_back(json{{"name", "hausdorff_vs_rescaled_initial"}, {"value", d}, {"bound", tol},
                                    {"pass", d < tol}});
    pass = d < tol;
  }
  r["tolerances"]["hausdorff"] = tol;
  r["pass"] = pass;
  return finish_with_curve(c, r, flow.curve, io::CurveKind::Planar);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Self-similar surface toolkit", "shrinker"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--tol", o.tol, "Tolerance for the checks of the command");
  app.add_option("--seed", o.seed, "Seed for randomly generated jets");
  app.add_option("--out", o.out, "Output file");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  std::function<int(const Context&)> handler;
  auto bind = [&](CLI::App* sub, std::function<int(const Context&)> h) {
    sub->callback([&handler, h] { handler = h; });
  };

  auto* residual = app.add_subcommand("residual", "Maximum shrinker residual over a chart grid");
  residual->add_option("--surface", o.surface, "sphere, cylinder, plane, angenent or profile")->required();
  residual->add_option("--radius", o.radius, "Sphere or cylinder radius");
  residual->add_option("--lambda", o.lambda, "Self-similarity parameter");
  residual->add_option("--grid", o.grid, "Grid points per parameter");
  residual->add_option("--profile", o.profile, "Profile CSV (s,r,z) for --surface profile");
  residual->add_option("--axis", o.axis, "Cylinder axis")->expected(3);
  residual->add_option("--offset", o.offset, "Plane distance from the origin");
  bind(residual, run_residual);

  auto* coeffs = app.add_subcommand("coeffs", "Coefficient tables with closed-form comparison");
  coeffs->require_subcommand(1);
  auto* cc = coeffs->add_subcommand("cyclic", "Fourier coefficients of both sides for a cyclic jet");
  cc->add_option("--jet", o.jet, "Jet JSON file (random from --seed if omitted)");
  cc->add_option("--order", o.order, "Highest harmonic to extract");
  bind(cc, run_coeffs_cyclic);
  auto* cr = coeffs->add_subcommand("ruled", "Cubic coefficients of the residual for ruled jets");
  cr->add_option("--jet", o.jet, "Jet JSON file, object or array (random from --seed if omitted)");
  cr->add_option("--lambda", o.lambda, "Self-similarity parameter");
  bind(cr, run_coeffs_ruled);

  auto* classify = app.add_subcommand("classify", "Classification verdicts");
  classify->require_subcommand(1);
  auto* kc = classify->add_subcommand("cyclic", "Case split for a cyclic jet");
  kc->add_option("--jet", o.jet, "Jet JSON file (random from --seed if omitted)");
  kc->add_option("--lambda", o.lambda, "Expected self-similarity parameter");
  bind(kc, run_classify_cyclic);
  auto* kp = classify->add_subcommand("parallel", "Analysis of circles in parallel planes");
  kp->add_option("--jet", o.jet, "Jet JSON file (random from --seed if omitted)");
  kp->add_option("--lambda", o.lambda, "Self-similarity parameter");
  bind(kp, run_classify_parallel);
  auto* kr = classify->add_subcommand("ruled", "Deduction chain for a ruled surface");
  kr->add_option("--jet", o.jet, "Jet JSON file, object or array");
  kr->add_option("--lambda", o.lambda, "Self-similarity parameter");
  kr->add_flag("--parallel", o.parallel, "Rulings are parallel");
  bind(kr, run_classify_ruled);

  auto* construct = app.add_subcommand("construct", "Build a self-similar solution");
  construct->require_subcommand(1);
  auto* sph = construct->add_subcommand("sphere", "Round sphere");
  sph->add_option("--radius", o.radius, "Radius");
  sph->add_option("--grid", o.grid, "Grid points per parameter");
  bind(sph, [](const Context& c) { return run_construct_canonical(c, true); });
  auto* cyl = construct->add_subcommand("cylinder", "Round cylinder");
  cyl->add_option("--radius", o.radius, "Radius");
  cyl->add_option("--grid", o.grid, "Grid points per parameter");
  bind(cyl, [](const Context& c) { return run_construct_canonical(c, false); });
  auto* ang = construct->add_subcommand("angenent", "Self-shrinking torus profile");
  ang->add_option("--lambda", o.lambda, "Self-similarity parameter");
  ang->add_option("--bracket", o.bracket, "Initial radius bracket")->expected(2);
  bind(ang, run_construct_angenent);
  auto* al = construct->add_subcommand("abresch-langer", "Planar self-shrinking curve");
  al->add_option("--lambda", o.lambda, "Self-similarity parameter");
  al->add_option("--k0", o.k0, "Initial curvature for a single shot");
  al->add_option("--rotation", o.rotation, "Rotation index of the closed curve");
  al->add_option("--lobes", o.lobes, "Number of lobes of the closed curve");
  al->add_option("--range", o.range, "Initial curvature bracket for --rotation/--lobes")->expected(2);
  al->add_option("--scan", o.scan, "Scan initial curvatures over this interval")->expected(2);
  al->add_option("--max-lobes", o.max_lobes, "Largest lobe count in a scan");
  bind(al, run_construct_abresch_langer);

  auto* flow = app.add_subcommand("flowcheck", "Curve-shortening flow against rescaling");
  flow->add_option("--curve", o.curve, "Closed planar curve CSV (s,x,y)");
  flow->add_option("--shape", o.shape, "circle, square or abresch-langer");
  flow->add_option("--radius", o.radius, "Circle radius");
  flow->add_option("--side", o.side, "Square side");
  flow->add_option("--rotation", o.rotation, "Abresch-Langer rotation index");
  flow->add_option("--lobes", o.lobes, "Abresch-Langer lobe count");
  flow->add_option("--lambda", o.lambda, "Self-similarity parameter");
  flow->add_option("--T", o.T, "Flow time");
  flow->add_option("--dt", o.dt, "Largest time step");
  flow->add_option("--points", o.points, "Samples along the curve");
  bind(flow, run_flowcheck);

  if (!args.empty() && !args.front().empty() && args.front()[0] != '-') {
    const auto& subs = app.get_subcommands({});
    const bool known = std::any_of(subs.begin(), subs.end(), [&](const CLI::App* a) { return a->get_name() == args.front(); });
    if (!known) {
      err << "error: unknown command '" << args.front() << "'\n" << app.help();
      return 2;
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }
  if (!handler) {
    err << app.help();
    return 2;
  }

  Context ctx{args, o, out, err};
  try {
    return handler(ctx);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    json r = base_report(ctx);
    r["pass"] = false;
    r["error"] = e.what();
    out << r.dump(2) << "\n";
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace shrinker::cli
