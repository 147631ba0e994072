#include "zeeman/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "zeeman/acceptance.hpp"
#include "zeeman/closed_forms.hpp"
#include "zeeman/shift_engine.hpp"
#include "zeeman/units.hpp"

namespace zeeman {

namespace {

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string num(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

// Ordered, pre-formatted fields so csv and json print the same digits.
struct Field {
  std::string key, value;
  bool is_string = false;
};
using Group = std::vector<Field>;

struct Row {
  Group inputs, derived, breakdown, regime, diagnostics;
  std::string ratio = "null";
  bool cross_check_failed = false;
};

void add(Group& g, const std::string& k, double v) { g.push_back({k, num(v), false}); }
void add(Group& g, const std::string& k, const std::string& v) { g.push_back({k, v, true}); }

std::string group_json(const Group& g) {
  std::string s = "{";
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) s += ", ";
    s += quoted(g[i].key) + ": " + (g[i].is_string ? quoted(g[i].value) : g[i].value);
  }
  return s + "}";
}

std::string row_json(const Row& r) {
  return "{\"inputs\": " + group_json(r.inputs) + ", \"derived\": " + group_json(r.derived) +
         ", \"breakdown\": " + group_json(r.breakdown) + ", \"ratio\": " + r.ratio +
         ", \"regime\": " + group_json(r.regime) + ", \"diagnostics\": " +
         group_json(r.diagnostics) + "}";
}

std::vector<std::pair<std::string, const Group*>> csv_groups(const Row& r) {
  return {{"", &r.inputs}, {"", &r.derived}, {"", &r.breakdown}, {"regime_", &r.regime},
          {"", &r.diagnostics}};
}

std::string csv_cell(const Field& f) {
  if (!f.is_string) return f.value == "null" ? "" : f.value;
  if (f.value.find_first_of(",\"\n") == std::string::npos) return f.value;
  std::string s = "\"";
  for (char c : f.value) s += c == '"' ? std::string("\"\"") : std::string(1, c);
  return s + "\"";
}

std::string csv_header(const Row& r) {
  std::string s;
  for (auto [prefix, g] : csv_groups(r)) {
    for (const auto& f : *g) s += (s.empty() ? "" : ",") + prefix + f.key;
    if (g == &r.breakdown) s += ",ratio";
  }
  return s;
}

std::string csv_line(const Row& r) {
  std::string s;
  bool first = true;
  for (auto [prefix, g] : csv_groups(r)) {
    for (const auto& f : *g) {
      s += (first ? "" : ",") + csv_cell(f);
      first = false;
    }
    if (g == &r.breakdown) s += "," + (r.ratio == "null" ? std::string() : r.ratio);
  }
  return s;
}

struct Options {
  double B0 = 1.0;
  double distance = 10e-6;
  double omega_H = 1e15;
  int nu_L = 0, nu_R = 1;
  std::string surface = "perfect";
  std::string units = "si";
  std::string output = "csv";
  std::string sweep;
  double rel_tol = QuadratureConfig{}.rel_tol;
  double abs_tol = QuadratureConfig{}.abs_tol;
  int max_subdivisions = QuadratureConfig{}.max_subdivisions;
  bool quick = false;
  bool constants = false;
  bool inject_fault = false;
  int threads = 0;
  double regime_threshold = 10.0;
};

struct Point {
  double B0, distance, omega_H; // as given (SI or natural)
  int nu_L, nu_R;
  std::string surface;
};

// eps-file frequencies are in the input unit (rad/s for si)
SurfaceModel parse_surface(const std::string& s, bool si) {
  if (s == "perfect") return PerfectReflector{};
  if (s.rfind("n=", 0) == 0) {
    std::size_t used = 0;
    double n = 0;
    try {
      n = std::stod(s.substr(2), &used);
    } catch (const std::exception&) {
      throw InputError("bad refractive index in --surface " + s);
    }
    if (used != s.size() - 2) throw InputError("bad refractive index in --surface " + s);
    SurfaceModel m = NonDispersive{n};
    validate_surface(m);
    return m;
  }
  if (s.rfind("eps-file=", 0) == 0) {
    auto dr = read_permittivity_file(s.substr(9));
    if (si)
      for (double& w : dr.omega) w = units::rad_per_s_to_natural(w);
    return dr;
  }
  throw InputError("--surface must be perfect, n=<x> or eps-file=<path>");
}

struct NaturalPoint {
  TrapParameters p;
  double d;
};

NaturalPoint to_natural(const Point& pt, bool si) {
  NaturalPoint np;
  np.p.m = 1.0;
  np.p.e = natural_electron_charge();
  np.p.B0 = si ? units::tesla_to_natural(pt.B0) : pt.B0;
  np.p.omega_H = si ? units::rad_per_s_to_natural(pt.omega_H) : pt.omega_H;
  np.d = si ? units::meters_to_natural(pt.distance) : pt.distance;
  return np;
}

Row evaluate(const Point& pt, const Options& o, const QuadratureConfig& q) {
  const bool si = o.units == "si";
  const SurfaceModel surf = parse_surface(pt.surface, si);
  const auto np = to_natural(pt, si);
  const TrapParameters& p = np.p;
  const double d = np.d;
  p.validate(true);
  if (!(d > 0)) throw InputError("distance must be > 0");
  const LandauState st{pt.nu_L, pt.nu_R, 0.5};
  st.validate();
  const auto f = derived_frequencies(p);

  Row r;
  const std::string u = si ? "_si" : "_nat";
  add(r.inputs, si ? "distance_m" : "distance_nat", pt.distance);
  add(r.inputs, si ? "B0_T" : "B0_nat", pt.B0);
  add(r.inputs, si ? "omega_H_rad_s" : "omega_H_nat", pt.omega_H);
  add(r.inputs, "nu_L", pt.nu_L);
  add(r.inputs, "nu_R", pt.nu_R);
  add(r.inputs, "surface", pt.surface);

  add(r.derived, "Omega", f.Omega);
  add(r.derived, "Delta_R", f.Delta_R);
  add(r.derived, "Delta_L", f.Delta_L);
  add(r.derived, "zeta_R", f.Delta_R * d);
  add(r.derived, "zeta_L", f.Delta_L * d);
  add(r.derived, "spin_energy", -p.e * p.B0 / (2 * p.m)); // s = +1/2, kept out of the orbital energy

  const auto reg = classify_regime(p, d, o.regime_threshold);
  add(r.regime, "tag", std::string(regime_name(reg.tag)));
  add(r.regime, "omega_H", reg.omega_H);
  add(r.regime, "cyclotron", reg.cyclotron);
  add(r.regime, "inverse_distance", reg.inverse_distance);

  const bool dispersive = std::holds_alternative<DispersiveResonance>(surf);
  ShiftBreakdown b;
  if (dispersive) {
    for (double* v : {&b.E1, &b.E2B, &b.E2E_pole, &b.E2E_cut, &b.Q1_pole, &b.Q1_cut, &b.Q2,
                      &b.total, &b.E2E_branch_point, &b.error_estimate})
      *v = NAN;
  } else {
    b = total_shift(st, p, surf, d, q);
  }
  add(r.breakdown, "E1", b.E1);
  add(r.breakdown, "E2B", b.E2B);
  add(r.breakdown, "E2E_pole", b.E2E_pole);
  add(r.breakdown, "E2E_cut", b.E2E_cut);
  add(r.breakdown, "Q1_pole", b.Q1_pole);
  add(r.breakdown, "Q1_cut", b.Q1_cut);
  add(r.breakdown, "Q2", b.Q2);
  add(r.breakdown, "total", b.total);
  add(r.breakdown, "total_J", units::natural_to_joule(b.total));
  if (p.B0 > 0 && !dispersive) r.ratio = num(2 * b.total * p.m / (std::abs(p.e) * p.B0));

  add(r.diagnostics, "E2E_branch_point", b.E2E_branch_point);
  add(r.diagnostics, "error_estimate", b.error_estimate);
  std::string notes;
  double cf = NAN, cf_rel = NAN;
  if (std::holds_alternative<PerfectReflector>(surf)) {
    cf = perfect_reflector_shift(st, f, d, p.B0, p.m, p.e);
    const double scale = std::max(1e-6 * std::abs(cf), 1e-12 * p.e * p.e / (d * d * d));
    cf_rel = std::abs(b.total - cf) / std::max(std::abs(cf), 1e-300);
    if (std::abs(b.total - cf) > scale) {
      r.cross_check_failed = true;
      notes += "closed-form mismatch; ";
    }
  }
  add(r.diagnostics, "closed_form_total", cf);
  add(r.diagnostics, "closed_form_rel_diff", cf_rel);

  double asym = NAN, asym_ratio = NAN;
  const double min_zeta = std::min(pt.nu_R > 0 ? f.Delta_R * d : INFINITY,
                                   pt.nu_L > 0 ? f.Delta_L * d : INFINITY);
  if (std::isfinite(min_zeta) && (min_zeta >= 10 || dispersive)) {
    const auto a = asymptotic_dielectric_shift(st, p, d, surf);
    asym = a.value;
    if (p.B0 > 0) asym_ratio = splitting_ratio_asymptotic(st, p, d, surf);
    if (a.regime_warning) notes += a.warning + "; ";
    if (dispersive && p.B0 > 0) r.ratio = num(asym_ratio);
  }
  add(r.diagnostics, "asymptotic_total", asym);
  add(r.diagnostics, "asymptotic_ratio", asym_ratio);
  if (dispersive) notes += "dispersive surface: asymptotic formula only; ";
  add(r.diagnostics, "notes", notes);
  return r;
}

std::vector<Point> sweep_points(const Point& base, const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string t; std::getline(ss, t, ':');) parts.push_back(t);
  if (parts.size() != 4) throw InputError("--sweep must be <axis>:<start>:<stop>:<count>");
  const std::string axis = parts[0];
  double a, b;
  long count;
  try {
    a = std::stod(parts[1]);
    b = std::stod(parts[2]);
    count = std::stol(parts[3]);
  } catch (const std::exception&) {
    throw InputError("--sweep: start, stop and count must be numbers");
  }
  if (count < 1) throw InputError("--sweep: count must be >= 1");
  if (!(b >= a)) throw InputError("--sweep: stop must be >= start");
  if (count == 1 && b != a) throw InputError("--sweep: a single point needs start == stop");
  std::vector<Point> pts;
  for (long k = 0; k < count; ++k) {
    const double v = count == 1 ? a : a + (b - a) * k / (count - 1);
    Point pt = base;
    if (axis == "distance") pt.distance = v;
    else if (axis == "B0") pt.B0 = v;
    else if (axis == "omega_H") pt.omega_H = v;
    else if (axis == "n") {
      char buf[40];
      std::snprintf(buf, sizeof buf, "n=%.17g", v);
      pt.surface = buf;
    } else if (axis == "nu") {
      if (v != std::round(v)) throw InputError("--sweep nu: values must be integers");
      pt.nu_R = static_cast<int>(v);
    } else {
      throw InputError("--sweep axis must be distance, B0, omega_H, n or nu");
    }
    pts.push_back(pt);
  }
  return pts;
}

Row error_row(const Point& pt, const std::string& what, const Row& shape) {
  Row r = shape;
  for (Group* g : {&r.derived, &r.breakdown, &r.regime, &r.diagnostics})
    for (auto& f : *g) {
      f.value = f.is_string ? "" : "null";
    }
  r.inputs[0].value = num(pt.distance);
  r.inputs[1].value = num(pt.B0);
  r.inputs[2].value = num(pt.omega_H);
  r.inputs[3].value = num(pt.nu_L);
  r.inputs[4].value = num(pt.nu_R);
  r.inputs[5].value = pt.surface;
  r.ratio = "null";
  r.diagnostics.back().value = "error: " + what;
  return r;
}

int classify_exception(const std::exception& ex) {
  if (dynamic_cast<const QuadratureError*>(&ex) || dynamic_cast<const ConvergenceError*>(&ex))
    return kExitQuadrature;
  return kExitInvalidInput;
}

void print_error(const Options& o, std::ostream& out, std::ostream& err, int code,
                 const std::string& type, const std::string& msg) {
  if (o.output == "json")
    out << "{\"error\": {\"type\": " << quoted(type) << ", \"message\": " << quoted(msg)
        << ", \"exit_code\": " << code << "}}\n";
  err << "error: " << msg << "\n";
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Surface-modified Zeeman shift of a trapped electron"};
  app.require_subcommand(0, 1);
  Options o;
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.add_option("--B0-tesla,--B0", o.B0, "magnetic field (T, or natural units with --units natural)");
  app.add_option("--distance-m,--distance", o.distance, "distance to the surface (m, or natural)")
      ->check(CLI::PositiveNumber);
  app.add_option("--omega-H", o.omega_H, "trap frequency (rad/s, or natural)");
  app.add_option("--nuL", o.nu_L, "left-circular quanta")->check(CLI::NonNegativeNumber);
  app.add_option("--nuR", o.nu_R, "right-circular quanta")->check(CLI::NonNegativeNumber);
  app.add_option("--surface", o.surface, "perfect | n=<x> | eps-file=<path>");
  app.add_option("--units", o.units, "input units")->check(CLI::IsMember({"si", "natural"}));
  app.add_option("--output", o.output, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--sweep", o.sweep, "<axis>:<start>:<stop>:<count>, axis in distance|B0|omega_H|n|nu");
  app.add_option("--rel-tol", o.rel_tol, "quadrature relative tolerance");
  app.add_option("--abs-tol", o.abs_tol, "quadrature absolute tolerance");
  app.add_option("--max-subdivisions", o.max_subdivisions, "quadrature panel budget");
  app.add_option("--threads", o.threads, "sweep worker threads (0 = hardware)");
  app.add_option("--regime-threshold", o.regime_threshold, "rate ratio counted as well separated");
  app.add_flag("--quick", o.quick, "validate: reduced grids");
  app.add_flag("--constants", o.constants, "print the compiled physical constants and exit");
  app.add_flag("--inject-fault", o.inject_fault)->group("");

  auto* shift = app.add_subcommand("shift", "single-point shift breakdown");
  auto* sweep = app.add_subcommand("sweep", "parameter sweep, one row per point");
  auto* regimes = app.add_subcommand("regimes", "classify the weak-field regime");
  auto* validate = app.add_subcommand("validate", "run the acceptance checks");
  for (auto* s : {shift, sweep, regimes, validate}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    print_error(o, out, err, kExitInvalidInput, "usage", e.what());
    return kExitInvalidInput;
  }

  if (o.constants) {
    out << units::constants_table();
    return kExitOk;
  }

  set_fault_injection(o.inject_fault);
  struct ResetFault {
    ~ResetFault() { set_fault_injection(false); }
  } reset_fault;

  if (validate->parsed()) {
    const auto checks = run_acceptance(o.quick);
    bool ok = true;
    if (o.output == "json") {
      out << "{\"checks\": [";
      for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto& c = checks[i];
        out << (i ? ", " : "") << "{\"id\": " << c.id << ", \"name\": " << quoted(c.name)
            << ", \"pass\": " << (c.pass ? "true" : "false") << ", \"seconds\": " << num(c.seconds)
            << ", \"residual\": " << num(c.residual) << ", \"detail\": " << quoted(c.detail) << "}";
      }
      out << "]}\n";
    }
    for (const auto& c : checks) {
      if (o.output != "json") out << format_check(c) << "\n";
      ok = ok && c.pass;
    }
    return ok ? kExitOk : kExitChecksFailed;
  }

  QuadratureConfig q;
  q.rel_tol = o.rel_tol;
  q.abs_tol = o.abs_tol;
  q.max_subdivisions = o.max_subdivisions;
  const Point base{o.B0, o.distance, o.omega_H, o.nu_L, o.nu_R, o.surface};

  try {
    q.validate();
    if (regimes->parsed()) {
      const auto np = to_natural(base, o.units == "si");
      const auto reg = classify_regime(np.p, np.d, o.regime_threshold);
      Group g;
      add(g, "tag", std::string(regime_name(reg.tag)));
      add(g, "omega_H", reg.omega_H);
      add(g, "cyclotron", reg.cyclotron);
      add(g, "inverse_distance", reg.inverse_distance);
      if (o.output == "json") {
        out << "{\"regime\": " << group_json(g) << "}\n";
      } else {
        for (std::size_t i = 0; i < g.size(); ++i) out << (i ? "," : "") << g[i].key;
        out << "\n";
        for (std::size_t i = 0; i < g.size(); ++i) out << (i ? "," : "") << csv_cell(g[i]);
        out << "\n";
      }
      return kExitOk;
    }

    std::vector<Point> pts;
    if (sweep->parsed()) {
      if (o.sweep.empty()) throw InputError("sweep needs --sweep <axis>:<start>:<stop>:<count>");
      pts = sweep_points(base, o.sweep);
    } else {
      pts = {base};
    }

    if (!sweep->parsed()) {
      const Row r = evaluate(pts[0], o, q);
      if (o.output == "json") out << row_json(r) << "\n";
      else out << csv_header(r) << "\n" << csv_line(r) << "\n";
      if (r.cross_check_failed) {
        err << "error: engine disagrees with the perfect-reflector closed form\n";
        return kExitCrossCheck;
      }
      return kExitOk;
    }

    // parallel sweep, emitted in input order
    std::vector<std::optional<Row>> rows(pts.size());
    std::vector<std::string> failures(pts.size());
    std::atomic<std::size_t> next{0};
    unsigned nt = o.threads > 0 ? o.threads : std::max(1u, std::thread::hardware_concurrency());
    nt = std::min<unsigned>(nt, pts.size());
    auto worker = [&] {
      for (std::size_t i; (i = next++) < pts.size();) {
        try {
          rows[i] = evaluate(pts[i], o, q);
        } catch (const std::exception& ex) {
          failures[i] = ex.what();
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    const Row* shape = nullptr;
    for (const auto& r : rows)
      if (r) {
        shape = &*r;
        break;
      }
    if (!shape) throw InputError("every sweep point failed: " + failures[0]);
    bool mismatch = false;
    if (o.output == "json") out << "{\"sweep\": " << quoted(o.sweep) << ", \"rows\": [";
    else out << csv_header(*shape) << "\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Row r = rows[i] ? *rows[i] : error_row(pts[i], failures[i], *shape);
      mismatch = mismatch || r.cross_check_failed;
      if (o.output == "json") out << (i ? ",\n" : "\n") << row_json(r);
      else out << csv_line(r) << "\n";
    }
    if (o.output == "json") out << "\n]}\n";
    return mismatch ? kExitCrossCheck : kExitOk;
  } catch (const std::exception& ex) {
    const int code = classify_exception(ex);
    print_error(o, out, err, code, code == kExitQuadrature ? "quadrature" : "validation", ex.what());
    return code;
  }
}

} // namespace zeeman
