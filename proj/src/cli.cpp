#include "casimir/cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <fmt/core.h>

#include "casimir/energy.hpp"
#include "casimir/errors.hpp"
#include "casimir/report.hpp"
#include "casimir/validate.hpp"
#include "casimir/wedgepaths.hpp"

namespace casimir::cli {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_error = 2;

double degrees(double d) { return d * pi / 180.0; }

struct Settings {
  std::optional<double> gamma;
  std::optional<double> gamma_deg;
  std::optional<double> r;
  std::optional<double> psi;
  std::optional<double> psi_deg;
  int max_bounces = 7;
  double r0 = 1.0;
  double r1 = 2.0;
  double width = 1.0;
  bool include_odd = false;
  double hbar_c = 1.0;
  std::string param = "gamma-deg";
  std::optional<double> start;
  std::optional<double> stop;
  int count = 10;
  std::string scale = "linear";
  double L = 1.0;
  double b = 1.0;
  double W = 1.0;
  std::vector<double> gammas{0.2, 0.1, 0.05, 0.025};
  std::size_t samples = 1000;
  std::uint64_t seed = validate::Options{}.seed;
  bool inject_fault = false;
  std::string paths_file;
  std::string format;
  std::string output;
  std::string config;
};

struct Commands {
  CLI::App* paths = nullptr;
  CLI::App* energy = nullptr;
  CLI::App* sweep = nullptr;
  CLI::App* limit = nullptr;
  CLI::App* validate = nullptr;
};

void add_gamma(CLI::App* sub, Settings& s) {
  auto* g = sub->add_option("--gamma", s.gamma, "Opening angle in radians");
  auto* d = sub->add_option("--gamma-deg", s.gamma_deg, "Opening angle in degrees");
  g->excludes(d);
  d->excludes(g);
}

void add_output(CLI::App* sub, Settings& s, const std::string& default_format,
                const std::vector<std::string>& formats) {
  sub->add_option("--format", s.format, "Output format (default " + default_format + ")")
      ->check(CLI::IsMember(formats));
  sub->add_option("--output", s.output, "Write to this file instead of stdout");
}

void add_energy_geometry(CLI::App* sub, Settings& s) {
  add_gamma(sub, s);
  sub->add_option("--r0", s.r0, "Hinge-to-near-edge distance")->capture_default_str();
  sub->add_option("--r1", s.r1, "Hinge-to-far-edge distance")->capture_default_str();
  sub->add_option("--width", s.width, "Transverse plate width")->capture_default_str();
  sub->add_flag("--include-odd", s.include_odd, "Add odd-bounce orbits to the total");
  sub->add_option("--hbar-c", s.hbar_c, "Unit of hbar*c multiplying energies")
      ->capture_default_str();
}

Commands build(CLI::App& app, Settings& s) {
  app.require_subcommand(1);

  Commands c;
  c.paths = app.add_subcommand("paths", "Closed orbits through a point");
  add_gamma(c.paths, s);
  c.paths->add_option("--r", s.r, "Radial coordinate of the point");
  auto* psi = c.paths->add_option("--psi", s.psi, "Angle from the vertical, radians");
  auto* psid = c.paths->add_option("--psi-deg", s.psi_deg, "Angle from the vertical, degrees");
  psi->excludes(psid);
  psid->excludes(psi);
  c.paths->add_option("--max-bounces", s.max_bounces, "Largest bounce count")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_output(c.paths, s, "json", {"json", "csv"});

  c.energy = app.add_subcommand("energy", "Geometric-optics Casimir energy");
  add_energy_geometry(c.energy, s);
  add_output(c.energy, s, "json", {"json", "csv"});

  c.sweep = app.add_subcommand("sweep", "Energy over a range of one parameter");
  add_energy_geometry(c.sweep, s);
  c.sweep->add_option("--param", s.param, "Swept parameter")
      ->capture_default_str()
      ->check(CLI::IsMember({"gamma", "gamma-deg", "r0", "r1", "width"}));
  c.sweep->add_option("--start", s.start, "First value")->required();
  c.sweep->add_option("--stop", s.stop, "Last value")->required();
  c.sweep->add_option("--count", s.count, "Number of values")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  c.sweep->add_option("--scale", s.scale, "Spacing")
      ->capture_default_str()
      ->check(CLI::IsMember({"linear", "log"}));
  add_output(c.sweep, s, "csv", {"json", "csv"});

  c.limit = app.add_subcommand("limit", "Small-angle comparison with parallel plates");
  c.limit->add_option("--L", s.L, "Minimum plate height")->capture_default_str();
  c.limit->add_option("--b", s.b, "Plate length")->capture_default_str();
  c.limit->add_option("--W", s.W, "Plate width")->capture_default_str();
  c.limit->add_option("--gammas", s.gammas, "Opening angles in radians")
      ->delimiter(',')
      ->capture_default_str();
  add_output(c.limit, s, "csv", {"json", "csv"});

  c.validate = app.add_subcommand("validate", "Closed forms against independent oracles");
  c.validate->add_option("--samples", s.samples, "Random samples per check")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  c.validate->add_option("--seed", s.seed, "Generator seed")->capture_default_str();
  c.validate->add_flag("--inject-fault", s.inject_fault,
                       "Perturb the closed forms; the suite must fail");
  c.validate->add_option("--paths-file", s.paths_file,
                         "Also re-check a document written by `paths --format json`")
      ->check(CLI::ExistingFile);
  add_output(c.validate, s, "text", {"text", "json"});

  for (CLI::App* sub : {c.paths, c.energy, c.sweep, c.limit, c.validate}) {
    sub->add_option("--config", s.config, "key=value file supplying defaults")
        ->check(CLI::ExistingFile);
  }
  return c;
}

CLI::App* selected(const CLI::App& app) {
  auto subs = app.get_subcommands();
  return subs.empty() ? nullptr : subs.front();
}

// Arguments contributed by the config file for options absent on the command
// line; command-line values win.
std::vector<std::string> config_arguments(const std::string& path, CLI::App* sub) {
  std::vector<std::string> extra;
  for (const auto& item : CLI::ConfigINI().from_file(path)) {
    if (item.name == "++" || item.name == "--") continue;
    if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents[0] == sub->get_name()))
      continue;
    CLI::Option* opt = sub->get_option_no_throw("--" + item.name);
    if (opt == nullptr) throw InvalidArgument("unknown config key '" + item.name + "'");
    if (opt->count() > 0) continue;
    if (opt->get_expected_max() == 0) {
      if (item.inputs.size() == 1 && (item.inputs[0] == "true" || item.inputs[0] == "1"))
        extra.push_back("--" + item.name);
      continue;
    }
    extra.push_back("--" + item.name);
    for (const auto& v : item.inputs) extra.push_back(v);
  }
  return extra;
}

double gamma_of(const Settings& s) {
  if (s.gamma) return *s.gamma;
  if (s.gamma_deg) return degrees(*s.gamma_deg);
  throw InvalidArgument("an opening angle is required (--gamma or --gamma-deg)");
}

void emit(const Settings& s, const std::string& text, std::ostream& out) {
  if (s.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(s.output);
  if (!file) throw Error("cannot open output file '" + s.output + "'");
  file << text;
}

std::string dump(const report::Json& j) { return j.dump(2) + "\n"; }

int run_paths(const Settings& s, std::ostream& out) {
  WedgeGeometry geom{gamma_of(s), 1.0, 2.0, 1.0};
  WedgeGeometry::validate_angle(geom.gamma);
  if (!s.r) throw InvalidArgument("--r is required");
  double psi = s.psi ? *s.psi : s.psi_deg ? degrees(*s.psi_deg) : NAN;
  if (std::isnan(psi)) throw InvalidArgument("--psi or --psi-deg is required");
  PolarPoint point{*s.r, psi};
  require_inside(point, geom.gamma);
  std::vector<paths::BouncePath> found;
  for (const auto& spec : paths::enumerate_closed_paths(point, geom, s.max_bounces))
    found.push_back(paths::closed_path(point, geom, spec));
  emit(s, s.format == "csv" ? report::paths_csv(found) : dump(report::paths_json(geom, point, found)),
       out);
  return exit_ok;
}

int run_energy(const Settings& s, std::ostream& out, std::ostream& err) {
  WedgeGeometry geom{gamma_of(s), s.r0, s.r1, s.width};
  geom.validate();
  auto e = energy::energy_total(geom, s.include_odd);
  for (const auto& d : e.diagnostics) err << "note: " << d << "\n";
  emit(s, s.format == "csv" ? report::energy_csv(e, s.hbar_c) : dump(report::energy_json(e, s.hbar_c)),
       out);
  return exit_ok;
}

std::vector<double> sweep_values(const Settings& s) {
  double a = *s.start;
  double b = *s.stop;
  if (s.scale == "log" && (a <= 0.0 || b <= 0.0))
    throw InvalidArgument("log spacing needs positive --start and --stop");
  std::vector<double> v;
  for (int i = 0; i < s.count; ++i) {
    double t = s.count == 1 ? 0.0 : double(i) / (s.count - 1);
    v.push_back(s.scale == "log" ? a * std::pow(b / a, t) : a + (b - a) * t);
  }
  return v;
}

int run_sweep(const Settings& s, std::ostream& out) {
  bool angle = s.param == "gamma" || s.param == "gamma-deg";
  std::vector<report::SweepRow> rows;
  for (double v : sweep_values(s)) {
    WedgeGeometry geom{angle ? 0.0 : gamma_of(s), s.r0, s.r1, s.width};
    if (s.param == "gamma") geom.gamma = v;
    if (s.param == "gamma-deg") geom.gamma = degrees(v);
    if (s.param == "r0") geom.r0 = v;
    if (s.param == "r1") geom.r1 = v;
    if (s.param == "width") geom.width = v;
    geom.validate();
    rows.push_back({v, energy::energy_total(geom, s.include_odd)});
  }
  emit(s, s.format == "json" ? dump(report::sweep_json(s.param, rows, s.hbar_c))
                             : report::sweep_csv(s.param, rows, s.hbar_c),
       out);
  return exit_ok;
}

int run_limit(const Settings& s, std::ostream& out) {
  if (!(s.L > 0.0) || !(s.b > 0.0) || !(s.W > 0.0))
    throw InvalidArgument("--L, --b and --W must be positive");
  if (s.gammas.empty()) throw InvalidArgument("--gammas needs at least one angle");
  for (double g : s.gammas) WedgeGeometry::validate_angle(g);
  auto rows = energy::limit_sweep(s.L, s.b, s.W, s.gammas);
  emit(s, s.format == "json" ? dump(report::limit_json(rows)) : report::limit_csv(rows), out);
  return exit_ok;
}

int run_validate(const Settings& s, std::ostream& out) {
  validate::Options opt{s.samples, s.seed, s.inject_fault};
  validate::Report rep = validate::run_suite(opt);
  if (!s.paths_file.empty()) {
    std::ifstream in(s.paths_file);
    report::Json doc;
    try {
      doc = report::Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument("cannot read paths file: " + std::string(e.what()));
    }
    rep.checks.push_back(report::recheck_paths(doc));
  }
  if (s.format == "json") {
    report::Json list = report::Json::array();
    for (const auto& c : rep.checks) {
      list.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"cases", c.cases},
                      {"skipped", c.skipped},
                      {"max_error", c.max_error},
                      {"tolerance", c.tolerance},
                      {"detail", c.detail},
                      {"failures", c.failures}});
    }
    emit(s, dump({{"passed", rep.passed()}, {"checks", list}}), out);
  } else {
    emit(s, report::validation_text(rep), out);
  }
  return rep.passed() ? exit_ok : exit_failed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);

  Settings s;
  CLI::App app{"Geometric-optics Casimir energy of a plate hinged above a plane",
               "wedge-casimir"};
  Commands cmds = build(app, s);
  CLI::App merged_app{app.get_description(), app.get_name()};
  try {
    app.parse(std::vector<std::string>(args));
    if (!s.config.empty()) {
      auto extra = config_arguments(s.config, selected(app));
      if (!extra.empty()) {
        std::vector<std::string> merged(extra.rbegin(), extra.rend());
        merged.insert(merged.end(), args.begin(), args.end());
        s = Settings{};
        cmds = build(merged_app, s);
        merged_app.parse(merged);
      }
    }
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_error;
  }

  try {
    if (cmds.paths->parsed()) return run_paths(s, out);
    if (cmds.energy->parsed()) return run_energy(s, out, err);
    if (cmds.sweep->parsed()) return run_sweep(s, out);
    if (cmds.limit->parsed()) return run_limit(s, out);
    if (cmds.validate->parsed()) return run_validate(s, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_error;
  }
  err << "error: no command given\n";
  return exit_error;
}

}  // namespace casimir::cli
