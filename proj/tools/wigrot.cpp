#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json_text.hpp"
#include "wigrot/error.hpp"
#include "wigrot/scenario.hpp"
#include "wigrot/validation.hpp"

using nlohmann::json;
using namespace wigrot;

namespace {

struct Overrides {
  std::string config;
  std::string preset;
  std::optional<double> rs, b, l, r_start, r_end, step;
  std::string format;
  std::string out;
};

void add_scenario_flags(CLI::App* cmd, Overrides& o, const std::string& default_preset) {
  o.preset = default_preset;
  cmd->add_option("--config", o.config, "Scenario JSON file");
  cmd->add_option("--preset", o.preset, "Named scenario")->capture_default_str();
  cmd->add_option("--rs", o.rs, "Schwarzschild radius");
  cmd->add_option("--b", o.b, "Photon impact parameter");
  cmd->add_option("--l", o.l, "Observer angular momentum");
  cmd->add_option("--r-start", o.r_start, "Starting radius");
  cmd->add_option("--r-end", o.r_end, "Final radius");
  cmd->add_option("--step", o.step, "Affine step");
}

void add_output_flags(CLI::App* cmd, Overrides& o, const std::string& default_format) {
  o.format = default_format;
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  cmd->add_option("--out", o.out, "Output file (default: stdout)");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

ScenarioConfig resolve(const Overrides& o) {
  ScenarioConfig c = o.config.empty() ? scenario_preset(o.preset) : scenario_from_json(read_file(o.config));
  if (o.rs) c.metric.r_s = *o.rs;
  if (o.b) c.photon.b_ph = *o.b;
  if (o.l) c.observer.l_obs = *o.l;
  if (o.r_start) c.r_start = *o.r_start;
  if (o.r_end) c.r_end = *o.r_end;
  if (o.step) c.step = *o.step;
  if (!o.format.empty()) c.format = output_format_from_string(o.format);
  if (!o.out.empty()) c.out_path = o.out;
  validate_config(c);
  return c;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty())
    std::cout << text;
  else
    write_text_file(path, text);
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ConfigError, "bad number '" + item + "' in list '" + s + "'");
    }
  }
  if (out.empty()) throw Error(ErrorCode::ConfigError, "empty list");
  return out;
}

struct FlatOverrides {
  std::string boost_dir, k_dir;
  std::optional<double> rapidity;
  bool any() const { return !boost_dir.empty() || !k_dir.empty() || rapidity.has_value(); }
};

Vec3 parse_direction(const std::string& s, const char* what) {
  const std::vector<double> v = parse_list(s);
  if (v.size() != 3) throw Error(ErrorCode::ConfigError, std::string(what) + " needs three components");
  const Vec3 d(v[0], v[1], v[2]);
  if (!(d.norm() > 0.0)) throw Error(ErrorCode::ConfigError, std::string(what) + " must be nonzero");
  return d.normalized();
}

int flat_wigner(const std::string& name, const FlatOverrides& f, const Overrides& o) {
  if (!is_flat_preset(name)) throw Error(ErrorCode::ConfigError, "unknown flat case '" + name + "'");
  FlatCase c = flat_preset(name);
  // Explicit geometry replaces the preset's, which then has no reference value.
  const bool custom = f.any();
  if (custom) {
    c.name = "custom";
    if (!f.boost_dir.empty()) c.boost.direction = parse_direction(f.boost_dir, "--boost-dir");
    if (f.rapidity) c.boost.rapidity = *f.rapidity;
    if (!f.k_dir.empty()) c.k_hat = parse_direction(f.k_dir, "--k");
  }
  const FlatWigner w = wigner_angle_flat_detail(c.boost, c.k_hat);
  if (o.format == "csv") {
    emit("case,psi,psi_polarization,psi_sl2c,aberration,expected\n" + c.name + "," + format_number(w.psi) + "," +
             format_number(w.psi_polarization) + "," + format_number(w.psi_sl2c) + "," +
             format_number(w.aberration) + "," + (custom ? "" : format_number(c.expected_psi)) + "\n",
         o.out);
    return 0;
  }
  json j;
  j["case"] = c.name;
  j["boost"] = {{"direction", {c.boost.direction[0], c.boost.direction[1], c.boost.direction[2]}},
                {"rapidity", c.boost.rapidity}};
  j["k_hat"] = {c.k_hat[0], c.k_hat[1], c.k_hat[2]};
  j["psi"] = w.psi;
  j["psi_polarization"] = w.psi_polarization;
  j["psi_sl2c"] = w.psi_sl2c;
  j["aberration"] = w.aberration;
  j["expected"] = custom ? json(nullptr) : json(c.expected_psi);
  emit(detail::dump_json(j), o.out);
  return 0;
}

int schwarzschild_psi(const Overrides& o) {
  const ScenarioConfig c = resolve(o);
  const ScenarioRun run = run_scenario(c);
  if (c.format == OutputFormat::Json) {
    emit(to_json(run.result), c.out_path);
  } else {
    std::ostringstream os;
    write_profile_csv(os, run.result);
    emit(os.str(), c.out_path);
  }
  return 0;
}

int sweep(const Overrides& o, const std::string& b_list, const std::string& l_list, const std::string& r_list,
          int threads) {
  const ScenarioConfig c = resolve(o);
  const std::vector<double> radii = r_list.empty() ? std::vector<double>{c.r_start} : parse_list(r_list);
  const auto cells = run_sweep(c, parse_list(b_list), parse_list(l_list), radii, threads);
  if (c.format == OutputFormat::Json) {
    json a = json::array();
    for (const auto& s : cells)
      a.push_back({{"b", s.b_ph}, {"l", s.l_obs}, {"r", s.r}, {"psi_tilde", s.psi_tilde}, {"reference", s.reference}});
    emit(detail::dump_json(json{{"cells", a}}), c.out_path);
    return 0;
  }
  std::string text = "b,l,r,psi_tilde,reference\n";
  for (const auto& s : cells)
    text += format_number(s.b_ph) + "," + format_number(s.l_obs) + "," + format_number(s.r) + "," +
            format_number(s.psi_tilde) + "," + format_number(s.reference) + "\n";
  emit(text, c.out_path);
  return 0;
}

int bell_evolve(const Overrides& o) {
  const ScenarioConfig c = resolve(o);
  PhotonScenario second = c.photon;
  second.kind = PhotonKind::RadialEquatorial;
  second.b_ph = 0.0;
  const BellRun r = run_bell_evolution(c, second, BellPair{});
  json j;
  j["scenario"] = c.name;
  j["psi_1"] = r.psi_1;
  j["psi_2"] = r.psi_2;
  j["relative_phase"] = {r.relative_phase.real(), r.relative_phase.imag()};
  j["deviation_from_unity"] = std::abs(r.relative_phase - Complex(1.0, 0.0));
  emit(detail::dump_json(j), c.out_path);
  return 0;
}

int validate(const Overrides& o) {
  MetricConfig cfg;
  if (o.rs) cfg.r_s = *o.rs;
  const auto results = run_validation(cfg);
  json a = json::array();
  for (const auto& r : results)
    a.push_back({{"name", r.name}, {"passed", r.passed}, {"value", r.value}, {"tolerance", r.tolerance}});
  const bool ok = all_passed(results);
  emit(detail::dump_json(json{{"passed", ok}, {"checks", a}}), o.out);
  return ok ? 0 : 1;
}

void print_error(const std::string& code, const std::string& message) {
  std::cerr << detail::dump_json(json{{"error", {{"code", code}, {"message", message}}}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wigner rotation of photons in Schwarzschild spacetime"};
  app.require_subcommand(1);

  Overrides flat_o, psi_o, sweep_o, bell_o, val_o;
  std::string flat_case = "flat-transverse";
  auto* flat = app.add_subcommand("flat-wigner", "Flat-space Wigner angle for a named or explicit boost");
  FlatOverrides flat_geom;
  flat->add_option("--case,--preset", flat_case, "Case name")->capture_default_str();
  flat->add_option("--boost-dir", flat_geom.boost_dir, "Boost direction x,y,z (normalized)");
  flat->add_option("--rapidity", flat_geom.rapidity, "Boost rapidity");
  flat->add_option("--k", flat_geom.k_dir, "Photon direction x,y,z (normalized)");
  add_output_flags(flat, flat_o, "json");

  auto* psi = app.add_subcommand("schwarzschild-psi", "Accumulate the Wigner angle along a photon path");
  add_scenario_flags(psi, psi_o, "radial-stationary");
  add_output_flags(psi, psi_o, "csv");

  std::string b_list, l_list, r_list;
  int threads = 1;
  auto* sw = app.add_subcommand("sweep", "Pointwise angle over a (b, l, r) grid");
  add_scenario_flags(sw, sweep_o, "cross-plane");
  add_output_flags(sw, sweep_o, "csv");
  sw->add_option("--b-list", b_list, "Comma-separated impact parameters")->required();
  sw->add_option("--l-list", l_list, "Comma-separated observer angular momenta")->required();
  sw->add_option("--r-list", r_list, "Comma-separated radii (default: r-start)");
  sw->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();

  auto* bell = app.add_subcommand("bell-evolve", "Relative phase of a helicity Bell pair");
  add_scenario_flags(bell, bell_o, "equatorial-fff-l");
  add_output_flags(bell, bell_o, "json");

  auto* val = app.add_subcommand("validate", "Run the invariant suite");
  val->add_option("--rs", val_o.rs, "Schwarzschild radius");
  val->add_option("--out", val_o.out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("UsageError", e.what());
    return 2;
  }

  try {
    if (*flat) return flat_wigner(flat_case, flat_geom, flat_o);
    if (*psi) return schwarzschild_psi(psi_o);
    if (*sw) return sweep(sweep_o, b_list, l_list, r_list, threads);
    if (*bell) return bell_evolve(bell_o);
    if (*val) return validate(val_o);
  } catch (const Error& e) {
    print_error(to_string(e.code()), e.what());
    return 3;
  } catch (const std::exception& e) {
    print_error("InternalError", e.what());
    return 4;
  }
  return 0;
}
