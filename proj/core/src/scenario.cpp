#include "wigrot/scenario.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

#include "json_text.hpp"
#include "wigrot/error.hpp"

namespace wigrot {

using nlohmann::json;

namespace {

const char* integrator_name(Integrator i) { return i == Integrator::ClosedForm ? "closed_form" : "geodesic_rk4"; }

Integrator integrator_from_string(const std::string& s) {
  if (s == "closed_form") return Integrator::ClosedForm;
  if (s == "geodesic_rk4") return Integrator::GeodesicRK4;
  throw Error(ErrorCode::ConfigError, "unknown integrator '" + s + "'");
}

ScenarioConfig make(const std::string& name, PhotonKind pk, double b, TetradKind tk, double l, double r0, double r1) {
  ScenarioConfig c;
  c.name = name;
  c.photon.kind = pk;
  c.photon.b_ph = b;
  c.observer.kind = tk;
  c.observer.l_obs = l;
  c.r_start = r0;
  c.r_end = r1;
  return c;
}

// Canonical preset name for a name or its legacy alias.
std::string canonical(const std::string& name) {
  static const std::map<std::string, std::string> alias = {
      {"eq28-stationary", "radial-stationary"},   {"eq28-fff", "radial-fff"},
      {"eq33-eq35-equatorial", "equatorial-fff-l"}, {"eq37-eq38-crossplane", "cross-plane"},
      {"figA1", "flat-longitudinal"},             {"figA2", "flat-transverse"},
      {"figA3", "flat-infinitesimal"},
  };
  const auto it = alias.find(name);
  return it == alias.end() ? name : it->second;
}

}  // namespace

void validate_config(const ScenarioConfig& c) {
  if (!(c.metric.r_s >= 0.0)) throw Error(ErrorCode::ConfigError, "r_s must be non-negative");
  if (!(c.step > 0.0)) throw Error(ErrorCode::ConfigError, "step must be positive");
  if (!(c.r_start > c.r_end)) throw Error(ErrorCode::ConfigError, "r_start must exceed r_end");
  if (!(c.r_end > c.metric.rs() * (1.0 + c.metric.guard)))
    throw Error(ErrorCode::ConfigError, "r_end must lie outside the horizon guard band");
  if (!(c.photon.omega > 0.0)) throw Error(ErrorCode::ConfigError, "omega must be positive");
  if (c.photon.b_ph < 0.0) throw Error(ErrorCode::ConfigError, "b_ph must be non-negative");
}

ScenarioConfig scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("invalid JSON: ") + e.what());
  }
  ScenarioConfig c;
  try {
    if (j.contains("preset")) c = scenario_preset(j.at("preset").get<std::string>());
    c.name = j.value("name", c.name);
    if (j.contains("metric")) {
      const auto& m = j.at("metric");
      c.metric.r_s = m.value("r_s", c.metric.r_s);
      c.metric.flat_limit = m.value("flat_limit", c.metric.flat_limit);
      c.metric.guard = m.value("guard", c.metric.guard);
    }
    if (j.contains("observer")) {
      const auto& o = j.at("observer");
      if (o.contains("kind")) c.observer.kind = tetrad_kind_from_string(o.at("kind").get<std::string>());
      c.observer.l_obs = o.value("l_obs", c.observer.l_obs);
    }
    if (j.contains("photon")) {
      const auto& p = j.at("photon");
      if (p.contains("kind")) c.photon.kind = photon_kind_from_string(p.at("kind").get<std::string>());
      c.photon.b_ph = p.value("b_ph", c.photon.b_ph);
      c.photon.omega = p.value("omega", c.photon.omega);
    }
    if (j.contains("r_range")) {
      c.r_start = j.at("r_range").at(0).get<double>();
      c.r_end = j.at("r_range").at(1).get<double>();
    }
    c.step = j.value("step", c.step);
    if (j.contains("integrator")) c.integrator = integrator_from_string(j.at("integrator").get<std::string>());
    if (j.contains("output")) {
      const auto& o = j.at("output");
      if (o.contains("format")) c.format = output_format_from_string(o.at("format").get<std::string>());
      c.out_path = o.value("path", c.out_path);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("bad config field: ") + e.what());
  }
  validate_config(c);
  return c;
}

std::string scenario_to_json(const ScenarioConfig& c) {
  json j;
  j["name"] = c.name;
  j["metric"] = {{"r_s", c.metric.r_s}, {"flat_limit", c.metric.flat_limit}, {"guard", c.metric.guard}};
  j["observer"] = {{"kind", to_string(c.observer.kind)}, {"l_obs", c.observer.l_obs}};
  j["photon"] = {{"kind", to_string(c.photon.kind)}, {"b_ph", c.photon.b_ph}, {"omega", c.photon.omega}};
  j["r_range"] = {c.r_start, c.r_end};
  j["step"] = c.step;
  j["integrator"] = integrator_name(c.integrator);
  j["output"] = {{"format", c.format == OutputFormat::Csv ? "csv" : "json"}, {"path", c.out_path}};
  return detail::dump_json(j);
}

std::vector<std::string> preset_names() {
  return {"radial-stationary", "radial-fff",        "equatorial-fff-l",  "cross-plane",
          "flat-longitudinal", "flat-transverse",   "flat-infinitesimal"};
}

bool is_flat_preset(const std::string& name) { return canonical(name).rfind("flat-", 0) == 0; }

ScenarioConfig scenario_preset(const std::string& raw) {
  const std::string name = canonical(raw);
  if (name == "radial-stationary")
    return make(name, PhotonKind::RadialEquatorial, 0.0, TetradKind::Stationary, 0.0, 10.0, 2.0);
  if (name == "radial-fff")
    return make(name, PhotonKind::RadialEquatorial, 0.0, TetradKind::RadialFFF, 0.0, 10.0, 2.0);
  if (name == "equatorial-fff-l")
    return make(name, PhotonKind::EquatorialWithB, 2.0, TetradKind::FFFWithL, 0.5, 10.0, 3.0);
  if (name == "cross-plane")
    return make(name, PhotonKind::PolarPlaneFirstOrder, 1e-3, TetradKind::FFFWithLFirstOrder, 1e-3, 20.0, 5.0);
  throw Error(ErrorCode::ConfigError, "unknown scenario preset '" + raw + "'");
}

FlatCase flat_preset(const std::string& raw) {
  const std::string name = canonical(raw);
  FlatCase c;
  c.name = name;
  if (name == "flat-longitudinal") {
    // Photon along z, boost along x: no rotation for any rapidity.
    c.boost = {Vec3::UnitX(), 0.7};
    c.k_hat = Vec3::UnitZ();
    c.expected_psi = 0.0;
    return c;
  }
  if (name == "flat-transverse") {
    // Photon along x, frame moving along +y: the photon direction turns by
    // the aberration angle and the phase equals minus that angle.
    c.boost = {Vec3::UnitY(), -0.5};
    c.k_hat = Vec3::UnitX();
    const Vec4 kp = boost_matrix(c.boost) * Vec4(1.0, 1.0, 0.0, 0.0);
    c.expected_psi = -std::atan2(kp[2], kp[1]);
    return c;
  }
  if (name == "flat-infinitesimal") {
    // Photon in the x-y plane at azimuth phi, frame moving with speed
    // dtheta along a direction in the y-z plane at polar angle theta.
    const double theta = 0.6, phi = 0.4, dtheta = 1e-4;
    c.boost = {Vec3(0.0, std::sin(theta), std::cos(theta)), -dtheta};
    c.k_hat = Vec3(std::cos(phi), std::sin(phi), 0.0);
    c.expected_psi = dtheta * std::sin(theta) * std::cos(phi);
    return c;
  }
  throw Error(ErrorCode::ConfigError, "unknown flat preset '" + raw + "'");
}

TetradField make_observer_field(const ScenarioConfig& c) {
  switch (c.observer.kind) {
    case TetradKind::Stationary: return stationary_field(c.metric);
    case TetradKind::RadialFFF: return radial_fff_field(c.metric);
    case TetradKind::FFFWithL: return fff_l_field(c.metric, c.observer.l_obs, c.r_start);
    case TetradKind::FFFWithLFirstOrder: return fff_l_first_order_field(c.metric, c.observer.l_obs);
    case TetradKind::RadialFermiWalker: return radial_fermi_walker_field(c.metric);
    case TetradKind::Custom: break;
  }
  throw Error(ErrorCode::ConfigError, "custom observer frames cannot be configured from JSON");
}

namespace {

Trajectory trace(const ScenarioConfig& c, const PhotonScenario& photon) {
  if (c.integrator == Integrator::ClosedForm) return trace_scenario(c.metric, photon, c.r_start, c.r_end, c.step);
  if (photon.kind == PhotonKind::PolarPlaneFirstOrder)
    throw Error(ErrorCode::ConfigError, "the first-order photon is not a geodesic; use the closed_form integrator");
  const SpacetimePoint x0 = scenario_start_point(photon, c.r_start);
  IntegrationOptions opts;
  opts.r_stop = c.r_end;
  opts.r_stop_outward = c.r_start;
  const int max_steps = static_cast<int>(std::ceil(100.0 * (c.r_start - c.r_end) / c.step)) + 10;
  return integrate_geodesic(c.metric, x0, photon_momentum(c.metric, photon, x0), c.step, max_steps,
                            GeodesicKind::Null, opts);
}

}  // namespace

ScenarioRun run_scenario(const ScenarioConfig& c) {
  validate_config(c);
  ScenarioRun run;
  run.trajectory = trace(c, c.photon);
  run.result = accumulate_along_trajectory(c.metric, run.trajectory, make_observer_field(c));
  return run;
}

PointwiseWigner intersection_event_wigner(const ScenarioConfig& c, double r) {
  const double half_pi = 0.5 * std::numbers::pi;
  const SpacetimePoint x(0.0, r, half_pi, half_pi);
  return pointwise_wigner(c.metric, make_observer_field(c), photon_momentum(c.metric, c.photon, x), x);
}

std::vector<SweepCell> run_sweep(const ScenarioConfig& base, const std::vector<double>& b_values,
                                 const std::vector<double>& l_values, const std::vector<double>& radii,
                                 int threads) {
  std::vector<SweepCell> cells;
  for (double b : b_values)
    for (double l : l_values)
      for (double r : radii) cells.push_back({b, l, r, 0.0, 0.0});

  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (size_t i = next++; i < cells.size(); i = next++) {
      try {
        ScenarioConfig c = base;
        c.photon.b_ph = cells[i].b_ph;
        c.observer.l_obs = cells[i].l_obs;
        cells[i].psi_tilde = intersection_event_wigner(c, cells[i].r).psi_tilde;
        cells[i].reference = cross_plane_psi_closed_form(c.metric, cells[i].r, cells[i].b_ph, cells[i].l_obs);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int n = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return cells;
}

BellRun run_bell_evolution(const ScenarioConfig& c, const PhotonScenario& second, const BellPair& pair) {
  validate_config(c);
  const TetradField field = make_observer_field(c);
  const BellEvolution ev = evolve_bell_pair_finite(c.metric, pair, trace(c, c.photon), trace(c, second), field);
  return {ev.relative_phase, ev.photon1.psi_total, ev.photon2.psi_total};
}

}  // namespace wigrot
