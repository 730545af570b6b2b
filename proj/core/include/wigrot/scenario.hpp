#pragma once

// Scenario configuration (JSON) and the named presets used by the CLI.

#include <optional>
#include <string>
#include <vector>

#include "wigrot/flat_sr.hpp"
#include "wigrot/geodesics.hpp"
#include "wigrot/io.hpp"
#include "wigrot/quantum.hpp"
#include "wigrot/tetrads.hpp"
#include "wigrot/wigner.hpp"

namespace wigrot {

struct ObserverConfig {
  TetradKind kind = TetradKind::Stationary;
  double l_obs = 0.0;
};

enum class Integrator { ClosedForm, GeodesicRK4 };

struct ScenarioConfig {
  std::string name;
  MetricConfig metric;
  ObserverConfig observer;
  PhotonScenario photon;
  double r_start = 10.0;
  double r_end = 5.0;
  double step = 1e-3;
  Integrator integrator = Integrator::ClosedForm;
  OutputFormat format = OutputFormat::Csv;
  std::string out_path;
};

// Checks r_start > r_end > r_s (1 + guard) and step > 0; throws ConfigError.
void validate_config(const ScenarioConfig& cfg);

ScenarioConfig scenario_from_json(const std::string& text);
std::string scenario_to_json(const ScenarioConfig& cfg);

struct FlatCase {
  std::string name;
  Boost boost;
  Vec3 k_hat = Vec3::UnitZ();
  // Angle the reference formula predicts for this case.
  double expected_psi = 0.0;
};

// Curved-space presets: "radial-stationary", "radial-fff", "equatorial-fff-l",
// "cross-plane". Flat presets: "flat-longitudinal", "flat-transverse",
// "flat-infinitesimal". Each also answers to a legacy alias (see README).
std::vector<std::string> preset_names();
bool is_flat_preset(const std::string& name);
ScenarioConfig scenario_preset(const std::string& name);
FlatCase flat_preset(const std::string& name);

TetradField make_observer_field(const ScenarioConfig& cfg);

struct ScenarioRun {
  Trajectory trajectory;
  WignerResult result;
};

ScenarioRun run_scenario(const ScenarioConfig& cfg);

// Photon and observer worldlines meet at t = 0, theta = phi = pi/2.
PointwiseWigner intersection_event_wigner(const ScenarioConfig& cfg, double r);

struct SweepCell {
  double b_ph = 0.0;
  double l_obs = 0.0;
  double r = 0.0;
  double psi_tilde = 0.0;
  double reference = 0.0;  // cross_plane_psi_closed_form
};

// Grid over b x l x r evaluated at intersection events on `threads` workers;
// results are returned in grid order.
std::vector<SweepCell> run_sweep(const ScenarioConfig& base, const std::vector<double>& b_values,
                                 const std::vector<double>& l_values, const std::vector<double>& radii,
                                 int threads);

struct BellRun {
  Complex relative_phase;
  double psi_1 = 0.0;
  double psi_2 = 0.0;
};

// Photon 1 follows cfg.photon, photon 2 the given scenario; both are traced
// over the configured radial range and observed by the configured frames.
BellRun run_bell_evolution(const ScenarioConfig& cfg, const PhotonScenario& second, const BellPair& pair);

}  // namespace wigrot
