#include <cmath>
#include <cstdio>
#include <sstream>

#include "doctest.h"
#include "wigrot/error.hpp"
#include "wigrot/io.hpp"
#include "wigrot/scenario.hpp"
#include "wigrot/validation.hpp"

using namespace wigrot;

namespace {
size_t count_lines(const std::string& s) { return static_cast<size_t>(std::count(s.begin(), s.end(), '\n')); }
}  // namespace

TEST_CASE("profile CSV") {
  std::ostringstream empty;
  write_profile_csv(empty, WignerResult{});
  CHECK(empty.str() == "xi,r,theta,phi,n1,n2,n3,psi_tilde,psi_cumulative,null_residual\n");

  const ScenarioRun run = run_scenario(scenario_preset("radial-stationary"));
  std::ostringstream os;
  write_profile_csv(os, run.result);
  CHECK(count_lines(os.str()) == run.trajectory.samples.size() + 1);
  CHECK(os.str().find('\r') == std::string::npos);
  for (const auto& s : run.result.samples) CHECK(std::abs(s.psi_tilde) < 1e-9);

  std::ostringstream traj;
  write_trajectory_csv(traj, run.trajectory);
  CHECK(traj.str().rfind("xi,t,r,theta,phi,kt,kr,ktheta,kphi,null_residual\n", 0) == 0);
  CHECK(count_lines(traj.str()) == run.trajectory.samples.size() + 1);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(-2.0) == "-2");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("JSON round trips") {
  ScenarioConfig c = scenario_preset("equatorial-fff-l");
  c.r_end = 9.0;
  const ScenarioRun run = run_scenario(c);
  const WignerResult back = wigner_result_from_json(to_json(run.result));
  CHECK(back.psi_total == run.result.psi_total);
  CHECK(back.samples.size() == run.result.samples.size());
  CHECK(back.samples.back().psi_cumulative == run.result.samples.back().psi_cumulative);
  CHECK(back.frame_transform == run.result.frame_transform);
  CHECK(to_json(back) == to_json(run.result));

  const Tetrad t = fff_l_tetrad({}, SpacetimePoint(0, 6, 1.2, 0.3), 0.4, 0.2);
  const Tetrad tb = tetrad_from_json(to_json(t));
  CHECK(tb.legs == t.legs);
  CHECK(tb.kind == t.kind);
  CHECK(tb.params == t.params);

  PhotonWavePacket p;
  p.polarization_angle = 0.7;
  const HelicityDensityMatrix rho = reduced_density_single(p);
  CHECK(density_matrix_from_json(to_json(rho)).rho == rho.rho);
  CHECK(to_json(rho).find("\"basis\"") != std::string::npos);
}

TEST_CASE("scenario configuration") {
  const ScenarioConfig c = scenario_from_json(R"({
    "metric": {"r_s": 2.0},
    "observer": {"kind": "FFFWithL", "l_obs": 0.25},
    "photon": {"kind": "EquatorialWithB", "b_ph": 3.0, "omega": 1.5},
    "r_range": [30, 8],
    "step": 0.002,
    "output": {"format": "json", "path": "x.json"}
  })");
  CHECK(c.metric.r_s == 2.0);
  CHECK(c.observer.kind == TetradKind::FFFWithL);
  CHECK(c.photon.kind == PhotonKind::EquatorialWithB);
  CHECK(c.photon.omega == 1.5);
  CHECK(c.r_start == 30);
  CHECK(c.format == OutputFormat::Json);
  CHECK(scenario_to_json(scenario_from_json(scenario_to_json(c))) == scenario_to_json(c));

  const ScenarioConfig p = scenario_from_json(R"({"preset": "eq28-fff", "step": 0.01})");
  CHECK(p.observer.kind == TetradKind::RadialFFF);
  CHECK(p.step == 0.01);

  for (const char* bad : {R"({"r_range": [5, 10]})", R"({"step": -1})", R"({"r_range": [10, 1.0000001]})",
                          R"({"photon": {"kind": "Nope"}})", R"({"step": "x"})", "{not json"}) {
    try {
      scenario_from_json(bad);
      FAIL("expected ConfigError for " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ConfigError);
    }
  }
}

TEST_CASE("presets and aliases") {
  for (const auto& n : preset_names()) {
    if (is_flat_preset(n))
      CHECK(flat_preset(n).name == n);
    else
      CHECK(scenario_preset(n).name == n);
  }
  CHECK(scenario_preset("eq37-eq38-crossplane").name == "cross-plane");
  CHECK(flat_preset("figA1").name == "flat-longitudinal");
  CHECK_THROWS_AS(scenario_preset("nope"), Error);
}

TEST_CASE("sweep is deterministic and ordered") {
  const ScenarioConfig c = scenario_preset("cross-plane");
  const std::vector<double> b{0.0, 1e-3, 2e-3}, l{1e-3, -1e-3}, r{5, 10, 20};
  const auto one = run_sweep(c, b, l, r, 1);
  const auto many = run_sweep(c, b, l, r, 5);
  REQUIRE(one.size() == 18);
  for (size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].psi_tilde == many[i].psi_tilde);
    CHECK(one[i].r == many[i].r);
  }
  for (const auto& cell : one)
    if (cell.b_ph == 0.0) CHECK(cell.psi_tilde == 0.0);
  CHECK(one[0].b_ph == 0.0);
  CHECK(one[0].l_obs == 1e-3);
  CHECK(one[1].r == 10);
}

TEST_CASE("profile emission") {
  const std::string path = "wigrot_test_profile.csv";
  emit_profile(WignerResult{}, OutputFormat::Csv, path);
  std::FILE* f = std::fopen(path.c_str(), "rb");
  REQUIRE(f != nullptr);
  std::fclose(f);
  std::remove(path.c_str());
  try {
    emit_profile(WignerResult{}, OutputFormat::Json, "/nonexistent-dir/x.json");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
    CHECK(std::string(e.what()).find("/nonexistent-dir/x.json") != std::string::npos);
  }
}

TEST_CASE("validation suite passes") {
  const auto results = run_validation();
  CHECK(results.size() > 10);
  for (const auto& r : results) {
    INFO(r.name << " = " << r.value);
    CHECK(r.passed);
  }
  CHECK(all_passed(results));
}
