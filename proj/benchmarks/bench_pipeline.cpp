#include <benchmark/benchmark.h>

#include <numbers>

#include "wigrot/flat_sr.hpp"
#include "wigrot/scenario.hpp"

using namespace wigrot;

namespace {

const MetricConfig kCfg;

void BM_PointwiseWigner(benchmark::State& state) {
  const TetradField field = fff_l_field(kCfg, 0.5, 10.0);
  const PhotonScenario photon{PhotonKind::EquatorialWithB, 2.0, 1.0, Branch::Inbound};
  const SpacetimePoint x(0.0, 6.0, 0.5 * std::numbers::pi, 0.3);
  const FourVector k = photon_momentum(kCfg, photon, x);
  for (auto _ : state) benchmark::DoNotOptimize(pointwise_wigner(kCfg, field, k, x));
}
BENCHMARK(BM_PointwiseWigner);

void BM_GeodesicRK4(benchmark::State& state) {
  const PhotonScenario photon{PhotonKind::EquatorialWithB, 4.0, 1.0, Branch::Inbound};
  const SpacetimePoint x0 = scenario_start_point(photon, 10.0);
  const FourVector k0 = photon_momentum(kCfg, photon, x0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate_geodesic(kCfg, x0, k0, 1e-3, n, GeodesicKind::Null));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_GeodesicRK4)->Arg(1000)->Arg(10000);

void BM_Scenario(benchmark::State& state, const char* preset) {
  ScenarioConfig c = scenario_preset(preset);
  c.r_end = c.r_start - 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(c));
}
BENCHMARK_CAPTURE(BM_Scenario, radial_stationary, "radial-stationary");
BENCHMARK_CAPTURE(BM_Scenario, equatorial_fff_l, "equatorial-fff-l");
BENCHMARK_CAPTURE(BM_Scenario, cross_plane, "cross-plane");

void BM_FlatWigner(benchmark::State& state) {
  const FlatCase c = flat_preset("flat-infinitesimal");
  for (auto _ : state) benchmark::DoNotOptimize(wigner_angle_flat(c.boost, c.k_hat));
}
BENCHMARK(BM_FlatWigner);

}  // namespace

BENCHMARK_MAIN();
