#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wigrot/error.hpp"
#include "wigrot/geodesics.hpp"
#include "wigrot/tetrads.hpp"

using namespace wigrot;
namespace {
const double kHalfPi = 0.5 * std::numbers::pi;
const MetricConfig kCfg;

double conserved_energy(const TrajectorySample& s) { return (1 - 1 / s.x.r()) * s.k[0]; }
double conserved_l(const TrajectorySample& s) { return s.x.r() * s.x.r() * s.k[3]; }

// Coordinate time of the radial infall, t(r) up to a constant.
double radial_t(double r) { return -(r + std::log(r - 1)); }
}  // namespace

TEST_CASE("closed-form photon momenta") {
  const SpacetimePoint x(0, 2, kHalfPi, 0);
  CHECK((photon_momentum(kCfg, {}, x).c - Vec4(2, -1, 0, 0)).cwiseAbs().maxCoeff() < 1e-15);
  const PhotonScenario b0{PhotonKind::EquatorialWithB, 0.0, 1.0, Branch::Inbound};
  CHECK((photon_momentum(kCfg, b0, x).c - photon_momentum(kCfg, {}, x).c).cwiseAbs().maxCoeff() == 0.0);

  const PhotonScenario b3{PhotonKind::EquatorialWithB, 3.0, 1.0, Branch::Inbound};
  const SpacetimePoint x10(0, 10, kHalfPi, 0);
  const FourVector k = photon_momentum(kCfg, b3, x10);
  CHECK(k[1] == doctest::Approx(-std::sqrt(0.919)).epsilon(1e-15));
  CHECK(k[3] == doctest::Approx(0.03).epsilon(1e-15));
  CHECK(std::abs(inner(kCfg, x10, k, k)) < 1e-12);

  const PhotonScenario polar{PhotonKind::PolarPlaneWithB, 3.0, 1.0, Branch::Inbound};
  const SpacetimePoint xp(0, 10, 1.0, kHalfPi);
  const FourVector kp = photon_momentum(kCfg, polar, xp);
  CHECK(kp[2] == doctest::Approx(0.03));
  CHECK(std::abs(inner(kCfg, xp, kp, kp)) < 1e-12);

  // Dropping O(b^2) leaves a residual of that order.
  const PhotonScenario first{PhotonKind::PolarPlaneFirstOrder, 1e-3, 1.0, Branch::Inbound};
  const FourVector k1 = photon_momentum(kCfg, first, xp);
  CHECK(k1[1] == doctest::Approx(-1.0));
  CHECK(std::abs(inner(kCfg, xp, k1, k1)) < 1e-7);

  try {
    photon_momentum(kCfg, PhotonScenario{PhotonKind::EquatorialWithB, 5.0, 1.0, Branch::Inbound},
                    SpacetimePoint(0, 3, kHalfPi, 0));
    FAIL("expected TurningPointReached");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TurningPointReached);
  }
}

TEST_CASE("geodesic equation residual of closed forms") {
  for (double r : {2.0, 3.0, 10.0, 50.0, 100.0}) {
    CHECK(geodesic_residual(kCfg, {}, SpacetimePoint(0, r, kHalfPi, 0)) < 1e-8);
    CHECK(geodesic_residual(kCfg, {PhotonKind::EquatorialWithB, 2.0, 1.0, Branch::Inbound},
                            SpacetimePoint(0, r, kHalfPi, 0)) < 1e-8);
    CHECK(geodesic_residual(kCfg, {PhotonKind::PolarPlaneWithB, 2.0, 1.0, Branch::Inbound},
                            SpacetimePoint(0, r, 1.1, kHalfPi)) < 1e-8);
  }
}

TEST_CASE("effective potentials") {
  const PhotonPotential p = photon_effective_potential(kCfg, 1.5);
  CHECK(p.critical_b_squared == doctest::Approx(27 * 0.25));
  CHECK(p.w_eff == doctest::Approx(1.0 / p.critical_b_squared));
  CHECK(photon_effective_potential(kCfg, 1.49).w_eff < p.w_eff);
  CHECK(photon_effective_potential(kCfg, 1.51).w_eff < p.w_eff);
  CHECK(photon_effective_potential(kCfg, 2.0).w_eff == doctest::Approx(0.125));
  CHECK(photon_effective_potential(kCfg, 1e12).w_eff < 1e-23);

  CHECK(observer_effective_potential(kCfg, 10, 0.0) == doctest::Approx(-0.05));
  CHECK(observer_effective_potential(kCfg, 10, 1.0) == doctest::Approx(-0.0455));
  for (double r : {3.0, 7.0, 20.0})
    for (double l : {0.0, 0.5, 1.2}) {
      const double u = observer_radial_velocity(kCfg, r, l);
      CHECK(std::abs(0.5 * u * u + observer_effective_potential(kCfg, r, l)) < 1e-12);
    }
}

TEST_CASE("RK4 radial infall keeps k^t exact") {
  const SpacetimePoint x0(0, 10, kHalfPi, 0);
  const Trajectory tr = integrate_geodesic(kCfg, x0, photon_momentum(kCfg, {}, x0), 1e-3, 5000, GeodesicKind::Null);
  REQUIRE(tr.samples.size() == 5001);
  for (size_t i = 1; i < tr.samples.size(); ++i) {
    const auto& s = tr.samples[i];
    CHECK(s.x.r() < tr.samples[i - 1].x.r());
    CHECK(std::abs(s.k[0] * (1 - 1 / s.x.r()) - 1.0) < 1e-8);
  }
}

TEST_CASE("flat-space straight lines") {
  MetricConfig flat;
  flat.flat_limit = true;
  const SpacetimePoint x0(0, 10, kHalfPi, 0);
  const FourVector k0 = photon_momentum(flat, {}, x0);
  const Trajectory tr = integrate_geodesic(flat, x0, k0, 1e-2, 500, GeodesicKind::Null);
  CHECK((tr.samples.back().k.c - k0.c).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(tr.samples.back().x.r() == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("null residual and conserved quantities over 1e4 steps") {
  const PhotonScenario s{PhotonKind::EquatorialWithB, 2.0, 1.0, Branch::Inbound};
  const SpacetimePoint x0 = scenario_start_point(s, 20.0);
  const Trajectory tr =
      integrate_geodesic(kCfg, x0, photon_momentum(kCfg, s, x0), 1e-3, 10000, GeodesicKind::Null);
  REQUIRE(tr.samples.size() == 10001);
  const double e0 = conserved_energy(tr.samples.front()), l0 = conserved_l(tr.samples.front());
  double worst_null = 0, worst_e = 0, worst_l = 0;
  for (const auto& smp : tr.samples) {
    worst_null = std::max(worst_null, std::abs(smp.norm_residual) / (smp.k[0] * smp.k[0]));
    worst_e = std::max(worst_e, std::abs(conserved_energy(smp) / e0 - 1));
    worst_l = std::max(worst_l, std::abs(conserved_l(smp) / l0 - 1));
  }
  CHECK(worst_null < 1e-8);
  CHECK(worst_e < 1e-9);
  CHECK(worst_l < 1e-9);
}

TEST_CASE("RK4 global error is fourth order") {
  const SpacetimePoint x0(0, 10, kHalfPi, 0);
  const double xi_end = 6.0;
  auto error = [&](double h) {
    const int n = static_cast<int>(std::lround(xi_end / h));
    const Trajectory tr = integrate_geodesic(kCfg, x0, photon_momentum(kCfg, {}, x0), h, n, GeodesicKind::Null);
    const auto& s = tr.samples.back();
    return std::abs(s.x.t() - (radial_t(s.x.r()) - radial_t(10.0)));
  };
  const double ratio = error(0.2) / error(0.1);
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("photon above the critical impact parameter turns back") {
  const PhotonScenario s{PhotonKind::EquatorialWithB, 4.0, 1.0, Branch::Inbound};
  const SpacetimePoint x0 = scenario_start_point(s, 10.0);
  IntegrationOptions opts;
  opts.r_stop_outward = 10.0;
  const Trajectory tr =
      integrate_geodesic(kCfg, x0, photon_momentum(kCfg, s, x0), 1e-2, 5000, GeodesicKind::Null, opts);
  REQUIRE(tr.turning_point_index > 0);
  double r_min = 1e9;
  for (const auto& smp : tr.samples) r_min = std::min(r_min, smp.x.r());
  CHECK(r_min > 1.5);
  CHECK(tr.samples.back().x.r() >= 10.0 - 1e-2);
  CHECK(tr.samples.back().k[1] > 0.0);

  const Trajectory closed = trace_scenario(kCfg, s, 10.0, 2.0, 1e-2);
  CHECK(closed.turning_point_index > 0);
  CHECK(closed.samples.back().x.r() >= 10.0 - 1e-6);
  CHECK(closed.samples.back().k[1] > 0.0);
  double rc_min = 1e9;
  for (const auto& smp : closed.samples) rc_min = std::min(rc_min, smp.x.r());
  CHECK(rc_min == doctest::Approx(r_min).epsilon(1e-4));
}

TEST_CASE("integrator guards") {
  const SpacetimePoint x0(0, 10, kHalfPi, 0);
  try {
    integrate_geodesic(kCfg, x0, FourVector(Vec4(1, 0.5, 0, 0)), 1e-3, 10, GeodesicKind::Null);
    FAIL("expected NonNull");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonNull);
  }
  // A fixed step cannot follow k^t ~ 1/f arbitrarily close to r_s.
  IntegrationOptions opts;
  opts.horizon_margin = 0.05;
  const SpacetimePoint near(0, 1.5, kHalfPi, 0);
  const Trajectory tr =
      integrate_geodesic(kCfg, near, photon_momentum(kCfg, {}, near), 1e-3, 100000, GeodesicKind::Null, opts);
  CHECK(tr.stop_reason == StopReason::HorizonApproach);
  CHECK(tr.samples.back().x.r() >= 1.05);
  CHECK(tr.samples.back().x.r() < 1.06);
}
