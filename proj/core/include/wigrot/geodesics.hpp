#pragma once

#include <vector>

#include "wigrot/geometry.hpp"

namespace wigrot {

enum class PhotonKind {
  RadialEquatorial,      // omega (1/f, -1, 0, 0)
  EquatorialWithB,       // theta = pi/2 plane, k^phi = b/r^2
  PolarPlaneWithB,       // phi = pi/2 plane, k^theta = b/r^2
  PolarPlaneFirstOrder,  // PolarPlaneWithB with O(b^2) dropped
};

enum class Branch { Inbound, Outbound };

const char* to_string(PhotonKind kind);
PhotonKind photon_kind_from_string(const std::string& name);

struct PhotonScenario {
  PhotonKind kind = PhotonKind::RadialEquatorial;
  double b_ph = 0.0;
  double omega = 1.0;
  Branch branch = Branch::Inbound;
};

// 1 - b^2 (1 - r_s/r) / r^2, the square of k^r / omega.
double photon_radicand(const MetricConfig& cfg, double b_ph, double r);

// Throws TurningPointReached if the radicand is negative at x.
FourVector photon_momentum(const MetricConfig& cfg, const PhotonScenario& s, const SpacetimePoint& x);
// Momentum with exact coordinate partials.
FieldJet photon_momentum_jet(const MetricConfig& cfg, const PhotonScenario& s, const SpacetimePoint& x);
VectorField photon_momentum_field(const MetricConfig& cfg, const PhotonScenario& s);

// Max-norm of nabla_k k for the closed-form momentum.
double geodesic_residual(const MetricConfig& cfg, const PhotonScenario& s, const SpacetimePoint& x);

struct PhotonPotential {
  double w_eff = 0.0;
  double critical_b_squared = 0.0;  // 27 M^2
};

PhotonPotential photon_effective_potential(const MetricConfig& cfg, double r);
// -M/r + l^2/(2 r^2) - M l^2 / r^3
double observer_effective_potential(const MetricConfig& cfg, double r, double l_obs);

enum class GeodesicKind { Null, Timelike };

enum class StopReason { Completed, RadiusReached, TurningPoint, HorizonApproach };

const char* to_string(StopReason reason);

struct TrajectorySample {
  double xi = 0.0;
  SpacetimePoint x;
  FourVector k;
  double norm_residual = 0.0;  // g(k,k) for null, g(k,k) - 1 for timelike
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  StopReason stop_reason = StopReason::Completed;
  int turning_point_index = -1;  // first sample with k^r >= 0 after infall
};

struct IntegrationOptions {
  double r_stop = 0.0;          // halt once r <= r_stop (ignored when 0)
  double r_stop_outward = 0.0;  // halt once r >= r_stop_outward after a turning point
  bool stop_at_turning_point = false;
  double horizon_margin = 1e-3;  // halt once r < r_s (1 + margin)
};

// Fixed-step classical RK4 on (x, k). Throws ConstraintDrift if the norm
// residual exceeds 1e-6 (k^t)^2 and HorizonApproach if x0 is already within
// the horizon margin.
Trajectory integrate_geodesic(const MetricConfig& cfg, const SpacetimePoint& x0, const FourVector& k0,
                              double d_xi, int n_steps, GeodesicKind kind,
                              const IntegrationOptions& opts = {});

// RK4 on x with the closed-form momentum of `s`, from r_start inward to r_end.
// A turning point is located by bisection on the radicand, the photon is
// placed on it and k^r flips sign; tracing then continues outward to r_start.
Trajectory trace_scenario(const MetricConfig& cfg, const PhotonScenario& s, double r_start, double r_end,
                          double d_xi);

// Starting event used by the presets: equatorial for RadialEquatorial and
// EquatorialWithB, theta = phi = pi/2 for the polar-plane kinds.
SpacetimePoint scenario_start_point(const PhotonScenario& s, double r);

}  // namespace wigrot
