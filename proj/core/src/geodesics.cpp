#include "wigrot/geodesics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wigrot/dual.hpp"
#include "wigrot/error.hpp"

namespace wigrot {

const char* to_string(PhotonKind kind) {
  switch (kind) {
    case PhotonKind::RadialEquatorial: return "RadialEquatorial";
    case PhotonKind::EquatorialWithB: return "EquatorialWithB";
    case PhotonKind::PolarPlaneWithB: return "PolarPlaneWithB";
    case PhotonKind::PolarPlaneFirstOrder: return "PolarPlaneFirstOrder";
  }
  return "RadialEquatorial";
}

PhotonKind photon_kind_from_string(const std::string& name) {
  for (PhotonKind k : {PhotonKind::RadialEquatorial, PhotonKind::EquatorialWithB, PhotonKind::PolarPlaneWithB,
                       PhotonKind::PolarPlaneFirstOrder})
    if (name == to_string(k)) return k;
  throw Error(ErrorCode::ConfigError, "unknown photon kind '" + name + "'");
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::Completed: return "Completed";
    case StopReason::RadiusReached: return "RadiusReached";
    case StopReason::TurningPoint: return "TurningPoint";
    case StopReason::HorizonApproach: return "HorizonApproach";
  }
  return "Completed";
}

namespace {

using std::sqrt;

template <class T>
std::array<T, 4> momentum_components(double rs, const PhotonScenario& s, const T& r) {
  const T f = 1.0 - rs / r;
  const double w = s.omega;
  const double sign = s.branch == Branch::Inbound ? -1.0 : 1.0;
  const T zero(0.0);
  switch (s.kind) {
    case PhotonKind::RadialEquatorial:
      return {w / f, T(sign * w), zero, zero};
    case PhotonKind::PolarPlaneFirstOrder:
      return {w / f, T(sign * w), w * s.b_ph / (r * r), zero};
    case PhotonKind::EquatorialWithB:
    case PhotonKind::PolarPlaneWithB: {
      const T rad = 1.0 - s.b_ph * s.b_ph * f / (r * r);
      if (value_of(rad) < 0.0)
        throw Error(ErrorCode::TurningPointReached,
                    "photon cannot reach r = " + std::to_string(value_of(r)) + " with b = " + std::to_string(s.b_ph));
      const T kr = sign * w * sqrt(rad);
      const T ka = w * s.b_ph / (r * r);
      if (s.kind == PhotonKind::EquatorialWithB) return {w / f, kr, zero, ka};
      return {w / f, kr, ka, zero};
    }
  }
  return {zero, zero, zero, zero};
}

double norm_residual(const MetricConfig& cfg, const SpacetimePoint& x, const Vec4& k, GeodesicKind kind) {
  const double n = inner(cfg, x, FourVector(k), FourVector(k));
  return kind == GeodesicKind::Null ? n : n - 1.0;
}

// d(x, k)/dxi for the geodesic equation.
void geodesic_rhs(const MetricConfig& cfg, const Vec4& x, const Vec4& k, Vec4& dx, Vec4& dk) {
  const Christoffel G = christoffel_at(cfg, SpacetimePoint(x));
  dx = k;
  for (int mu = 0; mu < 4; ++mu) dk[mu] = -k.dot(G[mu] * k);
}

}  // namespace

double photon_radicand(const MetricConfig& cfg, double b_ph, double r) {
  return 1.0 - b_ph * b_ph * (1.0 - cfg.rs() / r) / (r * r);
}

FourVector photon_momentum(const MetricConfig& cfg, const PhotonScenario& s, const SpacetimePoint& x) {
  check_point(cfg, x);
  const auto c = momentum_components(cfg.rs(), s, x.r());
  return FourVector(Vec4(c[0], c[1], c[2], c[3]));
}

FieldJet photon_momentum_jet(const MetricConfig& cfg, const PhotonScenario& s, const SpacetimePoint& x) {
  check_point(cfg, x);
  const auto c = momentum_components(cfg.rs(), s, Dual4::variable(x.r(), 1));
  FieldJet j;
  for (int mu = 0; mu < 4; ++mu) {
    j.value.c[mu] = c[mu].v;
    for (int b = 0; b < 4; ++b) j.partials[b][mu] = c[mu].d[b];
  }
  return j;
}

VectorField photon_momentum_field(const MetricConfig& cfg, const PhotonScenario& s) {
  return [cfg, s](const SpacetimePoint& x) { return photon_momentum(cfg, s, x); };
}

double geodesic_residual(const MetricConfig& cfg, const PhotonScenario& s, const SpacetimePoint& x) {
  const FieldJet j = photon_momentum_jet(cfg, s, x);
  return covariant_derivative(cfg, x, j.value, j).c.cwiseAbs().maxCoeff();
}

PhotonPotential photon_effective_potential(const MetricConfig& cfg, double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "r must be positive");
  const double m = cfg.mass();
  return {(1.0 - cfg.rs() / r) / (r * r), 27.0 * m * m};
}

double observer_effective_potential(const MetricConfig& cfg, double r, double l_obs) {
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "r must be positive");
  const double m = cfg.mass();
  const double l2 = l_obs * l_obs;
  return -m / r + l2 / (2.0 * r * r) - m * l2 / (r * r * r);
}

Trajectory integrate_geodesic(const MetricConfig& cfg, const SpacetimePoint& x0, const FourVector& k0,
                              double d_xi, int n_steps, GeodesicKind kind, const IntegrationOptions& opts) {
  if (k0.variance != Variance::Contravariant)
    throw Error(ErrorCode::VarianceMismatch, "initial momentum must be contravariant");
  if (!(d_xi > 0.0) || n_steps < 0) throw Error(ErrorCode::InvalidArgument, "d_xi must be positive");
  const double rs = cfg.rs();
  const double r_floor = rs * (1.0 + opts.horizon_margin);
  if (rs > 0.0 && x0.r() < r_floor)
    throw Error(ErrorCode::HorizonApproach, "start point within horizon margin");
  check_point(cfg, x0);

  const double kt2 = k0.c[0] * k0.c[0];
  const double res0 = norm_residual(cfg, x0, k0.c, kind);
  if (std::abs(res0) > 1e-10 * (kind == GeodesicKind::Null ? kt2 : 1.0))
    throw Error(ErrorCode::NonNull, "initial momentum violates its norm condition by " + std::to_string(res0));

  Trajectory traj;
  traj.samples.reserve(static_cast<size_t>(n_steps) + 1);
  Vec4 x = x0.coords, k = k0.c;
  traj.samples.push_back({0.0, x0, k0, res0});
  bool infalling = k[1] < 0.0;

  for (int n = 1; n <= n_steps; ++n) {
    Vec4 dx1, dk1, dx2, dk2, dx3, dk3, dx4, dk4;
    try {
      geodesic_rhs(cfg, x, k, dx1, dk1);
      geodesic_rhs(cfg, x + 0.5 * d_xi * dx1, k + 0.5 * d_xi * dk1, dx2, dk2);
      geodesic_rhs(cfg, x + 0.5 * d_xi * dx2, k + 0.5 * d_xi * dk2, dx3, dk3);
      geodesic_rhs(cfg, x + d_xi * dx3, k + d_xi * dk3, dx4, dk4);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::HorizonSingularity) throw;
      traj.stop_reason = StopReason::HorizonApproach;
      return traj;
    }
    const Vec4 xn = x + d_xi / 6.0 * (dx1 + 2.0 * dx2 + 2.0 * dx3 + dx4);
    const Vec4 kn = k + d_xi / 6.0 * (dk1 + 2.0 * dk2 + 2.0 * dk3 + dk4);
    if (rs > 0.0 && xn[1] < r_floor) {
      traj.stop_reason = StopReason::HorizonApproach;
      return traj;
    }
    x = xn;
    k = kn;
    const SpacetimePoint p(x);
    const double res = norm_residual(cfg, p, k, kind);
    const double scale = kind == GeodesicKind::Null ? k[0] * k[0] : 1.0;
    if (std::abs(res) > 1e-6 * scale)
      throw Error(ErrorCode::ConstraintDrift, "norm residual " + std::to_string(res) + " at step " + std::to_string(n));
    traj.samples.push_back({n * d_xi, p, FourVector(k), res});

    if (infalling && k[1] >= 0.0) {
      infalling = false;
      traj.turning_point_index = static_cast<int>(traj.samples.size()) - 1;
      if (opts.stop_at_turning_point) {
        traj.stop_reason = StopReason::TurningPoint;
        return traj;
      }
    }
    if (opts.r_stop > 0.0 && x[1] <= opts.r_stop) {
      traj.stop_reason = StopReason::RadiusReached;
      return traj;
    }
    if (opts.r_stop_outward > 0.0 && !infalling && traj.turning_point_index >= 0 && x[1] >= opts.r_stop_outward) {
      traj.stop_reason = StopReason::RadiusReached;
      return traj;
    }
  }
  traj.stop_reason = StopReason::Completed;
  return traj;
}

SpacetimePoint scenario_start_point(const PhotonScenario& s, double r) {
  const double half_pi = 0.5 * std::numbers::pi;
  if (s.kind == PhotonKind::PolarPlaneWithB || s.kind == PhotonKind::PolarPlaneFirstOrder)
    return SpacetimePoint(0.0, r, half_pi, half_pi);
  return SpacetimePoint(0.0, r, half_pi, 0.0);
}

namespace {

// Largest root of the radicand in [lo, hi], by bisection to 1e-12.
double turning_radius(const MetricConfig& cfg, double b, double lo, double hi) {
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (photon_radicand(cfg, b, mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

}  // namespace

Trajectory trace_scenario(const MetricConfig& cfg, const PhotonScenario& s0, double r_start, double r_end,
                          double d_xi) {
  if (!(d_xi > 0.0)) throw Error(ErrorCode::InvalidArgument, "d_xi must be positive");
  if (!(r_start > r_end)) throw Error(ErrorCode::InvalidArgument, "r_start must exceed r_end");
  const double rs = cfg.rs();
  if (rs > 0.0 && r_end <= rs * (1.0 + cfg.guard))
    throw Error(ErrorCode::HorizonApproach, "r_end inside horizon guard band");

  PhotonScenario s = s0;
  s.branch = Branch::Inbound;
  const bool has_radicand = s.kind == PhotonKind::EquatorialWithB || s.kind == PhotonKind::PolarPlaneWithB;

  Trajectory traj;
  SpacetimePoint p = scenario_start_point(s, r_start);
  auto push = [&](double xi, const SpacetimePoint& q) {
    const FourVector k = photon_momentum(cfg, s, q);
    traj.samples.push_back({xi, q, k, inner(cfg, q, k, k)});
  };
  push(0.0, p);
  double xi = 0.0;
  auto field = [&](const Vec4& x) { return photon_momentum(cfg, s, SpacetimePoint(x)).c; };

  const size_t max_steps = static_cast<size_t>(1e8);
  while (traj.samples.size() < max_steps) {
    const Vec4 x = p.coords;
    Vec4 xn;
    bool crossed = false;
    try {
      const Vec4 a = field(x);
      const Vec4 b = field(x + 0.5 * d_xi * a);
      const Vec4 c = field(x + 0.5 * d_xi * b);
      const Vec4 d = field(x + d_xi * c);
      xn = x + d_xi / 6.0 * (a + 2.0 * b + 2.0 * c + d);
      if (has_radicand && s.branch == Branch::Inbound && photon_radicand(cfg, s.b_ph, xn[1]) < 0.0) crossed = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TurningPointReached) throw;
      crossed = true;
    }

    if (crossed) {
      // (k^r)^2 ~ c (r - r_tp) near the turning point, so the remaining
      // affine distance is 2 sqrt((r - r_tp) / c).
      const double lo = x[1] - 2.0 * d_xi * s.omega;
      if (photon_radicand(cfg, s.b_ph, lo) >= 0.0)
        throw Error(ErrorCode::TurningPointReached, "turning point not bracketed near r = " + std::to_string(x[1]));
      const double r_tp = turning_radius(cfg, s.b_ph, lo, x[1]);
      const double h = 1e-7 * r_tp;
      const double slope = (photon_radicand(cfg, s.b_ph, r_tp + h) - photon_radicand(cfg, s.b_ph, r_tp)) / h;
      const double dxi = 2.0 * std::sqrt(std::max(0.0, x[1] - r_tp) / slope) / s.omega;
      const Vec4 k0 = field(x);
      Vec4 xt = x + dxi * k0;
      xt[1] = r_tp;
      xi += dxi;
      p = SpacetimePoint(xt);
      s.branch = Branch::Outbound;
      push(xi, p);
      traj.turning_point_index = static_cast<int>(traj.samples.size()) - 1;
      if (r_tp <= r_end) {
        traj.stop_reason = StopReason::RadiusReached;
        return traj;
      }
      continue;
    }

    // Shorten the last step so the path ends on the target radius.
    const double target = s.branch == Branch::Inbound ? r_end : r_start;
    const bool last = s.branch == Branch::Inbound ? xn[1] <= r_end : xn[1] >= r_start;
    double h = d_xi;
    if (last && xn[1] != x[1]) {
      h = d_xi * (target - x[1]) / (xn[1] - x[1]);
      const Vec4 a = field(x);
      const Vec4 b = field(x + 0.5 * h * a);
      const Vec4 c = field(x + 0.5 * h * b);
      const Vec4 d = field(x + h * c);
      xn = x + h / 6.0 * (a + 2.0 * b + 2.0 * c + d);
    }
    xi += h;
    p = SpacetimePoint(xn);
    push(xi, p);
    if (last) {
      traj.stop_reason = StopReason::RadiusReached;
      return traj;
    }
  }
  traj.stop_reason = StopReason::Completed;
  return traj;
}

}  // namespace wigrot
