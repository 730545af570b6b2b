#pragma once

// Observer frames. Row a of `legs` holds e_a^mu with local axes ordered
// (t, theta, phi, r) -> (0, 1, 2, 3) and coordinate components (t, r, theta, phi).

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wigrot/geometry.hpp"

namespace wigrot {

enum class TetradKind { Stationary, RadialFFF, FFFWithL, FFFWithLFirstOrder, RadialFermiWalker, Custom };

const char* to_string(TetradKind kind);
TetradKind tetrad_kind_from_string(const std::string& name);

extern const Mat4 kEta;

struct Tetrad {
  Mat4 legs = Mat4::Identity();
  SpacetimePoint point;
  TetradKind kind = TetradKind::Custom;
  std::map<std::string, double> params;
};

struct LocalVector {
  Vec4 c = Vec4::Zero();
  Variance variance = Variance::Contravariant;

  LocalVector() = default;
  LocalVector(const Vec4& comps, Variance v = Variance::Contravariant) : c(comps), variance(v) {}
  double operator[](int i) const { return c[i]; }
};

LocalVector lower_local(const LocalVector& v);
LocalVector raise_local(const LocalVector& v);

Tetrad stationary_tetrad(const MetricConfig& cfg, const SpacetimePoint& x);
Tetrad radial_fff_tetrad(const MetricConfig& cfg, const SpacetimePoint& x);
// Freely falling frame with angular momentum l_obs (e_obs = 1); Phi rotates
// the (phi, r) legs and is supplied by the caller.
Tetrad fff_l_tetrad(const MetricConfig& cfg, const SpacetimePoint& x, double l_obs, double Phi);
// Linearization of fff_l_tetrad in l_obs with Phi(infinity) = 0.
Tetrad fff_l_first_order_tetrad(const MetricConfig& cfg, const SpacetimePoint& x, double l_obs);
// Static frame boosted radially inward with rapidity log(sqrt(1 - r_s/r)):
// Fermi-Walker transported and annihilated by radial null derivatives.
Tetrad radial_fermi_walker_tetrad(const MetricConfig& cfg, const SpacetimePoint& x);

// Observer radial velocity dr/dtau for e_obs = 1; throws TurningPoint if the
// radicand is negative.
double observer_radial_velocity(const MetricConfig& cfg, double r, double l_obs);
// Integral of dPhi/dr = -l_obs / (2 r^2 u^r) from r_start to r.
double fff_l_rotation_angle(const MetricConfig& cfg, double l_obs, double r_start, double r);

// max |e g e^T - eta|
double orthonormality_residual(const MetricConfig& cfg, const Tetrad& tet);

LocalVector project_to_local(const Tetrad& tet, const FourVector& v);
FourVector unproject(const Tetrad& tet, const LocalVector& v);

struct TetradJet {
  Mat4 legs = Mat4::Zero();
  std::array<Mat4, 4> partials{};  // partials[beta] = d_beta legs
};

// A frame defined in a neighbourhood of each point. `jet` is optional; when
// absent, partials come from central differences of `legs`.
struct TetradField {
  TetradKind kind = TetradKind::Custom;
  std::map<std::string, double> params;
  std::function<Mat4(const SpacetimePoint&)> legs;
  std::function<TetradJet(const SpacetimePoint&)> jet;

  Tetrad at(const SpacetimePoint& x) const;
  TetradJet jet_at(const MetricConfig& cfg, const SpacetimePoint& x, double h_rel = 1e-6) const;
};

TetradField stationary_field(const MetricConfig& cfg);
TetradField radial_fff_field(const MetricConfig& cfg);
TetradField fff_l_field(const MetricConfig& cfg, double l_obs, double r_start);
TetradField fff_l_first_order_field(const MetricConfig& cfg, double l_obs);
TetradField radial_fermi_walker_field(const MetricConfig& cfg);
TetradField custom_field(std::function<Mat4(const SpacetimePoint&)> legs);

// Row a holds (nabla_dir e_a)^nu.
Mat4 leg_covariant_derivatives(const MetricConfig& cfg, const TetradField& field,
                               const SpacetimePoint& x, const FourVector& dir);

struct Acceleration {
  FourVector a;
  double magnitude = 0.0;
};

// a = nabla_u u with u = e_0 of the field.
Acceleration acceleration_of_worldline(const MetricConfig& cfg, const TetradField& field,
                                       const SpacetimePoint& x);

enum class TransportMode { Parallel, FermiWalker };

// Per-leg residual norms (Euclidean norm of local-frame components).
// Parallel: |nabla_u e_a|. FermiWalker: |nabla_u s - (u.s) a + (a.s) u|.
std::array<double, 4> transport_residual(const MetricConfig& cfg, const TetradField& field,
                                         const SpacetimePoint& x, TransportMode mode);
std::array<double, 4> transport_residual(const MetricConfig& cfg, const TetradField& field,
                                         const std::vector<SpacetimePoint>& worldline,
                                         TransportMode mode);

struct ZeroWignerReport {
  double nabla_k_e = 0.0;           // max |nabla_k e_a|
  double projected_identity = 0.0;  // max |(DkDu s).u + (DkDu u).s|
  double antisymmetric_identity = 0.0;  // max |(DkDu s).s' + (DkDu s').s|
};

ZeroWignerReport zero_wigner_frame_checks(const MetricConfig& cfg,
                                          const std::vector<SpacetimePoint>& worldline,
                                          const TetradField& field, const VectorField& momentum);

}  // namespace wigrot
