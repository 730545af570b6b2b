#pragma once

#include <vector>

#include "wigrot/geodesics.hpp"
#include "wigrot/sl2c.hpp"
#include "wigrot/tetrads.hpp"

namespace wigrot {

// chi(a, b) = (nabla_k e_a^nu) (e^-1)_nu^b
Mat4 chi_matrix(const MetricConfig& cfg, const TetradField& field, const FourVector& k,
                const SpacetimePoint& x);

// lambda_a^b = chi_a^b; stored raised on the first index.
LocalLorentzGenerator lambda_from_chi(const Mat4& chi, double d_xi);

struct PointwiseWigner {
  LocalLorentzGenerator lambda;
  LocalVector k_local;
  Vec3 n_local = Vec3::Zero();
  double psi_tilde = 0.0;
  double real_part = 0.0;
  double local_null_residual = 0.0;  // eta(k, k) / (k^0)^2
};

PointwiseWigner pointwise_wigner(const MetricConfig& cfg, const TetradField& field, const FourVector& k,
                                 const SpacetimePoint& x);

struct WignerSample {
  double xi = 0.0;
  SpacetimePoint x;
  Vec3 n_local = Vec3::Zero();
  double psi_tilde = 0.0;
  double psi_cumulative = 0.0;
  double null_residual = 0.0;
};

struct WignerResult {
  double psi_total = 0.0;
  std::vector<WignerSample> samples;
  Mat4 frame_transform = Mat4::Identity();
};

// Trapezoid rule for the phase; ordered product of per-step Cayley
// transforms for the frame, later steps multiplied on the left. Throws
// StepTooCoarse if max|lambda| * dxi > 1e-3 on any step.
WignerResult accumulate_along_trajectory(const MetricConfig& cfg, const Trajectory& traj,
                                         const TetradField& field);

// (b l / r^3)(1 + 1.5 sqrt(r/r_s) - 1.25 sqrt(r_s/r)), the published
// reference for the cross-plane configuration.
double cross_plane_psi_closed_form(const MetricConfig& cfg, double r, double b_ph, double l_obs);

}  // namespace wigrot
