#include "wigrot/wigner.hpp"

#include <cmath>
#include <string>

#include "wigrot/error.hpp"

namespace wigrot {

Mat4 chi_matrix(const MetricConfig& cfg, const TetradField& field, const FourVector& k,
                const SpacetimePoint& x) {
  const TetradJet j = field.jet_at(cfg, x);
  Mat4 D;
  for (int a = 0; a < 4; ++a) {
    FieldJet fj;
    fj.value = FourVector(j.legs.row(a).transpose());
    for (int b = 0; b < 4; ++b) fj.partials[b] = j.partials[b].row(a).transpose();
    D.row(a) = covariant_derivative(cfg, x, k, fj).c.transpose();
  }
  // (e^-1)_nu^b is the inverse of the row matrix of legs.
  return D * j.legs.inverse();
}

LocalLorentzGenerator lambda_from_chi(const Mat4& chi, double d_xi) {
  return {kEta * chi * kEta, d_xi};
}

PointwiseWigner pointwise_wigner(const MetricConfig& cfg, const TetradField& field, const FourVector& k,
                                 const SpacetimePoint& x) {
  PointwiseWigner out;
  const Tetrad tet = field.at(x);
  out.lambda = lambda_from_chi(chi_matrix(cfg, field, k, x), 0.0);
  out.k_local = project_to_local(tet, k);
  out.n_local = local_direction(out.k_local);
  const double k0 = out.k_local.c[0];
  out.local_null_residual = (k0 * k0 - out.k_local.c.tail<3>().squaredNorm()) / (k0 * k0);
  const InfinitesimalAngle ang = infinitesimal_wigner_angle_detail(out.lambda.mixed, out.k_local);
  out.psi_tilde = ang.psi_tilde;
  out.real_part = ang.real_part;
  return out;
}

namespace {

// Cayley map of the Lorentz-algebra projection of lambda * h; exactly
// eta-orthogonal for any step.
Mat4 cayley_step(const Mat4& lambda_mixed, double h) {
  const Mat4 low = kEta * lambda_mixed;
  const Mat4 X = kEta * (0.5 * (low - low.transpose())) * h;
  const Mat4 Id = Mat4::Identity();
  return (Id - 0.5 * X).partialPivLu().solve(Id + 0.5 * X);
}

}  // namespace

WignerResult accumulate_along_trajectory(const MetricConfig& cfg, const Trajectory& traj,
                                         const TetradField& field) {
  WignerResult res;
  const auto& S = traj.samples;
  res.samples.reserve(S.size());
  Mat4 prev_lambda = Mat4::Zero();
  for (size_t i = 0; i < S.size(); ++i) {
    const PointwiseWigner pw = pointwise_wigner(cfg, field, S[i].k, S[i].x);
    WignerSample ws;
    ws.xi = S[i].xi;
    ws.x = S[i].x;
    ws.n_local = pw.n_local;
    ws.psi_tilde = pw.psi_tilde;
    ws.null_residual = S[i].norm_residual;
    if (i > 0) {
      const double h = S[i].xi - S[i - 1].xi;
      const double coarse = std::max(prev_lambda.cwiseAbs().maxCoeff(), pw.lambda.mixed.cwiseAbs().maxCoeff()) * h;
      if (coarse > 1e-3)
        throw Error(ErrorCode::StepTooCoarse, "|lambda| dxi = " + std::to_string(coarse) + " at sample " +
                                                  std::to_string(i));
      res.psi_total += 0.5 * (res.samples.back().psi_tilde + pw.psi_tilde) * h;
      res.frame_transform = cayley_step(0.5 * (prev_lambda + pw.lambda.mixed), h) * res.frame_transform;
    }
    ws.psi_cumulative = res.psi_total;
    prev_lambda = pw.lambda.mixed;
    res.samples.push_back(ws);
  }
  return res;
}

double cross_plane_psi_closed_form(const MetricConfig& cfg, double r, double b_ph, double l_obs) {
  const double rs = cfg.rs();
  if (!(rs > 0.0) || !(r > rs)) throw Error(ErrorCode::InvalidArgument, "requires r > r_s > 0");
  return b_ph * l_obs / (r * r * r) * (1.0 + 1.5 * std::sqrt(r / rs) - 1.25 * std::sqrt(rs / r));
}

}  // namespace wigrot
