#include "wigrot/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wigrot/flat_sr.hpp"
#include "wigrot/geodesics.hpp"
#include "wigrot/quantum.hpp"
#include "wigrot/sl2c.hpp"
#include "wigrot/tetrads.hpp"
#include "wigrot/wigner.hpp"

namespace wigrot {

namespace {

CheckResult check(std::string name, double value, double tol) {
  return {std::move(name), std::isfinite(value) && value <= tol, value, tol};
}

double christoffel_gap(const MetricConfig& cfg, const SpacetimePoint& x) {
  const Christoffel a = christoffel_at(cfg, x);
  const Christoffel b = christoffel_fd(cfg, x);
  double m = 0.0;
  for (int i = 0; i < 4; ++i) m = std::max(m, (a[i] - b[i]).cwiseAbs().maxCoeff());
  return m;
}

}  // namespace

std::vector<CheckResult> run_validation(const MetricConfig& cfg) {
  std::vector<CheckResult> out;
  const double half_pi = 0.5 * std::numbers::pi;
  const SpacetimePoint eq(0.0, 7.0 * std::max(cfg.rs(), 1.0), half_pi, 0.3);
  const SpacetimePoint polar(0.0, 9.0 * std::max(cfg.rs(), 1.0), half_pi, half_pi);

  out.push_back(check("geometry.christoffel_fd", christoffel_gap(cfg, SpacetimePoint(0.0, eq.r(), 1.1, 0.3)), 1e-7));
  out.push_back(check("geometry.metric_inverse",
                      (metric_at(cfg, eq) * inverse_metric_at(cfg, eq) - Mat4::Identity()).cwiseAbs().maxCoeff(),
                      1e-14));

  double ortho = 0.0;
  ortho = std::max(ortho, orthonormality_residual(cfg, stationary_tetrad(cfg, eq)));
  if (cfg.rs() > 0.0) {
    ortho = std::max(ortho, orthonormality_residual(cfg, radial_fff_tetrad(cfg, eq)));
    ortho = std::max(ortho, orthonormality_residual(cfg, fff_l_tetrad(cfg, eq, 0.5, 0.2)));
    ortho = std::max(ortho, orthonormality_residual(cfg, radial_fermi_walker_tetrad(cfg, eq)));
  }
  out.push_back(check("tetrads.orthonormality", ortho, 1e-12));

  if (cfg.rs() > 0.0) {
    const auto fff = transport_residual(cfg, radial_fff_field(cfg), eq, TransportMode::Parallel);
    out.push_back(check("tetrads.fff_parallel_transport", *std::max_element(fff.begin(), fff.end()), 1e-8));
    const auto fw = transport_residual(cfg, radial_fermi_walker_field(cfg), eq, TransportMode::FermiWalker);
    out.push_back(check("tetrads.fermi_walker_transport", *std::max_element(fw.begin(), fw.end()), 1e-8));
  }

  PhotonScenario ph{PhotonKind::EquatorialWithB, 2.0, 1.0, Branch::Inbound};
  const FourVector k = photon_momentum(cfg, ph, eq);
  out.push_back(check("geodesics.null_norm", std::abs(inner(cfg, eq, k, k)), 1e-12));
  out.push_back(check("geodesics.geodesic_equation", geodesic_residual(cfg, ph, eq), 1e-12));

  const PointwiseWigner pw = pointwise_wigner(cfg, stationary_field(cfg), k, eq);
  out.push_back(check("wigner.generator_antisymmetry",
                      (pw.lambda.lowered() + pw.lambda.lowered().transpose()).cwiseAbs().maxCoeff(), 1e-10));
  out.push_back(check("wigner.equatorial_psi_zero", std::abs(pw.psi_tilde), 1e-12));
  out.push_back(check("wigner.real_part_zero", std::abs(pw.real_part), 1e-10));

  if (cfg.rs() > 0.0) {
    const double l = 1e-3, b = 1e-3;
    PhotonScenario cp{PhotonKind::PolarPlaneFirstOrder, b, 1.0, Branch::Inbound};
    const PointwiseWigner w = pointwise_wigner(cfg, fff_l_first_order_field(cfg, l),
                                               photon_momentum(cfg, cp, polar), polar);
    const double ref = cross_plane_psi_closed_form(cfg, polar.r(), b, l);
    out.push_back(check("wigner.cross_plane_closed_form", std::abs(w.psi_tilde - ref) / std::abs(ref), 1e-3));
  }

  const Mat2c A = boost_sl2c({Vec3(0.3, -0.5, 0.8).normalized(), 0.9}) * rotation_sl2c(Vec3(1, 2, 3).normalized(), 0.7);
  out.push_back(check("sl2c.determinant", std::abs(A.determinant() - 1.0), 1e-12));
  const Mat4 L = lorentz_from_sl2c(A);
  out.push_back(check("sl2c.lorentz_preserves_eta", (L.transpose() * kEta * L - kEta).cwiseAbs().maxCoeff(), 1e-12));

  const FlatWigner fw = wigner_angle_flat_detail({Vec3::UnitY(), -0.5}, Vec3::UnitX());
  out.push_back(check("flat_sr.route_agreement", std::abs(wrap_angle(fw.psi_polarization - fw.psi_sl2c)), 1e-9));
  out.push_back(check("flat_sr.longitudinal_zero", std::abs(wigner_angle_flat({Vec3::UnitX(), 0.7}, Vec3::UnitZ())),
                      1e-12));

  PhotonWavePacket packet;
  packet.polarization_angle = 0.4;
  const auto rho = transform_reduced_single(reduced_density_single(packet), 0.37);
  const auto dc = check_density_matrix(rho);
  out.push_back(check("quantum.density_matrix_valid",
                      std::max({dc.hermiticity, dc.trace_error, std::max(0.0, -dc.min_eigenvalue)}), 1e-12));
  std::vector<SpectralBin> g{{1.0, {0.6, 0.1}, 0.5}, {2.0, {0.3, -0.2}, 0.7}};
  out.push_back(check("quantum.spectrum_norm_preserved",
                      std::abs(spectrum_norm(transform_wavepacket_spectrum(g, 1.7)) - spectrum_norm(g)), 1e-14));
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& c) { return c.passed; });
}

}  // namespace wigrot
