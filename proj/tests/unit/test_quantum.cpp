#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wigrot/error.hpp"
#include "wigrot/geodesics.hpp"
#include "wigrot/quantum.hpp"

using namespace wigrot;
namespace {
const Complex I(0, 1);
const double kPi = std::numbers::pi;

std::vector<SpectralBin> gaussian_spectrum(int n) {
  std::vector<SpectralBin> g;
  const double k0 = 5.0, width = 0.7, dk = 8.0 / n;
  double norm = 0;
  for (int i = 0; i < n; ++i) {
    const double k = 1.0 + (i + 0.5) * dk;
    g.push_back({k, Complex(std::exp(-0.5 * std::pow((k - k0) / width, 2)), 0.1 * k), dk});
    norm += dk * std::norm(g.back().amplitude);
  }
  for (auto& b : g) b.amplitude /= std::sqrt(norm);
  return g;
}

double mean_k(const std::vector<SpectralBin>& g) {
  double m = 0;
  for (const auto& b : g) m += b.weight * std::norm(b.amplitude) * b.k_abs;
  return m / spectrum_norm(g);
}
}  // namespace

TEST_CASE("Wigner phase on helicity kets") {
  HelicityKet ket{LocalVector(Vec4(1, 0, 0, 1)), 1, {1, 0}};
  CHECK(std::abs(apply_wigner_phase(ket, 0.0, ket.k_local).phase - Complex(1, 0)) == 0.0);
  CHECK(std::abs(apply_wigner_phase(ket, kPi, ket.k_local).phase + Complex(1, 0)) < 1e-15);
  const LocalVector kp(Vec4(2, 0, 0, 2));
  const HelicityKet two = apply_wigner_phase(apply_wigner_phase(ket, 0.3, kp), 0.5, kp);
  CHECK(std::abs(two.phase - apply_wigner_phase(ket, 0.8, kp).phase) < 1e-15);
  CHECK(two.helicity == 1);
  CHECK(two.k_local[0] == 2.0);
  ket.helicity = -1;
  CHECK(std::abs(apply_wigner_phase(ket, 0.4, kp).phase - std::exp(-0.4 * I)) < 1e-15);
}

TEST_CASE("Bell pair relative phase") {
  CHECK(std::abs(evolve_bell_pair({1, -1}, 0.7, 0.7) - 1.0) < 1e-15);
  CHECK(std::abs(evolve_bell_pair({1, 1}, 0.7, -2.0) - 1.0) < 1e-15);
  CHECK(std::abs(evolve_bell_pair({1, -1}, kPi / 2, 0.0) + 1.0) < 1e-15);
  const Complex a = evolve_bell_pair({1, -1}, 0.2, 0.1), b = evolve_bell_pair({1, -1}, 0.5, 0.3);
  CHECK(std::abs(a * b - evolve_bell_pair({1, -1}, 0.7, 0.4)) < 1e-15);
}

TEST_CASE("Bell pair along paired trajectories") {
  const MetricConfig cfg;
  const TetradField stat = stationary_field(cfg);
  const Trajectory in = trace_scenario(cfg, {}, 10.0, 5.0, 1e-3);
  PhotonScenario outward{};
  outward.branch = Branch::Outbound;
  const Trajectory out = integrate_geodesic(cfg, scenario_start_point(outward, 5.0),
                                            photon_momentum(cfg, outward, scenario_start_point(outward, 5.0)), 1e-3,
                                            2000, GeodesicKind::Null);
  CHECK(std::abs(evolve_bell_pair_finite(cfg, {1, -1}, in, out, stat).relative_phase - 1.0) < 1e-9);

  const PhotonScenario bent{PhotonKind::EquatorialWithB, 2.0, 1.0, Branch::Inbound};
  const BellEvolution eq =
      evolve_bell_pair_finite(cfg, {1, -1}, trace_scenario(cfg, bent, 10.0, 4.0, 1e-3), in, fff_l_field(cfg, 0.5, 10.0));
  CHECK(std::abs(eq.relative_phase - 1.0) < 1e-7);
}

TEST_CASE("single-photon reduced density matrix") {
  PhotonWavePacket p;
  p.spectrum = gaussian_spectrum(32);
  HelicityDensityMatrix rho = reduced_density_single(p);
  CHECK((rho.rho - Eigen::MatrixXcd::Constant(2, 2, 0.5)).cwiseAbs().maxCoeff() < 1e-15);
  p.polarization_angle = kPi / 4;
  rho = reduced_density_single(p);
  CHECK(std::abs(rho.rho(0, 1) - 0.5 * I) < 1e-15);
  for (double phi : {0.0, 0.3, 1.2, -2.0}) {
    p.polarization_angle = phi;
    const DensityMatrixChecks c = check_density_matrix(reduced_density_single(p));
    CHECK(c.valid());
    CHECK(c.purity == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("covariance of the single-photon matrix") {
  PhotonWavePacket p;
  p.polarization_angle = 0.0;
  const HelicityDensityMatrix r = transform_reduced_single(reduced_density_single(p), kPi / 4);
  CHECK(std::abs(r.rho(0, 1) - 0.5 * I) < 1e-15);
  CHECK((transform_reduced_single(r, 0.0).rho - r.rho).cwiseAbs().maxCoeff() == 0.0);
  for (double phi : {0.1, -0.7, 2.5})
    for (double psi : {0.0, 0.33, -1.4, 3.0}) {
      p.polarization_angle = phi;
      const HelicityDensityMatrix a = transform_reduced_single(reduced_density_single(p), psi);
      p.polarization_angle = phi + psi;
      CHECK((a.rho - reduced_density_single(p).rho).cwiseAbs().maxCoeff() < 1e-12);
      const DensityMatrixChecks c = check_density_matrix(a);
      CHECK(c.valid());
      CHECK(c.purity == doctest::Approx(1.0).epsilon(1e-14));
      CHECK((density_eigenvalues(a) - Eigen::Vector2d(0, 1)).cwiseAbs().maxCoeff() < 1e-14);
    }
  HelicityDensityMatrix wrong;
  wrong.rho = Eigen::MatrixXcd::Identity(4, 4) / 4.0;
  CHECK_THROWS_AS(transform_reduced_single(wrong, 0.1), Error);
}

TEST_CASE("wave-packet spectrum transform") {
  const auto g = gaussian_spectrum(64);
  const auto same = transform_wavepacket_spectrum(g, 2.0);
  for (size_t i = 0; i < g.size(); ++i) {
    CHECK(same[i].k_abs == g[i].k_abs);
    CHECK(std::abs(same[i].amplitude - g[i].amplitude) == 0.0);
  }
  const auto g3 = transform_wavepacket_spectrum(g, 3.0);
  CHECK(spectrum_norm(g3) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(mean_k(g3) == doctest::Approx(1.5 * mean_k(g)).epsilon(1e-12));
  try {
    transform_wavepacket_spectrum(g, 0.0);
    FAIL("expected DegenerateTransform");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateTransform);
  }
}

TEST_CASE("two-photon reduced matrix") {
  TwoPhotonState s;
  HelicityDensityMatrix rho = two_photon_reduced(s);
  CHECK(std::abs(rho.rho(0, 3) - 0.5) < 1e-15);
  CHECK(std::abs(rho.rho(3, 0) - 0.5) < 1e-15);
  CHECK(std::abs(rho.rho.trace() - 1.0) < 1e-15);
  const Eigen::VectorXd ev = density_eigenvalues(rho);
  CHECK((ev - Eigen::Vector4d(0, 0, 0, 1)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(check_density_matrix(rho).valid());

  s.phi1 = 0.2;
  s.phi2 = 0.3;
  CHECK(std::abs(two_photon_reduced(s).rho(0, 3) - 0.5 * std::exp(I)) < 1e-15);

  TwoPhotonState general;
  general.structure = HelicityStructure::General;
  try {
    two_photon_reduced(general);
    FAIL("expected UnsupportedStructure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedStructure);
  }
}

TEST_CASE("two-photon transform and dephasing") {
  TwoPhotonState s;
  s.phi1 = 0.1;
  s.phi2 = -0.4;
  const PairPhaseSample zero{Vec3::UnitZ(), -Vec3::UnitZ(), 1.0, 0.0, 0.0};
  CHECK((transform_two_photon_reduced(s, {zero}).rho - two_photon_reduced(s).rho).cwiseAbs().maxCoeff() < 1e-15);

  const PairPhaseSample one{Vec3::UnitZ(), -Vec3::UnitZ(), 1.0, 0.3, 0.25};
  const HelicityDensityMatrix rotated = transform_two_photon_reduced(s, {one});
  CHECK(check_density_matrix(rotated).purity == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(std::abs(rotated.rho(0, 3)) - 0.5) < 1e-15);

  const PairPhaseSample a{Vec3::UnitZ(), -Vec3::UnitZ(), 0.5, 0.0, 0.0};
  const PairPhaseSample b{Vec3::UnitX(), -Vec3::UnitX(), 0.5, kPi / 4, kPi / 4};
  const HelicityDensityMatrix deph = transform_two_photon_reduced(s, {a, b});
  CHECK(std::abs(deph.rho(0, 3)) < 1e-15);
  const Eigen::VectorXd ev = density_eigenvalues(deph);
  CHECK((ev - Eigen::Vector4d(0, 0, 0.5, 0.5)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(check_density_matrix(deph).valid());
}
