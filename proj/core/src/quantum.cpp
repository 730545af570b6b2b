#include "wigrot/quantum.hpp"

#include <cmath>

#include "wigrot/error.hpp"

namespace wigrot {

namespace {
const Complex I(0.0, 1.0);
}

HelicityKet apply_wigner_phase(const HelicityKet& ket, double psi, const LocalVector& k_prime) {
  HelicityKet out = ket;
  out.phase *= std::exp(I * static_cast<double>(ket.helicity) * psi);
  out.k_local = k_prime;
  return out;
}

double spectrum_norm(const std::vector<SpectralBin>& g) {
  double s = 0.0;
  for (const auto& bin : g) s += bin.weight * std::norm(bin.amplitude);
  return s;
}

std::vector<SpectralBin> transform_wavepacket_spectrum(const std::vector<SpectralBin>& g, double a) {
  if (!(a > 0.0)) throw Error(ErrorCode::DegenerateTransform, "frequency factor a must be positive");
  const double s = 0.5 * a;
  std::vector<SpectralBin> out;
  out.reserve(g.size());
  for (const auto& bin : g) out.push_back({s * bin.k_abs, bin.amplitude / std::sqrt(s), s * bin.weight});
  return out;
}

DensityMatrixChecks check_density_matrix(const HelicityDensityMatrix& m) {
  DensityMatrixChecks c;
  c.hermiticity = (m.rho - m.rho.adjoint()).cwiseAbs().maxCoeff();
  c.trace_error = std::abs(m.rho.trace() - 1.0);
  const Eigen::MatrixXcd h = 0.5 * (m.rho + m.rho.adjoint());
  c.min_eigenvalue = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h).eigenvalues().minCoeff();
  c.purity = (m.rho * m.rho).trace().real();
  return c;
}

Eigen::VectorXd density_eigenvalues(const HelicityDensityMatrix& m) {
  const Eigen::MatrixXcd h = 0.5 * (m.rho + m.rho.adjoint());
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h).eigenvalues();
}

HelicityDensityMatrix reduced_density_single(const PhotonWavePacket& packet) {
  const Complex e = std::exp(2.0 * I * packet.polarization_angle);
  HelicityDensityMatrix m;
  m.rho.resize(2, 2);
  m.rho << 0.5, 0.5 * e, 0.5 * std::conj(e), 0.5;
  return m;
}

HelicityDensityMatrix transform_reduced_single(const HelicityDensityMatrix& rho, double psi) {
  if (rho.dim() != 2) throw Error(ErrorCode::InvalidArgument, "single-photon density matrix must be 2x2");
  Eigen::Matrix2cd U = Eigen::Matrix2cd::Zero();
  U(0, 0) = std::exp(I * psi);
  U(1, 1) = std::exp(-I * psi);
  return {U * rho.rho * U.adjoint()};
}

Complex evolve_bell_pair(const BellPair& state, double psi_1, double psi_2) {
  return std::exp(-I * static_cast<double>(state.lambda1 - state.lambda2) * (psi_1 - psi_2));
}

BellEvolution evolve_bell_pair_finite(const MetricConfig& cfg, const BellPair& state, const Trajectory& traj1,
                                      const Trajectory& traj2, const TetradField& field) {
  BellEvolution out;
  out.photon1 = accumulate_along_trajectory(cfg, traj1, field);
  out.photon2 = accumulate_along_trajectory(cfg, traj2, field);
  out.relative_phase = evolve_bell_pair(state, out.photon1.psi_total, out.photon2.psi_total);
  return out;
}

namespace {

HelicityDensityMatrix corner_matrix(Complex corner) {
  HelicityDensityMatrix m;
  m.rho = Eigen::MatrixXcd::Zero(4, 4);
  m.rho(0, 0) = 0.5;
  m.rho(3, 3) = 0.5;
  m.rho(0, 3) = corner;
  m.rho(3, 0) = std::conj(corner);
  return m;
}

void require_bell_form(const TwoPhotonState& state) {
  if (state.structure != HelicityStructure::BellPhaseForm)
    throw Error(ErrorCode::UnsupportedStructure, "only the Bell phase form is supported");
}

}  // namespace

HelicityDensityMatrix two_photon_reduced(const TwoPhotonState& state) {
  require_bell_form(state);
  return corner_matrix(0.5 * std::exp(2.0 * I * (state.phi1 + state.phi2)));
}

HelicityDensityMatrix transform_two_photon_reduced(const TwoPhotonState& state,
                                                   const std::vector<PairPhaseSample>& samples) {
  require_bell_form(state);
  Complex corner(0.0, 0.0);
  for (const auto& s : samples)
    corner += s.weight * std::exp(2.0 * I * (state.phi1 + s.psi1 + state.phi2 + s.psi2));
  return corner_matrix(0.5 * corner);
}

}  // namespace wigrot
