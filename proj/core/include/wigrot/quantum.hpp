#pragma once

// Helicity states and density matrices. Basis order (+, -) for one photon
// and (++, +-, -+, --) for a pair.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "wigrot/sl2c.hpp"
#include "wigrot/tetrads.hpp"
#include "wigrot/wigner.hpp"

namespace wigrot {

struct HelicityKet {
  LocalVector k_local;
  int helicity = 1;
  Complex phase{1.0, 0.0};
};

// Multiplies the phase by e^{i lambda psi} and moves the ket to k_prime.
HelicityKet apply_wigner_phase(const HelicityKet& ket, double psi, const LocalVector& k_prime);

struct SpectralBin {
  double k_abs = 0.0;
  Complex amplitude;
  double weight = 1.0;  // quadrature weight of the bin (covariant measure absorbed)
};

struct PhotonWavePacket {
  Vec3 direction = Vec3::UnitZ();
  double polarization_angle = 0.0;
  std::vector<SpectralBin> spectrum;
};

// sum weight |amplitude|^2
double spectrum_norm(const std::vector<SpectralBin>& g);

// Bins move to k' = (a/2) k with weights scaled by a/2 and amplitudes by
// sqrt(2/a), which leaves the norm unchanged. Throws DegenerateTransform if a <= 0.
std::vector<SpectralBin> transform_wavepacket_spectrum(const std::vector<SpectralBin>& g, double a);

struct HelicityDensityMatrix {
  Eigen::MatrixXcd rho;
  int dim() const { return static_cast<int>(rho.rows()); }
};

struct DensityMatrixChecks {
  double hermiticity = 0.0;  // max |rho - rho^dagger|
  double trace_error = 0.0;  // |tr rho - 1|
  double min_eigenvalue = 0.0;
  double purity = 0.0;

  bool valid() const { return hermiticity < 1e-12 && trace_error < 1e-10 && min_eigenvalue > -1e-10; }
};

DensityMatrixChecks check_density_matrix(const HelicityDensityMatrix& m);
Eigen::VectorXd density_eigenvalues(const HelicityDensityMatrix& m);

// (1/2) [[1, e^{2 i phi}], [e^{-2 i phi}, 1]], independent of the spectrum.
HelicityDensityMatrix reduced_density_single(const PhotonWavePacket& packet);
// U rho U^dagger with U = diag(e^{i psi}, e^{-i psi}).
HelicityDensityMatrix transform_reduced_single(const HelicityDensityMatrix& rho, double psi);

// Relative phase e^{-i (l1 - l2)(psi1 - psi2)} between the two branches of a
// helicity Bell pair after dropping the global phase.
struct BellPair {
  int lambda1 = 1;
  int lambda2 = -1;
};

Complex evolve_bell_pair(const BellPair& state, double psi_1, double psi_2);

struct BellEvolution {
  Complex relative_phase;
  WignerResult photon1;
  WignerResult photon2;
};

BellEvolution evolve_bell_pair_finite(const MetricConfig& cfg, const BellPair& state, const Trajectory& traj1,
                                      const Trajectory& traj2, const TetradField& field);

enum class HelicityStructure { BellPhaseForm, General };

struct PairSample {
  Vec3 n1 = Vec3::UnitZ();
  Vec3 n2 = -Vec3::UnitZ();
  double weight = 1.0;  // |f|^2 times quadrature weight
};

struct TwoPhotonState {
  HelicityStructure structure = HelicityStructure::BellPhaseForm;
  double phi1 = 0.0;
  double phi2 = 0.0;
  std::vector<PairSample> distribution;
  bool factorizable = false;
};

// (1/2)(|++><++| + |--><--|) with e^{+-2i(phi1+phi2)} corners. Throws
// UnsupportedStructure for General states.
HelicityDensityMatrix two_photon_reduced(const TwoPhotonState& state);

struct PairPhaseSample {
  Vec3 n1 = Vec3::UnitZ();
  Vec3 n2 = -Vec3::UnitZ();
  double weight = 1.0;
  double psi1 = 0.0;
  double psi2 = 0.0;
};

// Corner = (1/2) sum weight e^{2i(phi1 + psi1 + phi2 + psi2)}; diagonal unchanged.
HelicityDensityMatrix transform_two_photon_reduced(const TwoPhotonState& state,
                                                   const std::vector<PairPhaseSample>& samples);

}  // namespace wigrot
