#pragma once

// SL(2,C) representation of local Lorentz transformations acting on photon
// momenta through K = k^a sigma_a -> A K A^dagger, and extraction of the
// little-group (Wigner) phase.

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "wigrot/tetrads.hpp"

namespace wigrot {

using Complex = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using SL2CMatrix = Mat2c;
using Vec3 = Eigen::Vector3d;

// sigma_0 = I, then Pauli x, y, z.
const std::array<Mat2c, 4>& pauli();

// Infinitesimal local Lorentz transformation Lambda = I + mixed * d_xi, with
// mixed(a, b) = lambda^a_b.
struct LocalLorentzGenerator {
  Mat4 mixed = Mat4::Zero();
  double d_xi = 0.0;

  Mat4 lowered() const { return kEta * mixed; }
  static LocalLorentzGenerator from_lowered(const Mat4& lowered, double d_xi = 0.0) {
    return {kEta * lowered, d_xi};
  }
};

// Unit spatial direction of a contravariant local momentum.
Vec3 local_direction(const LocalVector& k);

// Directions with 1 + n3 below this use the chart rotated by pi about x.
inline constexpr double kSouthChartThreshold = 1e-6;
bool uses_south_chart(const Vec3& n);

// k^0 [[1 + n3, n-], [n+, 1 - n3]]. Throws NonNull unless k^0 > 0 and
// |k.k| <= 1e-10 (k^0)^2.
Mat2c k_matrix(const LocalVector& k);
LocalVector momentum_from_k_matrix(const Mat2c& K);

// Product of a z boost and the minimal rotation taking z to n, so that
// K = A_k K_std A_k^dagger for K_std = k_matrix((1,0,0,1)).
// Throws AntipodalDirection when 1 + n3 <= 1e-12.
Mat2c standard_boost_sl2c(const LocalVector& k);
// Same, switching to the rotated chart near n = -z.
Mat2c standard_boost_chart(const LocalVector& k);

struct TransformCoefficients {
  double a = 0.0;
  double b = 0.0;
  Complex c;
};

TransformCoefficients transform_coefficients(const Mat2c& A, const Vec3& n);
// k'^0 = (a/2) k^0, n'3 = 2b/a - 1, n'+ = 2c/a. Throws DegenerateTransform if a <= 0.
LocalVector transform_local_momentum(const TransformCoefficients& coeffs, const LocalVector& k);

// e^{i psi / 2} in terms of the entries of A and the direction n (north chart).
Complex wigner_phase_factor(const Mat2c& A, const Vec3& n);

struct LittleGroupElement {
  double psi = 0.0;  // principal branch (-pi, pi]
  Complex z;
  LocalVector k_prime;
  Mat2c S;                      // A_{k'}^{-1} A A_k
  double lower_residual = 0.0;  // |S(1,0)|
};

LittleGroupElement little_group_element(const Mat2c& A, const LocalVector& k);

// Lambda^a_b = tr(sigma_a A sigma_b A^dagger) / 2
Mat4 lorentz_from_sl2c(const Mat2c& A);

// Traceless generator A~ with A = I + A~ d_xi.
Mat2c infinitesimal_generator(const Mat4& lambda_mixed);
Mat2c infinitesimal_sl2c_from_lambda(const LocalLorentzGenerator& gen);
// Inverse of infinitesimal_generator via the trace formula.
LocalLorentzGenerator lambda_from_generator(const Mat2c& generator, double d_xi = 0.0);

struct InfinitesimalAngle {
  double psi_tilde = 0.0;
  double real_part = 0.0;  // should vanish; diagnostic
};

// First-order expansion of the little-group phase at A = I + A~ dxi. Only the
// direction of k enters.
InfinitesimalAngle infinitesimal_wigner_angle_detail(const Mat4& lambda_mixed, const LocalVector& k);
double infinitesimal_wigner_angle(const LocalLorentzGenerator& gen, const LocalVector& k);

}  // namespace wigrot
