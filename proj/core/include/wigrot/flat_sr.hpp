#pragma once

// Flat-spacetime reference: polarization 4-vectors under boosts, and the
// Wigner angle obtained two independent ways.

#include <Eigen/Dense>

#include "wigrot/sl2c.hpp"

namespace wigrot {

using Vec4c = Eigen::Vector4cd;
using Polarization4Vector = Vec4c;
using Mat3 = Eigen::Matrix3d;

// Pure boost with Lambda = [[cosh, sinh e^T], [sinh e, I + (cosh - 1) e e^T]].
// The boosted frame moves with velocity -tanh(rapidity) e relative to the
// original one.
struct Boost {
  Vec3 direction = Vec3::UnitZ();
  double rapidity = 0.0;
};

Mat4 boost_matrix(const Boost& b);
Mat2c boost_sl2c(const Boost& b);
// Active rotation by `angle` about unit `axis`.
Mat4 rotation_matrix(const Vec3& axis, double angle);
Mat2c rotation_sl2c(const Vec3& axis, double angle);

// Rotation taking z to k_hat: minimal rotation about z x k_hat, or, near
// k_hat = -z, the pi rotation about x followed by the minimal rotation of the
// reflected direction (the chart used by the standard boosts).
Mat4 rotation_to_direction(const Vec3& k_hat);

Polarization4Vector helicity_polarization(const Vec3& k_hat, int helicity);
// Lambda eps - ((Lambda eps)^0 / (Lambda k)^0) Lambda k
Polarization4Vector transform_polarization(const Mat4& L, const Polarization4Vector& eps, const Vec4& k);
Polarization4Vector linear_polarization(const Vec3& k_hat, double phi);
// Angle of eps' in the standard frame of k_hat', in (-pi, pi].
double extract_polarization_angle(const Polarization4Vector& eps, const Vec3& k_hat);

struct FlatWigner {
  double psi = 0.0;               // returned angle (polarization route)
  double psi_polarization = 0.0;  // phi - phi' of a linear polarization
  double psi_sl2c = 0.0;          // little-group phase
  double aberration = 0.0;        // angle between k_hat and k_hat'
  Vec4 k_prime = Vec4::Zero();
};

// Throws RouteMismatch if the two routes differ by more than 1e-9 (mod 2 pi).
FlatWigner wigner_angle_flat_detail(const Boost& b, const Vec3& k_hat);
double wigner_angle_flat(const Boost& b, const Vec3& k_hat);

// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

}  // namespace wigrot
