#include "wigrot/flat_sr.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wigrot/error.hpp"

namespace wigrot {

namespace {

const Complex I(0.0, 1.0);

Mat3 minimal_rotation(const Vec3& k) {
  const Vec3 z = Vec3::UnitZ();
  Vec3 axis = z.cross(k);
  const double s = axis.norm();
  if (s < 1e-15) return Mat3::Identity();
  axis /= s;
  const double th = std::atan2(s, k[2]);
  Mat3 K;
  K << 0.0, -axis[2], axis[1], axis[2], 0.0, -axis[0], -axis[1], axis[0], 0.0;
  return Mat3::Identity() + std::sin(th) * K + (1.0 - std::cos(th)) * K * K;
}

Mat4 embed(const Mat3& R) {
  Mat4 M = Mat4::Identity();
  M.bottomRightCorner<3, 3>() = R;
  return M;
}

void require_unit(const Vec3& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > 1e-12)
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be a unit vector");
}

}  // namespace

double wrap_angle(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  if (a > std::numbers::pi) a -= two_pi;
  return a;
}

Mat4 boost_matrix(const Boost& b) {
  require_unit(b.direction, "boost direction");
  const double ch = std::cosh(b.rapidity), sh = std::sinh(b.rapidity);
  const Vec3& e = b.direction;
  Mat4 L = Mat4::Identity();
  L(0, 0) = ch;
  L.block<1, 3>(0, 1) = sh * e.transpose();
  L.block<3, 1>(1, 0) = sh * e;
  L.bottomRightCorner<3, 3>() += (ch - 1.0) * e * e.transpose();
  return L;
}

Mat2c boost_sl2c(const Boost& b) {
  require_unit(b.direction, "boost direction");
  const auto& s = pauli();
  const Vec3& e = b.direction;
  return std::cosh(0.5 * b.rapidity) * s[0] +
         std::sinh(0.5 * b.rapidity) * (e[0] * s[1] + e[1] * s[2] + e[2] * s[3]);
}

Mat4 rotation_matrix(const Vec3& axis, double angle) {
  require_unit(axis, "rotation axis");
  return embed(Eigen::AngleAxisd(angle, axis).toRotationMatrix());
}

Mat2c rotation_sl2c(const Vec3& m, double angle) {
  require_unit(m, "rotation axis");
  const auto& s = pauli();
  return std::cos(0.5 * angle) * s[0] - I * std::sin(0.5 * angle) * (m[0] * s[1] + m[1] * s[2] + m[2] * s[3]);
}

Mat4 rotation_to_direction(const Vec3& k_hat) {
  require_unit(k_hat, "direction");
  if (!uses_south_chart(k_hat)) return embed(minimal_rotation(k_hat));
  const Mat3 Rx = Vec3(1.0, -1.0, -1.0).asDiagonal();
  return embed(Rx * minimal_rotation(Rx * k_hat));
}

Polarization4Vector helicity_polarization(const Vec3& k_hat, int helicity) {
  if (helicity != 1 && helicity != -1) throw Error(ErrorCode::InvalidArgument, "helicity must be +1 or -1");
  Vec4c e(0.0, 1.0, -I * static_cast<double>(helicity), 0.0);
  e /= std::sqrt(2.0);
  return rotation_to_direction(k_hat).cast<Complex>() * e;
}

Polarization4Vector transform_polarization(const Mat4& L, const Polarization4Vector& eps, const Vec4& k) {
  const Vec4c Le = L.cast<Complex>() * eps;
  const Vec4 Lk = L * k;
  if (std::abs(Lk[0]) < 1e-300) throw Error(ErrorCode::DegenerateTransform, "(Lambda k)^0 vanishes");
  Vec4c out = Le - (Le[0] / Lk[0]) * Lk.cast<Complex>();
  out[0] = 0.0;
  return out;
}

Polarization4Vector linear_polarization(const Vec3& k_hat, double phi) {
  const Vec4c e(0.0, std::cos(phi), std::sin(phi), 0.0);
  return rotation_to_direction(k_hat).cast<Complex>() * e;
}

double extract_polarization_angle(const Polarization4Vector& eps, const Vec3& k_hat) {
  const Eigen::Vector3cd sp = eps.tail<3>();
  const double scale = std::max(1.0, sp.norm());
  if (std::abs(eps[0]) > 1e-9 * scale || std::abs(sp.dot(k_hat.cast<Complex>())) > 1e-9 * scale)
    throw Error(ErrorCode::NonTransverse, "polarization is not transverse to its momentum");
  const Mat3 R = rotation_to_direction(k_hat).bottomRightCorner<3, 3>();
  const Vec3 st = R.transpose() * sp.real();
  return std::atan2(st[1], st[0]);
}

FlatWigner wigner_angle_flat_detail(const Boost& b, const Vec3& k_hat) {
  require_unit(k_hat, "direction");
  const Mat4 L = boost_matrix(b);
  const Vec4 k(1.0, k_hat[0], k_hat[1], k_hat[2]);
  FlatWigner out;
  out.k_prime = L * k;
  const Vec3 kp = out.k_prime.tail<3>().normalized();
  out.aberration = std::atan2(k_hat.cross(kp).norm(), k_hat.dot(kp));

  const double phi = 0.3;
  const Vec4c eps = transform_polarization(L, linear_polarization(k_hat, phi), k);
  out.psi_polarization = wrap_angle(phi - extract_polarization_angle(eps, kp));
  out.psi_sl2c = little_group_element(boost_sl2c(b), LocalVector(k)).psi;
  out.psi = out.psi_polarization;
  if (std::abs(wrap_angle(out.psi_polarization - out.psi_sl2c)) > 1e-9)
    throw Error(ErrorCode::RouteMismatch, "polarization route " + std::to_string(out.psi_polarization) +
                                              " vs little-group route " + std::to_string(out.psi_sl2c));
  return out;
}

double wigner_angle_flat(const Boost& b, const Vec3& k_hat) { return wigner_angle_flat_detail(b, k_hat).psi; }

}  // namespace wigrot
