#include "wigrot/sl2c.hpp"

#include <cmath>
#include <string>

#include "wigrot/error.hpp"

namespace wigrot {

namespace {

const Complex I(0.0, 1.0);

// pi rotation about x: diag(1, 1, -1, -1) on 4-vectors, -i sigma_x on spinors.
const Mat4 kChart4 = Vec4(1.0, 1.0, -1.0, -1.0).asDiagonal();

Mat2c chart_spinor() {
  Mat2c R;
  R << 0.0, -I, -I, 0.0;
  return R;
}

Mat2c chart_spinor_inv() {
  Mat2c R;
  R << 0.0, I, I, 0.0;
  return R;
}

// Complex dual number a + b eps with eps^2 = 0.
struct CDual {
  Complex v, d;
};
CDual operator+(CDual x, CDual y) { return {x.v + y.v, x.d + y.d}; }
CDual operator-(CDual x, CDual y) { return {x.v - y.v, x.d - y.d}; }
CDual operator*(CDual x, CDual y) { return {x.v * y.v, x.d * y.v + x.v * y.d}; }
CDual operator/(CDual x, CDual y) { return {x.v / y.v, (x.d * y.v - x.v * y.d) / (y.v * y.v)}; }
CDual conj(CDual x) { return {std::conj(x.v), std::conj(x.d)}; }
CDual sqrt(CDual x) {
  const Complex s = std::sqrt(x.v);
  return {s, x.d / (2.0 * s)};
}
using std::conj;
using std::sqrt;

template <class C>
C lift(Complex x) {
  return C{x};
}
template <>
CDual lift<CDual>(Complex x) {
  return {x, Complex(0.0)};
}

template <class C>
struct Coeffs {
  C a, b, c;
};

template <class C>
Coeffs<C> coefficients(const C& al, const C& be, const C& ga, const C& de, const Vec3& n) {
  const C p = lift<C>(1.0 + n[2]), m = lift<C>(1.0 - n[2]);
  const C np{lift<C>(n[0]) + lift<C>(Complex(0.0, n[1]))};
  const C nm{lift<C>(n[0]) - lift<C>(Complex(0.0, n[1]))};
  Coeffs<C> out;
  out.a = (al * conj(al) + ga * conj(ga)) * p + (be * conj(be) + de * conj(de)) * m +
          (al * conj(be) + ga * conj(de)) * nm + (conj(al) * be + conj(ga) * de) * np;
  out.b = al * conj(al) * p + be * conj(be) * m + al * conj(be) * nm + conj(al) * be * np;
  out.c = conj(al) * ga * p + conj(be) * de * m + conj(be) * ga * nm + conj(al) * de * np;
  return out;
}

template <class C>
C phase_factor(const C& al, const C& be, const C& ga, const C& de, const Vec3& n) {
  const Coeffs<C> k = coefficients(al, be, ga, de, n);
  const C p = lift<C>(1.0 + n[2]);
  const C np{lift<C>(n[0]) + lift<C>(Complex(0.0, n[1]))};
  return ((al * p + be * np) * k.b + (ga * p + de * np) * conj(k.c)) / (k.a * sqrt(k.b * p));
}

Mat2c raw_standard_boost(const Vec3& n, double k0) {
  const double p = 1.0 + n[2];
  const Complex np(n[0], n[1]), nm(n[0], -n[1]);
  Mat2c R;
  R << p, -nm, np, p;
  R /= std::sqrt(2.0 * p);
  Mat2c D = Mat2c::Zero();
  D(0, 0) = std::sqrt(k0);
  D(1, 1) = 1.0 / std::sqrt(k0);
  return R * D;
}

}  // namespace

const std::array<Mat2c, 4>& pauli() {
  static const std::array<Mat2c, 4> s = [] {
    std::array<Mat2c, 4> m;
    m[0] << 1.0, 0.0, 0.0, 1.0;
    m[1] << 0.0, 1.0, 1.0, 0.0;
    m[2] << 0.0, -I, I, 0.0;
    m[3] << 1.0, 0.0, 0.0, -1.0;
    return m;
  }();
  return s;
}

Vec3 local_direction(const LocalVector& k) {
  if (k.variance != Variance::Contravariant)
    throw Error(ErrorCode::VarianceMismatch, "local momentum must be contravariant");
  const Vec3 s = k.c.tail<3>();
  const double norm = s.norm();
  if (!(norm > 0.0)) throw Error(ErrorCode::NonNull, "momentum has no spatial part");
  return s / norm;
}

bool uses_south_chart(const Vec3& n) { return 1.0 + n[2] < kSouthChartThreshold; }

Mat2c k_matrix(const LocalVector& k) {
  if (k.variance != Variance::Contravariant)
    throw Error(ErrorCode::VarianceMismatch, "k_matrix expects a contravariant local vector");
  const double k0 = k.c[0];
  const double norm = k0 * k0 - k.c.tail<3>().squaredNorm();
  if (!(k0 > 0.0) || std::abs(norm) > 1e-10 * k0 * k0)
    throw Error(ErrorCode::NonNull, "local momentum is not a forward null vector");
  Mat2c K;
  K << k0 + k.c[3], Complex(k.c[1], -k.c[2]), Complex(k.c[1], k.c[2]), k0 - k.c[3];
  return K;
}

LocalVector momentum_from_k_matrix(const Mat2c& K) {
  Vec4 k;
  for (int a = 0; a < 4; ++a) k[a] = 0.5 * (pauli()[a] * K).trace().real();
  return LocalVector(k);
}

Mat2c standard_boost_sl2c(const LocalVector& k) {
  const Vec3 n = local_direction(k);
  if (1.0 + n[2] <= 1e-12) throw Error(ErrorCode::AntipodalDirection, "direction is antipodal to z");
  return raw_standard_boost(n, k.c[0]);
}

Mat2c standard_boost_chart(const LocalVector& k) {
  const Vec3 n = local_direction(k);
  if (!uses_south_chart(n)) return raw_standard_boost(n, k.c[0]);
  const Vec3 nr(n[0], -n[1], -n[2]);
  return chart_spinor() * raw_standard_boost(nr, k.c[0]);
}

TransformCoefficients transform_coefficients(const Mat2c& A, const Vec3& n) {
  const auto c = coefficients<Complex>(A(0, 0), A(0, 1), A(1, 0), A(1, 1), n);
  return {c.a.real(), c.b.real(), c.c};
}

LocalVector transform_local_momentum(const TransformCoefficients& coeffs, const LocalVector& k) {
  if (!(coeffs.a > 0.0)) throw Error(ErrorCode::DegenerateTransform, "coefficient a must be positive");
  const double k0p = 0.5 * coeffs.a * k.c[0];
  const double n3 = 2.0 * coeffs.b / coeffs.a - 1.0;
  const Complex np = 2.0 * coeffs.c / coeffs.a;
  return LocalVector(Vec4(k0p, k0p * np.real(), k0p * np.imag(), k0p * n3));
}

Complex wigner_phase_factor(const Mat2c& A, const Vec3& n) {
  return phase_factor<Complex>(A(0, 0), A(0, 1), A(1, 0), A(1, 1), n);
}

LittleGroupElement little_group_element(const Mat2c& A, const LocalVector& k) {
  const Vec3 n = local_direction(k);
  const TransformCoefficients co = transform_coefficients(A, n);
  LittleGroupElement out;
  out.k_prime = transform_local_momentum(co, LocalVector(Vec4(k.c[0], k.c[0] * n[0], k.c[0] * n[1], k.c[0] * n[2])));
  const Vec3 np = local_direction(out.k_prime);

  const LocalVector k_unit(Vec4(k.c[0], k.c[0] * n[0], k.c[0] * n[1], k.c[0] * n[2]));
  out.S = standard_boost_chart(out.k_prime).inverse() * A * standard_boost_chart(k_unit);
  out.lower_residual = std::abs(out.S(1, 0));
  out.z = out.S(0, 1);

  const double scale = std::max(1.0, A.squaredNorm());
  if (out.lower_residual > 1e-9 * scale)
    throw Error(ErrorCode::DegenerateTransform,
                "little-group element not upper triangular, |S10| = " + std::to_string(out.lower_residual));

  const bool south = uses_south_chart(n);
  if (south == uses_south_chart(np)) {
    // Both directions in one chart: closed-form phase, conjugated into the
    // rotated chart if needed.
    Mat2c Ac = A;
    Vec3 nc = n;
    if (south) {
      Ac = chart_spinor_inv() * A * chart_spinor();
      nc = Vec3(n[0], -n[1], -n[2]);
    }
    const Complex e = wigner_phase_factor(Ac, nc);
    out.psi = std::arg(e * e);
  } else {
    out.psi = std::arg(out.S(0, 0) * out.S(0, 0));
  }
  return out;
}

Mat4 lorentz_from_sl2c(const Mat2c& A) {
  const auto& s = pauli();
  Mat4 L;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) L(a, b) = 0.5 * (s[a] * A * s[b] * A.adjoint()).trace().real();
  return L;
}

Mat2c infinitesimal_generator(const Mat4& m) {
  const Complex al = 0.5 * Complex(m(0, 3), m(1, 2));
  const Complex be = 0.5 * Complex(m(0, 1) + m(3, 1), -(m(0, 2) - m(2, 3)));
  const Complex ga = 0.5 * Complex(m(0, 1) - m(3, 1), m(0, 2) + m(2, 3));
  Mat2c G;
  G << al, be, ga, -al;
  return G;
}

Mat2c infinitesimal_sl2c_from_lambda(const LocalLorentzGenerator& gen) {
  return Mat2c::Identity() + infinitesimal_generator(gen.mixed) * gen.d_xi;
}

LocalLorentzGenerator lambda_from_generator(const Mat2c& G, double d_xi) {
  const auto& s = pauli();
  Mat4 low;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const int c = a;  // eta is diagonal
      low(a, b) = 0.5 * kEta(a, c) * (s[b] * s[c] * G + s[c] * s[b] * G.adjoint()).trace().real();
    }
  return LocalLorentzGenerator::from_lowered(low, d_xi);
}

InfinitesimalAngle infinitesimal_wigner_angle_detail(const Mat4& lambda_mixed, const LocalVector& k) {
  Vec3 n = local_direction(k);
  Mat4 lam = lambda_mixed;
  if (uses_south_chart(n)) {
    lam = kChart4 * lam * kChart4;
    n = Vec3(n[0], -n[1], -n[2]);
  }
  const Mat2c G = infinitesimal_generator(lam);
  const CDual al{1.0, G(0, 0)}, be{0.0, G(0, 1)}, ga{0.0, G(1, 0)}, de{1.0, G(1, 1)};
  const CDual e = phase_factor<CDual>(al, be, ga, de, n);
  // e = e^{i psi/2} = 1 + (i psi~ / 2) dxi
  return {2.0 * e.d.imag(), e.d.real()};
}

double infinitesimal_wigner_angle(const LocalLorentzGenerator& gen, const LocalVector& k) {
  return infinitesimal_wigner_angle_detail(gen.mixed, k).psi_tilde;
}

}  // namespace wigrot
