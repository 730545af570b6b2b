#include "wigrot/tetrads.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wigrot/dual.hpp"
#include "wigrot/error.hpp"

namespace wigrot {

const Mat4 kEta = Vec4(1.0, -1.0, -1.0, -1.0).asDiagonal();

const char* to_string(TetradKind kind) {
  switch (kind) {
    case TetradKind::Stationary: return "Stationary";
    case TetradKind::RadialFFF: return "RadialFFF";
    case TetradKind::FFFWithL: return "FFFWithL";
    case TetradKind::FFFWithLFirstOrder: return "FFFWithLFirstOrder";
    case TetradKind::RadialFermiWalker: return "RadialFermiWalker";
    case TetradKind::Custom: return "Custom";
  }
  return "Custom";
}

TetradKind tetrad_kind_from_string(const std::string& name) {
  for (TetradKind k : {TetradKind::Stationary, TetradKind::RadialFFF, TetradKind::FFFWithL,
                       TetradKind::FFFWithLFirstOrder, TetradKind::RadialFermiWalker, TetradKind::Custom})
    if (name == to_string(k)) return k;
  throw Error(ErrorCode::ConfigError, "unknown tetrad kind '" + name + "'");
}

LocalVector lower_local(const LocalVector& v) {
  if (v.variance != Variance::Contravariant)
    throw Error(ErrorCode::VarianceMismatch, "lower_local expects a contravariant vector");
  return {kEta * v.c, Variance::Covariant};
}

LocalVector raise_local(const LocalVector& v) {
  if (v.variance != Variance::Covariant)
    throw Error(ErrorCode::VarianceMismatch, "raise_local expects a covariant vector");
  return {kEta * v.c, Variance::Contravariant};
}

namespace {

template <class T>
using Legs = std::array<std::array<T, 4>, 4>;

using std::cos;
using std::sin;
using std::sqrt;

void require_outside(const MetricConfig& cfg, const SpacetimePoint& x) {
  check_point(cfg, x);
  if (x.r() <= cfg.rs() * (1.0 + cfg.guard))
    throw Error(ErrorCode::InsideHorizon, "observer frame requested at r = " + std::to_string(x.r()));
}

void require_mass(const MetricConfig& cfg, const char* what) {
  if (!(cfg.rs() > 0.0))
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " requires r_s > 0");
}

template <class T>
Legs<T> stationary_legs(double rs, const T& r, const T& th) {
  const T f = 1.0 - rs / r;
  const T zero(0.0);
  return {{{1.0 / sqrt(f), zero, zero, zero},
           {zero, zero, 1.0 / r, zero},
           {zero, zero, zero, 1.0 / (r * sin(th))},
           {zero, sqrt(f), zero, zero}}};
}

template <class T>
Legs<T> radial_fff_legs(double rs, const T& r, const T& th) {
  const T f = 1.0 - rs / r;
  const T v = sqrt(rs / r);
  const T zero(0.0);
  return {{{1.0 / f, -v, zero, zero},
           {zero, zero, 1.0 / r, zero},
           {zero, zero, zero, 1.0 / (r * sin(th))},
           {-v / f, T(1.0), zero, zero}}};
}

template <class T>
T radial_velocity(double rs, const T& r, double l) {
  const T f = 1.0 - rs / r;
  const T rad = rs / r - l * l * f / (r * r);
  if (value_of(rad) < 0.0)
    throw Error(ErrorCode::TurningPoint, "observer radicand negative at r = " + std::to_string(value_of(r)));
  return -sqrt(rad);
}

template <class T>
Legs<T> fff_l_legs(double rs, const T& r, const T& th, double l, const T& Phi) {
  const T f = 1.0 - rs / r;
  const T ur = radial_velocity(rs, r, l);
  const T s = sin(th);
  const T srr = sqrt(rs * r);
  const T zero(0.0);
  // A is the radial leg at Phi = 0, C the azimuthal leg; both orthogonal to u.
  const std::array<T, 4> A = {-sqrt(rs / r) / f, -sqrt(r / rs) * ur, zero, -l / (srr * r * s)};
  const std::array<T, 4> C = {zero, l * f / srr, zero, -ur / (srr * s)};
  const T c = cos(Phi), sn = sin(Phi);
  Legs<T> L;
  L[0] = {1.0 / f, ur, zero, l / (r * r * s * s)};
  L[1] = {zero, zero, 1.0 / r, zero};
  for (int mu = 0; mu < 4; ++mu) {
    L[2][mu] = c * C[mu] - sn * A[mu];
    L[3][mu] = c * A[mu] + sn * C[mu];
  }
  return L;
}

template <class T>
Legs<T> fff_l_first_order_legs(double rs, const T& r, const T& th, double l) {
  const T f = 1.0 - rs / r;
  const T v = sqrt(rs / r);
  const T srr = sqrt(rs * r);
  const T s = sin(th);
  const T zero(0.0);
  return {{{1.0 / f, -v, zero, l / (r * r * s * s)},
           {zero, zero, 1.0 / r, zero},
           {-l / (r * f), l * (2.0 - rs / r) / srr, zero, 1.0 / (r * s)},
           {-v / f, T(1.0), zero, -2.0 * l / (srr * r * s)}}};
}

template <class T>
Legs<T> radial_fw_legs(double rs, const T& r, const T& th) {
  const T f = 1.0 - rs / r;
  const T sf = sqrt(f);
  const T ch = 0.5 * (sf + 1.0 / sf);
  const T sh = 0.5 * (sf - 1.0 / sf);
  const T zero(0.0);
  return {{{ch / sf, sh * sf, zero, zero},
           {zero, zero, 1.0 / r, zero},
           {zero, zero, zero, 1.0 / (r * sin(th))},
           {sh / sf, ch * sf, zero, zero}}};
}

Mat4 to_mat(const Legs<double>& L) {
  Mat4 m;
  for (int a = 0; a < 4; ++a)
    for (int mu = 0; mu < 4; ++mu) m(a, mu) = L[a][mu];
  return m;
}

TetradJet to_jet(const Legs<Dual4>& L) {
  TetradJet j;
  for (int a = 0; a < 4; ++a)
    for (int mu = 0; mu < 4; ++mu) {
      j.legs(a, mu) = L[a][mu].v;
      for (int b = 0; b < 4; ++b) j.partials[b](a, mu) = L[a][mu].d[b];
    }
  return j;
}

std::array<Dual4, 4> seed(const SpacetimePoint& x) {
  std::array<Dual4, 4> X;
  for (int i = 0; i < 4; ++i) X[i] = Dual4::variable(x.coords[i], i);
  return X;
}

Tetrad make_tetrad(const Mat4& legs, const SpacetimePoint& x, TetradKind kind,
                   std::map<std::string, double> params = {}) {
  Tetrad t;
  t.legs = legs;
  t.point = x;
  t.kind = kind;
  t.params = std::move(params);
  return t;
}

double dphi_dr(double rs, double r, double l) { return -l / (2.0 * r * r * radial_velocity(rs, r, l)); }

constexpr double kMaxPiece = 0.25;

// Fixed 31-point Kronrod rule on pieces no longer than kMaxPiece. The
// adaptive driver cannot meet a relative tolerance on very short intervals.
double integrate_dphi(double rs, double l, double a, double b) {
  auto integrand = [&](double rr) { return dphi_dr(rs, rr, l); };
  const int n = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / kMaxPiece)));
  const double h = (b - a) / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double lo = a + i * h, hi = i + 1 == n ? b : a + (i + 1) * h;
    acc += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, lo, hi, 0);
  }
  return acc;
}

// Phi(r) from cached values at nodes r_start + j * kNodeSpacing plus a short
// quadrature from the node between r_start and r. Node values depend only on
// j, so the result does not depend on evaluation order.
class PhiTable {
 public:
  static constexpr double kNodeSpacing = kMaxPiece;

  PhiTable(const MetricConfig& cfg, double l, double r_start) : cfg_(cfg), l_(l), r_start_(r_start) {}

  double operator()(double r) const {
    if (l_ == 0.0 || r == r_start_) return 0.0;
    const double rs = cfg_.rs();
    radial_velocity(rs, r_start_, l_);
    radial_velocity(rs, r, l_);
    const double d = (r - r_start_) / kNodeSpacing;
    const long j = static_cast<long>(d >= 0.0 ? std::floor(d) : std::ceil(d));
    const double r_node = node_radius(j);
    return node_value(j) + (r == r_node ? 0.0 : integrate_dphi(rs, l_, r_node, r));
  }

 private:
  double node_radius(long j) const { return r_start_ + static_cast<double>(j) * kNodeSpacing; }

  double node_value(long j) const {
    if (j == 0) return 0.0;
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = nodes_.find(j);
    if (it != nodes_.end()) return it->second;
    const long step = j > 0 ? 1 : -1;
    long i = 0;
    double acc = 0.0;
    // Start from the nearest cached node on the r_start side.
    for (long k = j - step; k != 0; k -= step)
      if (auto c = nodes_.find(k); c != nodes_.end()) {
        i = k;
        acc = c->second;
        break;
      }
    for (; i != j; i += step) {
      acc += integrate_dphi(cfg_.rs(), l_, node_radius(i), node_radius(i + step));
      nodes_[i + step] = acc;
    }
    return acc;
  }

  MetricConfig cfg_;
  double l_;
  double r_start_;
  mutable std::mutex mutex_;
  mutable std::map<long, double> nodes_;
};

// Phi as a function of the coordinates, carrying its r-derivative on duals.
struct RotationAngle {
  MetricConfig cfg;
  double l;
  std::shared_ptr<const PhiTable> table;

  double operator()(double r) const { return (*table)(r); }
  Dual4 operator()(const Dual4& r) const { return chain(r, (*this)(r.v), dphi_dr(cfg.rs(), r.v, l)); }
};

}  // namespace

Tetrad stationary_tetrad(const MetricConfig& cfg, const SpacetimePoint& x) {
  require_outside(cfg, x);
  return make_tetrad(to_mat(stationary_legs(cfg.rs(), x.r(), x.theta())), x, TetradKind::Stationary);
}

Tetrad radial_fff_tetrad(const MetricConfig& cfg, const SpacetimePoint& x) {
  require_outside(cfg, x);
  return make_tetrad(to_mat(radial_fff_legs(cfg.rs(), x.r(), x.theta())), x, TetradKind::RadialFFF);
}

Tetrad fff_l_tetrad(const MetricConfig& cfg, const SpacetimePoint& x, double l_obs, double Phi) {
  require_outside(cfg, x);
  require_mass(cfg, "fff_l_tetrad");
  return make_tetrad(to_mat(fff_l_legs(cfg.rs(), x.r(), x.theta(), l_obs, Phi)), x,
                     TetradKind::FFFWithL, {{"l_obs", l_obs}, {"Phi", Phi}});
}

Tetrad fff_l_first_order_tetrad(const MetricConfig& cfg, const SpacetimePoint& x, double l_obs) {
  require_outside(cfg, x);
  require_mass(cfg, "fff_l_first_order_tetrad");
  return make_tetrad(to_mat(fff_l_first_order_legs(cfg.rs(), x.r(), x.theta(), l_obs)), x,
                     TetradKind::FFFWithLFirstOrder, {{"l_obs", l_obs}});
}

Tetrad radial_fermi_walker_tetrad(const MetricConfig& cfg, const SpacetimePoint& x) {
  require_outside(cfg, x);
  return make_tetrad(to_mat(radial_fw_legs(cfg.rs(), x.r(), x.theta())), x,
                     TetradKind::RadialFermiWalker);
}

double observer_radial_velocity(const MetricConfig& cfg, double r, double l_obs) {
  return radial_velocity(cfg.rs(), r, l_obs);
}

double fff_l_rotation_angle(const MetricConfig& cfg, double l_obs, double r_start, double r) {
  if (l_obs == 0.0 || r == r_start) return 0.0;
  require_mass(cfg, "fff_l_rotation_angle");
  const double rs = cfg.rs();
  // Both endpoints must lie in the allowed region.
  radial_velocity(rs, r_start, l_obs);
  radial_velocity(rs, r, l_obs);
  return integrate_dphi(rs, l_obs, r_start, r);
}

double orthonormality_residual(const MetricConfig& cfg, const Tetrad& tet) {
  const Mat4 g = metric_at(cfg, tet.point);
  return (tet.legs * g * tet.legs.transpose() - kEta).cwiseAbs().maxCoeff();
}

LocalVector project_to_local(const Tetrad& tet, const FourVector& v) {
  if (v.variance == Variance::Covariant) return {tet.legs * v.c, Variance::Covariant};
  return {tet.legs.transpose().partialPivLu().solve(v.c), Variance::Contravariant};
}

FourVector unproject(const Tetrad& tet, const LocalVector& v) {
  if (v.variance == Variance::Contravariant) return {tet.legs.transpose() * v.c, Variance::Contravariant};
  return {tet.legs.partialPivLu().solve(v.c), Variance::Covariant};
}

Tetrad TetradField::at(const SpacetimePoint& x) const {
  Tetrad t;
  t.legs = legs(x);
  t.point = x;
  t.kind = kind;
  t.params = params;
  return t;
}

TetradJet TetradField::jet_at(const MetricConfig& cfg, const SpacetimePoint& x, double h_rel) const {
  if (jet) return jet(x);
  TetradJet j;
  j.legs = legs(x);
  for (int b = 0; b < 4; ++b) {
    const double h = h_rel * std::max(1.0, std::abs(x.coords[b]));
    SpacetimePoint xp = x, xm = x;
    xp.coords[b] += h;
    xm.coords[b] -= h;
    try {
      check_point(cfg, xp);
      check_point(cfg, xm);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::HorizonSingularity)
        throw Error(ErrorCode::StepTooLarge, "tetrad stencil enters horizon guard band");
      throw;
    }
    j.partials[b] = (legs(xp) - legs(xm)) / (2.0 * h);
  }
  return j;
}

TetradField stationary_field(const MetricConfig& cfg) {
  TetradField F;
  F.kind = TetradKind::Stationary;
  F.legs = [cfg](const SpacetimePoint& x) { return stationary_tetrad(cfg, x).legs; };
  F.jet = [cfg](const SpacetimePoint& x) {
    require_outside(cfg, x);
    const auto X = seed(x);
    return to_jet(stationary_legs(cfg.rs(), X[1], X[2]));
  };
  return F;
}

TetradField radial_fff_field(const MetricConfig& cfg) {
  TetradField F;
  F.kind = TetradKind::RadialFFF;
  F.legs = [cfg](const SpacetimePoint& x) { return radial_fff_tetrad(cfg, x).legs; };
  F.jet = [cfg](const SpacetimePoint& x) {
    require_outside(cfg, x);
    const auto X = seed(x);
    return to_jet(radial_fff_legs(cfg.rs(), X[1], X[2]));
  };
  return F;
}

TetradField fff_l_field(const MetricConfig& cfg, double l_obs, double r_start) {
  require_mass(cfg, "fff_l_field");
  TetradField F;
  F.kind = TetradKind::FFFWithL;
  F.params = {{"l_obs", l_obs}, {"r_start", r_start}};
  const RotationAngle phi{cfg, l_obs, std::make_shared<const PhiTable>(cfg, l_obs, r_start)};
  F.legs = [cfg, l_obs, phi](const SpacetimePoint& x) {
    require_outside(cfg, x);
    return to_mat(fff_l_legs(cfg.rs(), x.r(), x.theta(), l_obs, phi(x.r())));
  };
  F.jet = [cfg, l_obs, phi](const SpacetimePoint& x) {
    require_outside(cfg, x);
    const auto X = seed(x);
    return to_jet(fff_l_legs(cfg.rs(), X[1], X[2], l_obs, phi(X[1])));
  };
  return F;
}

TetradField fff_l_first_order_field(const MetricConfig& cfg, double l_obs) {
  require_mass(cfg, "fff_l_first_order_field");
  TetradField F;
  F.kind = TetradKind::FFFWithLFirstOrder;
  F.params = {{"l_obs", l_obs}};
  F.legs = [cfg, l_obs](const SpacetimePoint& x) { return fff_l_first_order_tetrad(cfg, x, l_obs).legs; };
  F.jet = [cfg, l_obs](const SpacetimePoint& x) {
    require_outside(cfg, x);
    const auto X = seed(x);
    return to_jet(fff_l_first_order_legs(cfg.rs(), X[1], X[2], l_obs));
  };
  return F;
}

TetradField radial_fermi_walker_field(const MetricConfig& cfg) {
  TetradField F;
  F.kind = TetradKind::RadialFermiWalker;
  F.legs = [cfg](const SpacetimePoint& x) { return radial_fermi_walker_tetrad(cfg, x).legs; };
  F.jet = [cfg](const SpacetimePoint& x) {
    require_outside(cfg, x);
    const auto X = seed(x);
    return to_jet(radial_fw_legs(cfg.rs(), X[1], X[2]));
  };
  return F;
}

TetradField custom_field(std::function<Mat4(const SpacetimePoint&)> legs) {
  TetradField F;
  F.kind = TetradKind::Custom;
  F.legs = std::move(legs);
  return F;
}

namespace {

Mat4 leg_derivatives_from_jet(const MetricConfig& cfg, const SpacetimePoint& x, const TetradJet& j,
                              const FourVector& dir) {
  Mat4 D;
  for (int a = 0; a < 4; ++a) {
    FieldJet fj;
    fj.value = FourVector(j.legs.row(a).transpose());
    for (int b = 0; b < 4; ++b) fj.partials[b] = j.partials[b].row(a).transpose();
    D.row(a) = covariant_derivative(cfg, x, dir, fj).c.transpose();
  }
  return D;
}

double local_norm(const Mat4& legs, const Vec4& v) {
  return legs.transpose().partialPivLu().solve(v).norm();
}

}  // namespace

Mat4 leg_covariant_derivatives(const MetricConfig& cfg, const TetradField& field,
                               const SpacetimePoint& x, const FourVector& dir) {
  return leg_derivatives_from_jet(cfg, x, field.jet_at(cfg, x), dir);
}

Acceleration acceleration_of_worldline(const MetricConfig& cfg, const TetradField& field,
                                       const SpacetimePoint& x) {
  const TetradJet j = field.jet_at(cfg, x);
  const FourVector u(j.legs.row(0).transpose());
  const Mat4 D = leg_derivatives_from_jet(cfg, x, j, u);
  Acceleration acc;
  acc.a = FourVector(D.row(0).transpose());
  acc.magnitude = std::sqrt(std::max(0.0, -inner(cfg, x, acc.a, acc.a)));
  return acc;
}

std::array<double, 4> transport_residual(const MetricConfig& cfg, const TetradField& field,
                                         const SpacetimePoint& x, TransportMode mode) {
  const TetradJet j = field.jet_at(cfg, x);
  const Vec4 u = j.legs.row(0).transpose();
  const Mat4 D = leg_derivatives_from_jet(cfg, x, j, FourVector(u));
  const Vec4 a = D.row(0).transpose();
  const Mat4 g = metric_at(cfg, x);
  std::array<double, 4> out{};
  for (int k = 0; k < 4; ++k) {
    Vec4 res = D.row(k).transpose();
    if (mode == TransportMode::FermiWalker) {
      const Vec4 s = j.legs.row(k).transpose();
      res -= u.dot(g * s) * a;
      res += a.dot(g * s) * u;
    }
    out[k] = local_norm(j.legs, res);
  }
  return out;
}

std::array<double, 4> transport_residual(const MetricConfig& cfg, const TetradField& field,
                                         const std::vector<SpacetimePoint>& worldline,
                                         TransportMode mode) {
  std::array<double, 4> worst{};
  for (const auto& x : worldline) {
    const auto r = transport_residual(cfg, field, x, mode);
    for (int k = 0; k < 4; ++k) worst[k] = std::max(worst[k], r[k]);
  }
  return worst;
}

ZeroWignerReport zero_wigner_frame_checks(const MetricConfig& cfg,
                                          const std::vector<SpacetimePoint>& worldline,
                                          const TetradField& field, const VectorField& momentum) {
  // Rows of W(x) are nabla_u e_a with u = e_0, from exact first derivatives.
  auto W = [&](const SpacetimePoint& p) {
    const TetradJet j = field.jet_at(cfg, p);
    return leg_derivatives_from_jet(cfg, p, j, FourVector(j.legs.row(0).transpose()));
  };
  constexpr double h_rel = 1e-4;

  ZeroWignerReport rep;
  for (const auto& x : worldline) {
    const FourVector k = momentum(x);
    const TetradJet j = field.jet_at(cfg, x);
    const Mat4 Dk = leg_derivatives_from_jet(cfg, x, j, k);
    for (int a = 0; a < 4; ++a)
      rep.nabla_k_e = std::max(rep.nabla_k_e, local_norm(j.legs, Dk.row(a).transpose()));

    // Second derivatives: central differences of the exact first-derivative field.
    std::array<Mat4, 4> dW;
    for (int b = 0; b < 4; ++b) {
      const double h = h_rel * std::max(1.0, std::abs(x.coords[b]));
      SpacetimePoint xp = x, xm = x;
      xp.coords[b] += h;
      xm.coords[b] -= h;
      dW[b] = (W(xp) - W(xm)) / (2.0 * h);
    }
    const Mat4 W0 = W(x);
    Mat4 Y;  // rows: nabla_k nabla_u e_a
    for (int a = 0; a < 4; ++a) {
      FieldJet fj;
      fj.value = FourVector(W0.row(a).transpose());
      for (int b = 0; b < 4; ++b) fj.partials[b] = dW[b].row(a).transpose();
      Y.row(a) = covariant_derivative(cfg, x, k, fj).c.transpose();
    }
    const Mat4 g = metric_at(cfg, x);
    const Mat4 P = Y * g * j.legs.transpose();  // P(a, b) = (DkDu e_a) . e_b
    for (int i = 1; i < 4; ++i) {
      rep.projected_identity = std::max(rep.projected_identity, std::abs(P(i, 0) + P(0, i)));
      for (int m = i; m < 4; ++m)
        rep.antisymmetric_identity = std::max(rep.antisymmetric_identity, std::abs(P(i, m) + P(m, i)));
    }
  }
  return rep;
}

}  // namespace wigrot
