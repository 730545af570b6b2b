#include "wigrot/geometry.hpp"

#include <cmath>
#include <string>

#include "wigrot/error.hpp"

namespace wigrot {

namespace {

void require_same_variance(const FourVector& a, const FourVector& b) {
  if (a.variance != b.variance)
    throw Error(ErrorCode::VarianceMismatch, "arithmetic on vectors of different variance");
}

double fd_step(double h_rel, double coord) { return h_rel * std::max(1.0, std::abs(coord)); }

}  // namespace

FourVector operator+(const FourVector& a, const FourVector& b) {
  require_same_variance(a, b);
  return {a.c + b.c, a.variance};
}

FourVector operator-(const FourVector& a, const FourVector& b) {
  require_same_variance(a, b);
  return {a.c - b.c, a.variance};
}

FourVector operator*(double s, const FourVector& a) { return {s * a.c, a.variance}; }

void check_point(const MetricConfig& cfg, const SpacetimePoint& x) {
  const double r = x.r();
  if (!(r > 0.0))
    throw Error(ErrorCode::CoordinateSingularity, "r must be positive, got " + std::to_string(r));
  const double rs = cfg.rs();
  if (rs > 0.0 && std::abs(r - rs) < cfg.guard * rs)
    throw Error(ErrorCode::HorizonSingularity, "point inside horizon guard band, r = " + std::to_string(r));
  if (std::abs(std::sin(x.theta())) < 1e-12)
    throw Error(ErrorCode::CoordinateSingularity, "polar axis, sin(theta) = 0");
}

Mat4 metric_at(const MetricConfig& cfg, const SpacetimePoint& x) {
  check_point(cfg, x);
  const double r = x.r();
  const double f = 1.0 - cfg.rs() / r;
  const double s = std::sin(x.theta());
  Mat4 g = Mat4::Zero();
  g(0, 0) = f;
  g(1, 1) = -1.0 / f;
  g(2, 2) = -r * r;
  g(3, 3) = -r * r * s * s;
  return g;
}

Mat4 inverse_metric_at(const MetricConfig& cfg, const SpacetimePoint& x) {
  const Mat4 g = metric_at(cfg, x);
  Mat4 gi = Mat4::Zero();
  for (int i = 0; i < 4; ++i) gi(i, i) = 1.0 / g(i, i);
  return gi;
}

Christoffel christoffel_at(const MetricConfig& cfg, const SpacetimePoint& x) {
  check_point(cfg, x);
  const double r = x.r();
  const double m = cfg.mass();
  const double f = 1.0 - cfg.rs() / r;
  const double s = std::sin(x.theta());
  const double c = std::cos(x.theta());

  Christoffel G;
  for (auto& m4 : G) m4.setZero();
  auto set = [&G](int mu, int a, int b, double v) {
    G[mu](a, b) = v;
    G[mu](b, a) = v;
  };
  set(0, 0, 1, m / (r * r * f));
  set(1, 0, 0, m * f / (r * r));
  set(1, 1, 1, -m / (r * r * f));
  set(1, 2, 2, -r * f);
  set(1, 3, 3, -r * f * s * s);
  set(2, 1, 2, 1.0 / r);
  set(2, 3, 3, -s * c);
  set(3, 1, 3, 1.0 / r);
  set(3, 2, 3, c / s);
  return G;
}

Christoffel christoffel_fd(const MetricConfig& cfg, const SpacetimePoint& x, double h_rel) {
  const Mat4 gi = inverse_metric_at(cfg, x);
  std::array<Mat4, 4> dg;  // dg[beta] = d_beta g
  for (int b = 0; b < 4; ++b) {
    const double h = fd_step(h_rel, x.coords[b]);
    SpacetimePoint xp = x, xm = x;
    xp.coords[b] += h;
    xm.coords[b] -= h;
    dg[b] = (metric_at(cfg, xp) - metric_at(cfg, xm)) / (2.0 * h);
  }
  Christoffel G;
  for (int mu = 0; mu < 4; ++mu) {
    G[mu].setZero();
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double acc = 0.0;
        for (int s = 0; s < 4; ++s)
          acc += gi(mu, s) * (dg[b](s, a) + dg[a](s, b) - dg[s](a, b));
        G[mu](a, b) = 0.5 * acc;
      }
  }
  return G;
}

double inner(const MetricConfig& cfg, const SpacetimePoint& x, const FourVector& u,
             const FourVector& v) {
  if (u.variance != v.variance) return u.c.dot(v.c);
  const Mat4 g = u.variance == Variance::Contravariant ? metric_at(cfg, x) : inverse_metric_at(cfg, x);
  return u.c.dot(g * v.c);
}

FourVector lower(const MetricConfig& cfg, const SpacetimePoint& x, const FourVector& v) {
  if (v.variance != Variance::Contravariant)
    throw Error(ErrorCode::VarianceMismatch, "lower() expects a contravariant vector");
  return {metric_at(cfg, x) * v.c, Variance::Covariant};
}

FourVector raise(const MetricConfig& cfg, const SpacetimePoint& x, const FourVector& v) {
  if (v.variance != Variance::Covariant)
    throw Error(ErrorCode::VarianceMismatch, "raise() expects a covariant vector");
  return {inverse_metric_at(cfg, x) * v.c, Variance::Contravariant};
}

FourVector covariant_derivative(const MetricConfig& cfg, const SpacetimePoint& x,
                                const FourVector& direction, const FieldJet& jet) {
  if (direction.variance != Variance::Contravariant)
    throw Error(ErrorCode::VarianceMismatch, "direction must be contravariant");
  const Christoffel G = christoffel_at(cfg, x);
  Vec4 out = Vec4::Zero();
  for (int b = 0; b < 4; ++b) out += direction.c[b] * jet.partials[b];
  const Vec4& V = jet.value.c;
  if (jet.value.variance == Variance::Contravariant) {
    for (int nu = 0; nu < 4; ++nu) out[nu] += direction.c.dot(G[nu] * V);
  } else {
    for (int nu = 0; nu < 4; ++nu)
      for (int s = 0; s < 4; ++s) out[nu] -= V[s] * G[s].row(nu).dot(direction.c);
  }
  return {out, jet.value.variance};
}

FieldJet finite_difference_jet(const MetricConfig& cfg, const SpacetimePoint& x,
                               const VectorField& field, double h_rel) {
  FieldJet jet;
  jet.value = field(x);
  for (int b = 0; b < 4; ++b) {
    const double h = fd_step(h_rel, x.coords[b]);
    SpacetimePoint xp = x, xm = x;
    xp.coords[b] += h;
    xm.coords[b] -= h;
    const double rs = cfg.rs();
    if (b == 1 && rs > 0.0 && (xp.r() - rs) * (xm.r() - rs) <= 0.0)
      throw Error(ErrorCode::StepTooLarge, "finite-difference stencil straddles the horizon");
    try {
      check_point(cfg, xp);
      check_point(cfg, xm);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::HorizonSingularity)
        throw Error(ErrorCode::StepTooLarge, "finite-difference stencil enters horizon guard band");
      throw;
    }
    const FourVector fp = field(xp), fm = field(xm);
    if (fp.variance != jet.value.variance || fm.variance != jet.value.variance)
      throw Error(ErrorCode::VarianceMismatch, "field changes variance across stencil");
    jet.partials[b] = (fp.c - fm.c) / (2.0 * h);
  }
  return jet;
}

FourVector directional_covariant_derivative(const MetricConfig& cfg, const SpacetimePoint& x,
                                            const FourVector& direction,
                                            const VectorField& field, double h_rel) {
  return covariant_derivative(cfg, x, direction, finite_difference_jet(cfg, x, field, h_rel));
}

}  // namespace wigrot
