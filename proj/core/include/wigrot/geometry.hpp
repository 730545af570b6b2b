#pragma once

// Schwarzschild metric in (t, r, theta, phi), signature (+,-,-,-), G = c = 1.

#include <array>
#include <functional>

#include <Eigen/Dense>

namespace wigrot {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

struct MetricConfig {
  double r_s = 1.0;
  bool flat_limit = false;
  // Points with |r - r_s| < guard * r_s are rejected.
  double guard = 1e-6;

  double rs() const { return flat_limit ? 0.0 : r_s; }
  double mass() const { return 0.5 * rs(); }
};

struct SpacetimePoint {
  Vec4 coords = Vec4::Zero();

  SpacetimePoint() = default;
  explicit SpacetimePoint(const Vec4& c) : coords(c) {}
  SpacetimePoint(double t, double r, double theta, double phi) : coords(t, r, theta, phi) {}

  double t() const { return coords[0]; }
  double r() const { return coords[1]; }
  double theta() const { return coords[2]; }
  double phi() const { return coords[3]; }
};

enum class Variance { Contravariant, Covariant };

struct FourVector {
  Vec4 c = Vec4::Zero();
  Variance variance = Variance::Contravariant;

  FourVector() = default;
  FourVector(const Vec4& comps, Variance v = Variance::Contravariant) : c(comps), variance(v) {}

  double operator[](int i) const { return c[i]; }
};

FourVector operator+(const FourVector& a, const FourVector& b);
FourVector operator-(const FourVector& a, const FourVector& b);
FourVector operator*(double s, const FourVector& a);

// Throws HorizonSingularity, CoordinateSingularity or InvalidArgument (r <= 0).
void check_point(const MetricConfig& cfg, const SpacetimePoint& x);

Mat4 metric_at(const MetricConfig& cfg, const SpacetimePoint& x);
Mat4 inverse_metric_at(const MetricConfig& cfg, const SpacetimePoint& x);

// gamma[mu](alpha, beta) = Gamma^mu_{alpha beta}
using Christoffel = std::array<Mat4, 4>;

Christoffel christoffel_at(const MetricConfig& cfg, const SpacetimePoint& x);
// Central differences of metric_at with step h_rel * max(1, |x^mu|).
Christoffel christoffel_fd(const MetricConfig& cfg, const SpacetimePoint& x, double h_rel = 1e-5);

// g(u, v) for two contravariant or two covariant vectors; a mixed pair is
// contracted directly.
double inner(const MetricConfig& cfg, const SpacetimePoint& x, const FourVector& u,
             const FourVector& v);
FourVector lower(const MetricConfig& cfg, const SpacetimePoint& x, const FourVector& v);
FourVector raise(const MetricConfig& cfg, const SpacetimePoint& x, const FourVector& v);

using VectorField = std::function<FourVector(const SpacetimePoint&)>;

// Field value and its coordinate partials, partials[beta] = d_beta V.
struct FieldJet {
  FourVector value;
  std::array<Vec4, 4> partials{};
};

// Covariant derivative along `direction` from known partials.
FourVector covariant_derivative(const MetricConfig& cfg, const SpacetimePoint& x,
                                const FourVector& direction, const FieldJet& jet);

// Same, with partials from central differences of `field`
// (step h_rel * max(1, |x^beta|)). Throws StepTooLarge if a stencil point
// falls in the horizon guard band.
FourVector directional_covariant_derivative(const MetricConfig& cfg, const SpacetimePoint& x,
                                            const FourVector& direction,
                                            const VectorField& field, double h_rel = 1e-6);

FieldJet finite_difference_jet(const MetricConfig& cfg, const SpacetimePoint& x,
                               const VectorField& field, double h_rel = 1e-6);

}  // namespace wigrot
