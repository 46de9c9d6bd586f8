#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "tnindex/errors.hpp"
#include "tnindex/jet.hpp"

/// Taub-NUT metric family, tensor calculus and the Hodge star.
///
/// Coordinates are (x1, x2, x3, tau) with tau ~ tau + 2 pi, orientation
/// dx1 ^ dx2 ^ dx3 ^ dtau. The metric family is written uniformly as
///
///    g = A(r) (dx1^2 + dx2^2 + dx3^2) + B(r) (dtau + omega)^2,
///
/// with omega a Dirac-monopole potential satisfying d omega = *_3 dV.
namespace tnindex::geometry {

using Mat4 = Eigen::Matrix4d;
using Vec3 = std::array<double, 3>;

struct Point
{
   double x1 = 0.0, x2 = 0.0, x3 = 0.0;
   double tau = 0.0;  ///< wrapped to [0, 2 pi)

   Point() = default;
   Point(double a, double b, double c, double t = 0.0);
   static Point polar(double r, double theta, double phi, double t = 0.0);

   double r() const { return std::sqrt(x1 * x1 + x2 * x2 + x3 * x3); }
   double theta() const { return std::acos(x3 / r()); }
   double phi() const { return std::atan2(x2, x1); }
};

/// Gauge of omega. Equatorial is (1/2) cos(theta) dphi and is singular on the
/// whole x3 axis; North and South are regular at theta = 0 and theta = pi
/// respectively. They differ from Equatorial by -/+ (1/2) dphi.
enum class GaugeChart { Equatorial, North, South };

/// A chart regular at p (North for x3 >= 0, South otherwise).
GaugeChart regular_chart(const Point& p);

enum class MetricVariant { TN, Conformal, Homotopy, ExactD, Flat };
enum class BlendKind { Quintic, Septic };

/// Monotone polynomial switch from 0 at r_in to 1 at r_out. Quintic is C2,
/// Septic is C3.
struct BlendProfile
{
   BlendKind kind = BlendKind::Quintic;
   double r_in = 2.0;
   double r_out = 4.0;

   template <typename T>
   T weight(const T& r) const
   {
      const T s = (r - r_in) / (r_out - r_in);
      if (kind == BlendKind::Quintic) {
         return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
      }
      return s * s * s * s * (35.0 + s * (-84.0 + s * (70.0 - 20.0 * s)));
   }
};

/// Selects a member of the metric family.
///
///  - TN:        A = V, B = 1/V with V = l + 1/(2r).
///  - Conformal: c(r) g_TN with c blending 1 into 1/(V r^2); at large r this
///               is dy^2 + g_S2 + e^{-2y} V^{-2} (dtau + omega)^2, y = log r.
///  - Homotopy:  as Conformal but the fiber potential V is blended towards
///               V_t = l + t/(2r) (t = 1 reproduces Conformal).
///  - ExactD:    Homotopy at t = 0, i.e. dy^2 + g_S2 + e^{-2y}(dtau+omega)^2
///               outside r_out.
///  - Flat:      dx^2 + dtau^2 (test stub).
///
/// Every variant except Flat equals g_TN for r <= blend.r_in.
struct MetricSpec
{
   MetricVariant variant = MetricVariant::TN;
   double t = 0.0;
   BlendProfile blend{};
   double l = 1.0;
   GaugeChart chart = GaugeChart::Equatorial;
};

/// Throws ValidationError on out-of-range parameters.
void validate(const MetricSpec& spec);

const char* to_string(MetricVariant v);
const char* to_string(BlendKind k);

struct PotentialSample
{
   double V = 0.0;
   Vec3 omega{};  ///< Cartesian components omega_i
};

/// V = l + 1/(2r) and the chosen gauge of omega at p.
PotentialSample potential_and_omega(const Point& p, GaugeChart chart, double l = 1.0);

enum class Coordinates { Cartesian, LogPolar };

/// Metric in a coordinate basis with an oriented orthonormal frame.
/// Columns of `frame` are the frame vectors: frame^T g frame = I.
struct MetricSample
{
   Mat4 g = Mat4::Identity();
   Mat4 frame = Mat4::Identity();
   Coordinates coordinates = Coordinates::Cartesian;
};

/// Coordinate metric of the selected variant. LogPolar uses (y, theta, phi,
/// tau) with y = log r.
MetricSample metric_at(const MetricSpec& spec, const Point& p,
                       Coordinates coords = Coordinates::Cartesian);

/// Build a sample (frame included) from a coordinate metric.
MetricSample make_sample(const Mat4& g, Coordinates coords = Coordinates::Cartesian);

enum class Differentiation { Dual, CentralDifference };

/// Riemann data in the orthonormal frame of metric_at (Cartesian chart).
struct CurvatureSample
{
   std::array<double, 256> riemann{};  ///< R_abcd, index a*64+b*16+c*4+d
   Mat4 ricci = Mat4::Zero();
   /// Curvature 2-form R_ab = (1/2) R_abcd e^c ^ e^d, pair-indexed
   /// [(ab)][(cd)] over pairs 01,02,03,12,13,23.
   Eigen::Matrix<double, 6, 6> two_form = Eigen::Matrix<double, 6, 6>::Zero();
   double bianchi_residual = 0.0;
   /// P with tr(R ^ R) = P e^0 ^ e^1 ^ e^2 ^ e^3.
   double pontryagin = 0.0;
   /// sqrt(sum R_abcd^2) (frame components).
   double riemann_norm = 0.0;
   /// sqrt(det g), the coordinate volume density.
   double volume_density = 0.0;

   double operator()(int a, int b, int c, int d) const
   {
      return riemann[a * 64 + b * 16 + c * 4 + d];
   }
};

/// Curvature at p. `h` is the central-difference step and also defines the
/// stencil radius checked against the nut (p.r() must exceed 2h).
CurvatureSample curvature_at(const MetricSpec& spec, const Point& p, double h,
                             Differentiation mode = Differentiation::Dual);

/// Hodge star of a 2-form (antisymmetric coordinate components F_mu_nu)
/// with respect to sample.g and the fixed orientation.
Mat4 hodge_star(const MetricSample& sample, const Mat4& two_form);

/// Pointwise norm |F| = sqrt(F_mu_nu F^mu^nu / 2).
double two_form_norm(const MetricSample& sample, const Mat4& two_form);

/// (d omega)_ij by differentiating omega_j (jets), minus
/// (*_3 dV)_ij = eps_ijk d_k V; returns the max-abs residual.
double monopole_residual(const Point& p, GaugeChart chart);

/// Flux of d omega through the sphere of radius r, by n x n Gauss-Legendre
/// quadrature in (theta, phi) with outward orientation.
double monopole_flux(double r, GaugeChart chart = GaugeChart::Equatorial, int n = 24);

/// Index of pair (a,b), a<b, in the 6-vector ordering 01,02,03,12,13,23.
int pair_index(int a, int b);

namespace detail {

/// omega_i in the given chart, templated for jets. Throws ChartError on the
/// chart's singular axis.
template <typename T>
std::array<T, 3> omega_components(const T& x1, const T& x2, const T& x3, GaugeChart chart)
{
   using std::sqrt;
   const T r = sqrt(x1 * x1 + x2 * x2 + x3 * x3);
   const double rho2 = value_of(x1) * value_of(x1) + value_of(x2) * value_of(x2);
   const double axis_tol = 1e-24 * value_of(r) * value_of(r);
   T f = T(0.0);
   switch (chart) {
      case GaugeChart::Equatorial:
         if (rho2 <= axis_tol) {
            throw ChartError("omega: point on the x3 axis; use the North or South chart");
         }
         f = 0.5 * x3 / (r * (x1 * x1 + x2 * x2));
         break;
      case GaugeChart::North:
         if (value_of(x3) < 0.0 && rho2 <= axis_tol) {
            throw ChartError("omega: point on the negative x3 axis; use the South chart");
         }
         f = -0.5 / (r * (r + x3));
         break;
      case GaugeChart::South:
         if (value_of(x3) > 0.0 && rho2 <= axis_tol) {
            throw ChartError("omega: point on the positive x3 axis; use the North chart");
         }
         f = 0.5 / (r * (r - x3));
         break;
   }
   return {-f * x2, f * x1, T(0.0)};
}

/// Coefficients (A, B) of the metric family at radius r.
template <typename T>
std::pair<T, T> metric_coefficients(const MetricSpec& spec, const T& r)
{
   if (spec.variant == MetricVariant::Flat) return {T(1.0), T(1.0)};
   const T V = spec.l + 0.5 / r;
   if (spec.variant == MetricVariant::TN || r <= spec.blend.r_in) {
      return {V, 1.0 / V};
   }
   const double t = spec.variant == MetricVariant::ExactD ? 0.0 : spec.t;
   const T Vt = spec.l + 0.5 * t / r;
   const T inv_r2 = 1.0 / (r * r);
   if (r >= spec.blend.r_out) {
      switch (spec.variant) {
         case MetricVariant::Conformal: return {inv_r2, inv_r2 / (V * V)};
         default: return {inv_r2, inv_r2 / (Vt * Vt)};
      }
   }
   const T b = spec.blend.weight(r);
   const T c = (1.0 - b) + b * inv_r2 / V;
   if (spec.variant == MetricVariant::Conformal) return {c * V, c / V};
   const T U = (1.0 - b) * V + b * Vt;
   return {c * V, c * V / (U * U)};
}

/// Coordinate metric components g_mu_nu at (x1, x2, x3).
template <typename T>
std::array<std::array<T, 4>, 4> metric_components(const MetricSpec& spec, const T& x1,
                                                  const T& x2, const T& x3)
{
   using std::sqrt;
   std::array<std::array<T, 4>, 4> g{};
   const T r = sqrt(x1 * x1 + x2 * x2 + x3 * x3);
   const auto [A, B] = metric_coefficients(spec, r);
   if (spec.variant == MetricVariant::Flat) {
      for (int i = 0; i < 4; ++i) g[i][i] = T(1.0);
      return g;
   }
   const auto w = omega_components(x1, x2, x3, spec.chart);
   for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
         g[i][j] = B * w[i] * w[j];
         if (i == j) g[i][j] += A;
      }
      g[i][3] = B * w[i];
      g[3][i] = g[i][3];
   }
   g[3][3] = B;
   return g;
}

}  // namespace detail
}  // namespace tnindex::geometry
