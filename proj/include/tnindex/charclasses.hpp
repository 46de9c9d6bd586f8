#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "tnindex/geometry.hpp"

/// Characteristic-class densities and symmetry-reduced radial quadrature.
///
/// Every integrand on Taub-NUT handled here is invariant under the
/// SO(3) x U(1) action (up to gauge), so a 4-integral reduces to
/// int rho(r) dr with rho obtained from a few angular samples on the level
/// set {r = const}; the samples double as an isotropy check.
namespace tnindex::charclasses {

enum class Scheme { GaussLegendreComposite, TanhSinh };

const char* to_string(Scheme s);

struct QuadratureSpec
{
   double r_min = 1e-5;
   /// May be +inf: the last segment is then mapped onto (0, 1] by r = r0/s.
   double r_max = 80.0;
   int n_r = 256;
   int n_ang = 8;
   Scheme scheme = Scheme::GaussLegendreComposite;
   double tolerance = 1e-6;
   int threads = 0;  ///< 0: TN_INDEX_THREADS, else 1
};

/// Throws ValidationError unless r_min > 0, r_max > r_min, n_r >= 16,
/// n_ang >= 1 and tolerance > 0.
void validate(const QuadratureSpec& q);

/// Defaults for a metric: r_max = 20 r_out.
QuadratureSpec default_quadrature(const geometry::MetricSpec& spec);

/// Radial density samples on a quadrature grid.
struct RadialDensity
{
   std::vector<double> nodes;
   std::vector<double> weights;
   std::vector<double> values;
   std::vector<double> isotropy;  ///< per-node angular spread (relative)
};

/// One evaluation of a radial density together with its isotropy residual.
struct DensitySample
{
   double value = 0.0;
   double isotropy = 0.0;
};

using DensityFn = std::function<DensitySample(double r)>;

/// Composite grid with panel breaks at r_min, each breakpoint and r_max.
/// The inner segment uses quadratically graded panels, the outer one
/// geometric panels (or the 1/s map when r_max is infinite). `n_r` is split
/// into 8 panels of n_r/8 nodes each.
RadialDensity radial_grid(const QuadratureSpec& q, int n_r, std::span<const double> breakpoints);

/// Fixed-order weighted sum of a sampled density.
double integrate(const RadialDensity& rho);

struct RadialIntegral
{
   double value = 0.0;
   double error_estimate = 0.0;
   RadialDensity density;                         ///< samples on the fine grid
   std::vector<std::pair<int, double>> history;   ///< (node count, value)
};

/// Integrates on grids of n_r/2 and n_r nodes. The error estimate is the
/// difference of the two. Throws ConvergenceError (with the history) if it
/// exceeds q.tolerance, or SymmetryError if any isotropy residual does.
RadialIntegral integrate_radial(const DensityFn& rho, const QuadratureSpec& q,
                                std::span<const double> breakpoints);

/// Quadrature of an already sampled density; the error estimate comes from
/// the embedded half-order rule when `coarse` is supplied.
RadialIntegral integrate_radial(const RadialDensity& fine, const RadialDensity* coarse,
                                const QuadratureSpec& q);

/// Directions on the unit sphere used for angular sampling (poles avoided).
std::vector<std::pair<double, double>> angular_directions(int n_ang);

/// Relative spread (max - min) / max(|mean|, floor) of angular samples.
double isotropy_residual(std::span<const double> samples);

/// rho(r) with (1/192 pi^2) int tr R^R = int rho dr, plus isotropy.
DensitySample pontryagin_sample(const geometry::MetricSpec& spec, double r, int n_ang);

/// rho(r) alone; throws SymmetryError when isotropy exceeds quad.tolerance.
double pontryagin_density(const geometry::MetricSpec& spec, double r,
                          const QuadratureSpec& quad);

struct PontryaginResult
{
   double value = 0.0;
   double error_estimate = 0.0;
   double tail_bound = 0.0;
   int n_r = 0;
   RadialIntegral integral;
};

/// (1/192 pi^2) int tr R^R over [r_min, r_max] with a certified tail.
PontryaginResult pontryagin_integral(const geometry::MetricSpec& spec,
                                     const QuadratureSpec& quad);

/// Upper bound on |int_{r > r_cut} rho| from an exponential fit in y = log r
/// over a fixed window beyond r_out. Requires r_cut > r_out; throws
/// ConvergenceError if the fitted tail does not decay.
double cs_tail_bound(const geometry::MetricSpec& spec, double r_cut);

struct ConvergenceRow
{
   int n_r = 0;
   double value = 0.0;
   double error_estimate = 0.0;
   double tail_bound = 0.0;
};

/// Pontryagin integral at each n_r (ascending).
std::vector<ConvergenceRow> pontryagin_convergence(const geometry::MetricSpec& spec,
                                                   const QuadratureSpec& quad,
                                                   std::span<const int> n_r_values);

/// Breakpoints used for panels: {r_in, r_out} of the blend.
std::vector<double> blend_breakpoints(const geometry::MetricSpec& spec);

}  // namespace tnindex::charclasses
