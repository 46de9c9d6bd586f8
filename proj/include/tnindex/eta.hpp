#pragma once

#include <string>
#include <vector>

#include "tnindex/form_scalar.hpp"
#include "tnindex/gauge.hpp"

/// Family eta form of the vertical circle operators on the boundary.
///
/// For a channel with holonomy lambda the fiber operator has spectrum
/// k - lambda, k in Z. The eta form is returned as a FormScalar<double>
/// (a0, a2) meaning a0 + a2 vol / (2i), where vol is the area form of the
/// unit base sphere, so both parts are real.
namespace tnindex::eta {

enum class Route { ModeSum, Poisson, Bernoulli };

const char* to_string(Route r);

/// Parses "mode_sum" / "poisson" / "bernoulli"; throws ValidationError.
Route parse_route(const std::string& s);

struct SeriesSpec
{
   int K = 50;           ///< mode cutoff (raised where the heat kernel needs it)
   int P = 1000;         ///< Poisson cutoff (raised by the Abel extrapolation)
   double u_min = 1e-4;  ///< heat-time window of the mode-sum integral
   double u_max = 1e4;
   double tolerance = 1e-9;
};

/// Throws ValidationError unless K >= 50, P >= 20, 0 < u_min < 1e-3,
/// 1e3 < u_max < inf and tolerance > 0.
void validate(const SeriesSpec& s);

/// Eigenvalues k - lambda for |k| <= K, ascending. Throws GenericityError
/// (channel -1) when dist(lambda, Z) < lambda_tol.
std::vector<double> vertical_spectrum(double lambda, int K,
                                      double lambda_tol = gauge::default_lambda_tol);

struct RouteValue
{
   FormScalar<double> eta;
   double error_estimate = 0.0;
   /// Size of the part that should vanish by reality (mode sum only).
   double imaginary_residual = 0.0;
};

/// Heat-kernel mode sum: int_0^inf of the supertrace over the modes,
/// with the curvature of the base fibration entering through a nilpotent
/// shift of every eigenvalue. [u_min, u_max] is integrated numerically, the
/// tail u > u_max analytically per mode, and u < u_min is bounded.
RouteValue eta_mode_sum(double lambda, const SeriesSpec& spec);

/// Poisson-resummed series in the winding number p, evaluated with Abel
/// summation and Richardson extrapolation.
RouteValue eta_poisson(double lambda, const SeriesSpec& spec);

/// Closed forms through the Bernoulli polynomials: a0 = {lambda} - 1/2,
/// a2 = -B_2({lambda}) / 2.
RouteValue eta_bernoulli(double lambda);

RouteValue eta_route(double lambda, Route route, const SeriesSpec& spec);

struct EtaResult
{
   Route route = Route::Bernoulli;
   std::vector<FormScalar<double>> per_channel;
   /// (1/2 pi i) int over the base of the channel's eta form, with the
   /// boundary line bundle twisting the degree-0 part: -a2 - a0 c_j.
   std::vector<double> per_channel_integrated;
   double integrated = 0.0;
   double error_estimate = 0.0;
};

EtaResult eta_integral(const gauge::InstantonData& data, Route route, const SeriesSpec& spec,
                       double lambda_tol = gauge::default_lambda_tol);

/// Both sides of the Poisson identity for the odd theta series
///   sum_k (k + a) e^{-4 pi^2 s (k + a)^2}
///     = sum_{p >= 1} 2 p sin(2 pi p a) (4 pi s)^{-3/2} e^{-p^2 / (4 s)}.
struct PoissonCheck
{
   double lhs = 0.0;
   double rhs = 0.0;
};

PoissonCheck poisson_check(double a, double s, int K = 200, int P = 200);

struct SeriesValue
{
   double value = 0.0;
   double error_estimate = 0.0;
};

/// sum_{p >= 1} sin(2 pi p x) / (pi p), Abel-Richardson summed.
SeriesValue sine_series(double x, int P);

/// sum_{p >= 1} cos(2 pi p x) / (pi^2 p^2), Abel-Richardson summed.
SeriesValue cosine_series(double x, int P);

/// Plain partial sum of the cosine series up to P.
double cosine_series_partial(double x, int P);

}  // namespace tnindex::eta
