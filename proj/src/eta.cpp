#include "tnindex/eta.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include "tnindex/errors.hpp"
#include "tnindex/numerics.hpp"

namespace tnindex::eta {

namespace {

constexpr double pi = std::numbers::pi;
using cd = std::complex<double>;

void check_lambda(double lambda, double lambda_tol)
{
   if (!std::isfinite(lambda)) throw ValidationError("eta: lambda must be finite");
   if (gauge::distance_to_integer(lambda) < lambda_tol) {
      std::ostringstream os;
      os << "eta: lambda = " << lambda << " lies within " << lambda_tol << " of an integer";
      throw GenericityError(os.str(), -1);
   }
}

// Abel means sum_p t_p (1 - h)^p at h = h0 / 2^j, extrapolated to h = 0.
template <typename Term>
SeriesValue abel_richardson(Term term, int P)
{
   constexpr int levels = 9;
   constexpr double h0 = 0.05;
   std::vector<std::vector<double>> T(levels);
   for (int j = 0; j < levels; ++j) {
      const double h = h0 / std::ldexp(1.0, j);
      const long n = std::max<long>(P, static_cast<long>(std::ceil(45.0 / h)));
      const double lq = std::log1p(-h);
      std::vector<double> terms(static_cast<std::size_t>(n));
      for (long p = 1; p <= n; ++p) terms[p - 1] = term(p) * std::exp(lq * static_cast<double>(p));
      T[j].push_back(pairwise_sum(terms));
      for (int k = 1; k <= j; ++k) {
         const double f = std::ldexp(1.0, k) - 1.0;
         T[j].push_back(T[j][k - 1] + (T[j][k - 1] - T[j - 1][k - 1]) / f);
      }
   }
   SeriesValue out;
   out.value = T[levels - 1][levels - 1];
   out.error_estimate = std::abs(out.value - T[levels - 1][levels - 2]);
   return out;
}

// Summand of the mode-sum integrand at heat time u, as a form in vol.
FormScalar<cd> heat_supertrace(double lambda, double u, int K)
{
   const long keff = std::max<long>(K, static_cast<long>(std::ceil(std::sqrt(75.0 / u))));
   const long kc = std::lround(lambda);
   const cd shift(0.0, 1.0 / (8.0 * u));
   FormScalar<cd> acc;
   for (long k = kc - keff; k <= kc + keff; ++k) {
      const FormScalar<cd> x(cd(static_cast<double>(k) - lambda), shift);
      acc += x * exp(x * x * cd(-u));
   }
   return acc * cd(1.0 / (2.0 * std::sqrt(pi * u)));
}

}  // namespace

const char* to_string(Route r)
{
   switch (r) {
      case Route::ModeSum: return "mode_sum";
      case Route::Poisson: return "poisson";
      default: return "bernoulli";
   }
}

Route parse_route(const std::string& s)
{
   if (s == "mode_sum") return Route::ModeSum;
   if (s == "poisson") return Route::Poisson;
   if (s == "bernoulli") return Route::Bernoulli;
   throw ValidationError("unknown eta route '" + s + "'");
}

void validate(const SeriesSpec& s)
{
   if (s.K < 50) throw ValidationError("series: K must be >= 50");
   if (s.P < 20) throw ValidationError("series: P must be >= 20");
   if (!(s.u_min > 0.0 && s.u_min < 1e-3)) throw ValidationError("series: need 0 < u_min < 1e-3");
   if (!(s.u_max > 1e3) || !std::isfinite(s.u_max)) {
      throw ValidationError("series: need 1e3 < u_max < inf");
   }
   if (!(s.tolerance > 0.0)) throw ValidationError("series: tolerance must be > 0");
}

std::vector<double> vertical_spectrum(double lambda, int K, double lambda_tol)
{
   check_lambda(lambda, lambda_tol);
   if (K < 0) throw ValidationError("vertical_spectrum: K must be >= 0");
   std::vector<double> out;
   out.reserve(2 * static_cast<std::size_t>(K) + 1);
   for (int k = -K; k <= K; ++k) out.push_back(static_cast<double>(k) - lambda);
   return out;
}

RouteValue eta_mode_sum(double lambda, const SeriesSpec& spec)
{
   validate(spec);
   check_lambda(lambda, gauge::default_lambda_tol);
   boost::math::quadrature::tanh_sinh<double> quad;
   const double a = std::log(spec.u_min), b = std::log(spec.u_max);

   // Integrate in t = log u.
   double err0 = 0.0, err2 = 0.0, re_max = 0.0;
   const double a0 = quad.integrate(
       [&](double t) {
          const double u = std::exp(t);
          return u * heat_supertrace(lambda, u, spec.K).a0.real();
       },
       a, b, 1e-11, &err0);
   const double e_im = quad.integrate(
       [&](double t) {
          const double u = std::exp(t);
          const cd c = heat_supertrace(lambda, u, spec.K).a2;
          re_max = std::max(re_max, u * std::abs(c.real()));
          return u * c.imag();
       },
       a, b, 1e-11, &err2);

   // Exact per-mode tails over u > u_max.
   const double U = spec.u_max, sU = std::sqrt(U);
   double tail0 = 0.0, tail2 = 0.0;
   const long kc = std::lround(lambda);
   for (long k = kc - spec.K; k <= kc + spec.K; ++k) {
      const double mu = static_cast<double>(k) - lambda, am = std::abs(mu);
      tail0 += 0.5 * std::copysign(1.0, mu) * std::erfc(am * sU);
      tail2 += (std::exp(-U * mu * mu) / sU - 2.0 * am * std::sqrt(pi) * std::erfc(am * sU))
               / (8.0 * std::sqrt(pi));
   }

   // Below u_min the supertrace is O(e^{-pi^2/u}) by Poisson summation.
   const double um = spec.u_min, decay = std::exp(-pi * pi / um);
   const double small_u = 2.0 * std::pow(pi / um, 1.5) * std::sqrt(um / pi) * decay
                          + 0.5 * pi * pi / (um * um) * decay;

   RouteValue out;
   // The vol coefficient c is i * (real number); a2 = 2 i c.
   const double c_im = e_im + tail2;
   out.eta = {a0 + tail0, -2.0 * c_im};
   out.imaginary_residual = 2.0 * re_max * (b - a);
   out.error_estimate = err0 + 2.0 * err2 + small_u;
   if (out.error_estimate > spec.tolerance) {
      std::ostringstream os;
      os << "eta mode sum: error estimate " << out.error_estimate << " > tolerance "
         << spec.tolerance;
      throw ConvergenceError(os.str());
   }
   return out;
}

SeriesValue sine_series(double x, int P)
{
   return abel_richardson(
       [x](long p) {
          return boost::math::sin_pi(2.0 * static_cast<double>(p) * x) / (pi * static_cast<double>(p));
       },
       P);
}

SeriesValue cosine_series(double x, int P)
{
   return abel_richardson(
       [x](long p) {
          const double dp = static_cast<double>(p);
          return boost::math::cos_pi(2.0 * dp * x) / (pi * pi * dp * dp);
       },
       P);
}

double cosine_series_partial(double x, int P)
{
   std::vector<double> terms(static_cast<std::size_t>(std::max(P, 0)));
   for (int p = 1; p <= P; ++p) {
      const double dp = p;
      terms[p - 1] = boost::math::cos_pi(2.0 * dp * x) / (pi * pi * dp * dp);
   }
   return pairwise_sum(terms);
}

RouteValue eta_poisson(double lambda, const SeriesSpec& spec)
{
   validate(spec);
   check_lambda(lambda, gauge::default_lambda_tol);
   const SeriesValue s = sine_series(lambda, spec.P);
   const SeriesValue c = cosine_series(lambda, spec.P);
   RouteValue out;
   out.eta = {-s.value, -0.5 * c.value};
   out.error_estimate = s.error_estimate + 0.5 * c.error_estimate;
   if (out.error_estimate > spec.tolerance) {
      std::ostringstream os;
      os << "eta poisson: error estimate " << out.error_estimate << " > tolerance "
         << spec.tolerance;
      throw ConvergenceError(os.str());
   }
   return out;
}

RouteValue eta_bernoulli(double lambda)
{
   check_lambda(lambda, gauge::default_lambda_tol);
   const double f = gauge::fractional_part(lambda);
   RouteValue out;
   out.eta = {f - 0.5, -0.5 * (f * f - f + 1.0 / 6.0)};
   return out;
}

RouteValue eta_route(double lambda, Route route, const SeriesSpec& spec)
{
   switch (route) {
      case Route::ModeSum: return eta_mode_sum(lambda, spec);
      case Route::Poisson: return eta_poisson(lambda, spec);
      default: return eta_bernoulli(lambda);
   }
}

EtaResult eta_integral(const gauge::InstantonData& data, Route route, const SeriesSpec& spec,
                       double lambda_tol)
{
   validate(spec);
   gauge::validate(data, lambda_tol);
   EtaResult out;
   out.route = route;
   for (const auto& ch : data.channels) {
      const RouteValue v = eta_route(ch.lambda, route, spec);
      out.per_channel.push_back(v.eta);
      out.per_channel_integrated.push_back(-v.eta.a2 - v.eta.a0 * ch.chern);
      out.error_estimate += v.error_estimate * (1.0 + std::abs(ch.chern));
   }
   double acc = 0.0;
   for (double x : out.per_channel_integrated) acc += x;
   out.integrated = acc;
   return out;
}

PoissonCheck poisson_check(double a, double s, int K, int P)
{
   if (!(s > 0.0)) throw DomainError("poisson_check: s must be > 0");
   if (K < 0 || P < 0) throw ValidationError("poisson_check: K and P must be >= 0");
   std::vector<double> lhs, rhs;
   for (int k = -K; k <= K; ++k) {
      const double x = k + a;
      lhs.push_back(x * std::exp(-4.0 * pi * pi * s * x * x));
   }
   const double pref = std::pow(4.0 * pi * s, -1.5);
   for (int p = 1; p <= P; ++p) {
      rhs.push_back(2.0 * p * boost::math::sin_pi(2.0 * p * a) * pref
                    * std::exp(-static_cast<double>(p) * p / (4.0 * s)));
   }
   return {pairwise_sum(lhs), pairwise_sum(rhs)};
}

}  // namespace tnindex::eta
