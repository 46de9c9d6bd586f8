#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tnindex/eta.hpp"

using namespace tnindex;
using namespace tnindex::eta;

namespace {

gauge::InstantonData single(double lambda, int chern)
{
   return gauge::InstantonData{{{lambda, 0.0, chern}}};
}

// Direct truncated sum of the odd theta series.
double theta_lhs(double a, double s)
{
   double sum = 0.0;
   for (int k = -400; k <= 400; ++k) {
      const double x = k + a;
      sum += x * std::exp(-4.0 * std::numbers::pi * std::numbers::pi * s * x * x);
   }
   return sum;
}

}  // namespace

TEST_SUITE("eta")
{
   TEST_CASE("form scalar arithmetic is nilpotent in the 2-form part")
   {
      const FormScalar<double> x{2.0, 3.0}, y{-1.0, 0.5};
      const auto p = x * y;
      CHECK(p.a0 == -2.0);
      CHECK(p.a2 == doctest::Approx(2.0 * 0.5 + 3.0 * -1.0));
      const auto e = exp(FormScalar<double>{0.0, 1.5});
      CHECK(e.a0 == doctest::Approx(1.0));
      CHECK(e.a2 == doctest::Approx(1.5));
      CHECK((x + y).a2 == 3.5);
      CHECK((x - y).a0 == 3.0);
   }

   TEST_CASE("route names")
   {
      for (auto r : {Route::ModeSum, Route::Poisson, Route::Bernoulli}) {
         CHECK(parse_route(to_string(r)) == r);
      }
      CHECK_THROWS_AS(parse_route("fourier"), ValidationError);
   }

   TEST_CASE("series spec validation")
   {
      SeriesSpec s;
      CHECK_NOTHROW(validate(s));
      s.K = 10;
      CHECK_THROWS_AS(validate(s), ValidationError);
      s = SeriesSpec{};
      s.u_max = 100.0;
      CHECK_THROWS_AS(validate(s), ValidationError);
      s = SeriesSpec{};
      s.tolerance = 0.0;
      CHECK_THROWS_AS(validate(s), ValidationError);
   }

   TEST_CASE("vertical spectrum")
   {
      const auto s = vertical_spectrum(0.25, 1);
      REQUIRE(s.size() == 3);
      CHECK(s[0] == -1.25);
      CHECK(s[1] == -0.25);
      CHECK(s[2] == 0.75);
      const auto a = vertical_spectrum(0.3, 5), b = vertical_spectrum(1.3, 5);
      // Same set up to the window: every interior value of one appears in the other.
      for (std::size_t i = 0; i + 1 < a.size(); ++i) CHECK(std::abs(a[i] - b[i + 1]) < 1e-12);
      CHECK_THROWS_AS(vertical_spectrum(2.0, 5), GenericityError);
   }

   TEST_CASE("closed forms")
   {
      // Oracle: a0 = {l} - 1/2, a2 = -({l}^2 - {l} + 1/6) / 2.
      for (double l : {0.1, 0.25, 0.5, 0.9, 1.25, -0.4}) {
         const double f = l - std::floor(l);
         const auto v = eta_bernoulli(l);
         CHECK(v.eta.a0 == doctest::Approx(f - 0.5));
         CHECK(v.eta.a2 == doctest::Approx(-(f * f - f + 1.0 / 6.0) / 2.0));
      }
   }

   TEST_CASE("reflection symmetry")
   {
      for (double l : {0.1, 0.3, 0.45}) {
         for (auto r : {Route::Poisson, Route::Bernoulli}) {
            const auto a = eta_route(l, r, SeriesSpec{}), b = eta_route(1.0 - l, r, SeriesSpec{});
            CHECK(std::abs(a.eta.a0 + b.eta.a0) < 1e-12);
            CHECK(std::abs(a.eta.a2 - b.eta.a2) < 1e-12);
         }
      }
   }

   TEST_CASE("the three routes agree")
   {
      std::mt19937_64 rng(41);
      std::uniform_real_distribution<double> u(0.02, 0.98);
      for (int t = 0; t < 6; ++t) {
         const double l = u(rng);
         const auto ref = eta_bernoulli(l).eta;
         for (auto r : {Route::ModeSum, Route::Poisson}) {
            const auto v = eta_route(l, r, SeriesSpec{});
            CHECK(std::abs(v.eta.a0 - ref.a0) < 1e-6);
            CHECK(std::abs(v.eta.a2 - ref.a2) < 1e-6);
            CHECK(v.error_estimate < 1e-6);
         }
      }
      const auto m = eta_mode_sum(0.37, SeriesSpec{});
      CHECK(m.imaginary_residual < 1e-8);
   }

   TEST_CASE("half-integer holonomy has vanishing degree-0 part")
   {
      for (auto r : {Route::ModeSum, Route::Poisson, Route::Bernoulli}) {
         CHECK(std::abs(eta_route(0.5, r, SeriesSpec{}).eta.a0) < 1e-12);
      }
   }

   TEST_CASE("holonomy shift by one leaves the eta form unchanged")
   {
      for (auto r : {Route::ModeSum, Route::Poisson, Route::Bernoulli}) {
         const auto a = eta_route(0.3, r, SeriesSpec{}).eta, b = eta_route(1.3, r, SeriesSpec{}).eta;
         CHECK(std::abs(a.a0 - b.a0) < 1e-10);
         CHECK(std::abs(a.a2 - b.a2) < 1e-10);
      }
   }

   TEST_CASE("integrated eta contributions")
   {
      CHECK(eta_integral(single(0.25, 0), Route::Bernoulli, SeriesSpec{}).integrated
            == doctest::Approx(-1.0 / 96.0));
      CHECK(eta_integral(single(0.5, 3), Route::Bernoulli, SeriesSpec{}).integrated
            == doctest::Approx(-1.0 / 24.0));
      // a0 = -1/4 twisted by c = 2, minus a2 = -1/96.
      CHECK(eta_integral(single(0.25, 2), Route::Bernoulli, SeriesSpec{}).integrated
            == doctest::Approx(0.5 - 1.0 / 96.0));
      CHECK_THROWS_AS(eta_integral(single(1.0, 0), Route::Bernoulli, SeriesSpec{}), GenericityError);
   }

   TEST_CASE("integrated eta is additive over channels")
   {
      const gauge::InstantonData both{{{0.2, 0.0, 1}, {0.65, 1.0, -3}}};
      for (auto r : {Route::Poisson, Route::Bernoulli}) {
         const double sum = eta_integral(both, r, SeriesSpec{}).integrated;
         const double parts = eta_integral(single(0.2, 1), r, SeriesSpec{}).integrated
                              + eta_integral(single(0.65, -3), r, SeriesSpec{}).integrated;
         CHECK(sum == doctest::Approx(parts).epsilon(1e-13));
      }
   }

   TEST_CASE("Poisson identity")
   {
      for (double a : {0.1, 0.25, 0.5 - 1e-3}) {
         for (double s : {0.01, 0.1, 1.0}) {
            const auto c = poisson_check(a, s);
            CHECK(std::abs(c.lhs - c.rhs) < 1e-10);
            CHECK(std::abs(c.lhs - theta_lhs(a, s)) < 1e-12);
            const auto shifted = poisson_check(a + 1.0, s);
            CHECK(std::abs(shifted.rhs - c.rhs) < 1e-12);
         }
      }
   }

   TEST_CASE("Abel-Richardson sums of the Fourier series")
   {
      // Oracles: the sawtooth 1/2 - x and pi^2 B_2(x) / pi^2 = x^2 - x + 1/6.
      for (double x : {0.1, 0.3, 0.77}) {
         CHECK(std::abs(sine_series(x, 1000).value - (0.5 - x)) < 1e-9);
         CHECK(std::abs(cosine_series(x, 1000).value - (x * x - x + 1.0 / 6.0)) < 1e-9);
      }
      // At x = 0 the plain partial sum is Basel truncated at P.
      double basel = 0.0;
      for (int p = 1; p <= 1000; ++p) basel += 1.0 / (std::numbers::pi * std::numbers::pi * p * p);
      CHECK(cosine_series_partial(0.0, 1000) == doctest::Approx(basel).epsilon(1e-13));
   }
}
