#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tnindex/gauge.hpp"

using namespace tnindex;
using namespace tnindex::gauge;
using geometry::GaugeChart;

namespace {

Point random_point(std::mt19937_64& rng)
{
   std::uniform_real_distribution<double> u(0.0, 1.0);
   return Point::polar(0.05 + 30.0 * u(rng), std::acos(1.0 - 2.0 * u(rng)),
                       2.0 * std::numbers::pi * u(rng));
}

InstantonData channels(std::initializer_list<InstantonChannel> list)
{
   return InstantonData{std::vector<InstantonChannel>(list)};
}

}  // namespace

TEST_SUITE("gauge")
{
   TEST_CASE("integer distance and fractional part")
   {
      CHECK(distance_to_integer(0.95) == doctest::Approx(0.05));
      CHECK(distance_to_integer(-0.3) == doctest::Approx(0.3));
      CHECK(fractional_part(1.25) == doctest::Approx(0.25));
      CHECK(fractional_part(-0.25) == doctest::Approx(0.75));
   }

   TEST_CASE("validation")
   {
      CHECK_THROWS_AS(validate(InstantonData{}), ValidationError);
      CHECK_THROWS_AS(validate(channels({{0.5, 0, 0}, {0.5, 1, 0}})), ValidationError);
      CHECK_THROWS_AS(validate(channels({{NAN, 0, 0}})), ValidationError);
      try {
         validate(channels({{0.3, 0, 0}, {2.0000000001, 0, 0}}));
         FAIL("expected genericity error");
      } catch (const GenericityError& e) {
         CHECK(e.channel() == 1);
         CHECK(std::string(e.kind()) == "genericity");
      }
      CHECK_NOTHROW(validate(channels({{0.3, 0, 0}, {0.7, 0, 0}})));
   }

   TEST_CASE("connection coefficient at lambda = 0, m = 1, r = 1/2")
   {
      const auto a = model_connection_at({0.0, 1.0, 0}, Point::polar(0.5, std::numbers::pi / 2, 0.0));
      // On the equator omega vanishes in the equatorial chart.
      CHECK(a.coeff[3] == doctest::Approx(0.5));
   }

   TEST_CASE("lambda = m gives an r-independent fiber coefficient and no curvature")
   {
      for (double r : {0.1, 1.0, 40.0}) {
         const Point p = Point::polar(r, 1.0, 0.5);
         const auto a = model_connection_at({0.7, 0.7, 0}, p);
         CHECK(a.coeff[3] == doctest::Approx(0.7));
         const auto s = field_strength_at({0.7, 0.7, 0}, p);
         CHECK(s.f.cwiseAbs().maxCoeff() < 1e-15);
      }
   }

   TEST_CASE("far out the connection is lambda (dtau + omega) minus m omega")
   {
      const Point p = Point::polar(1e9, 1.0, 0.5);
      const auto a = model_connection_at({0.3, 2.0, 0}, p);
      CHECK(a.coeff[3] == doctest::Approx(0.3).epsilon(1e-8));
   }

   TEST_CASE("field strength is d of the connection")
   {
      // Oracle: central differences of the connection components.
      std::mt19937_64 rng(17);
      const InstantonChannel ch{0.3, -1.5, 0};
      for (int k = 0; k < 10; ++k) {
         const Point p = random_point(rng);
         const auto chart = geometry::regular_chart(p);
         const auto s = field_strength_at(ch, p, chart);
         const double h = 1e-5 * p.r();
         std::array<std::array<double, 4>, 4> da{};
         for (int mu = 0; mu < 3; ++mu) {
            Point a = p, b = p;
            (mu == 0 ? a.x1 : mu == 1 ? a.x2 : a.x3) += h;
            (mu == 0 ? b.x1 : mu == 1 ? b.x2 : b.x3) -= h;
            const auto ca = model_connection_at(ch, a, chart).coeff;
            const auto cb = model_connection_at(ch, b, chart).coeff;
            for (int nu = 0; nu < 4; ++nu) da[mu][nu] = (ca[nu] - cb[nu]) / (2.0 * h);
         }
         for (int mu = 0; mu < 3; ++mu) {
            for (int nu = mu + 1; nu < 4; ++nu) {
               const double fd = da[mu][nu] - (nu < 3 ? da[nu][mu] : 0.0);
               CHECK(std::abs(s.f(mu, nu) - fd) < 1e-6 * std::max(1.0, s.norm));
            }
         }
      }
   }

   TEST_CASE("model fields are closed and of one duality type")
   {
      std::mt19937_64 rng(23);
      std::uniform_real_distribution<double> u(-3.0, 3.0);
      for (int k = 0; k < 50; ++k) {
         const InstantonChannel ch{u(rng), u(rng), 0};
         const Point p = random_point(rng);
         const auto s = field_strength_at(ch, p, geometry::regular_chart(p));
         CHECK(s.closure_residual < 1e-10 * std::max(1.0, s.norm));
         CHECK(std::min(s.asd_defect, s.sd_defect) < 1e-8 * std::max(1.0, s.norm));
         if (s.norm > 1e-12) CHECK(classify(s, 1e-8) == Duality::AntiSelfDual);
      }
   }

   TEST_CASE("overlapping charts give the same invariants")
   {
      // Components differ because tau is shifted along with omega; norms and
      // the top-form density do not.
      const Point p = Point::polar(2.0, 1.1, 0.4);
      const InstantonChannel ch{0.4, 1.0, 0};
      const auto e = field_strength_at(ch, p, GaugeChart::Equatorial);
      for (auto chart : {GaugeChart::North, GaugeChart::South}) {
         const auto n = field_strength_at(ch, p, chart);
         CHECK(n.norm == doctest::Approx(e.norm).epsilon(1e-13));
         CHECK(wedge_density(n.f) == doctest::Approx(wedge_density(e.f)).epsilon(1e-13));
         CHECK(n.f(0, 3) == doctest::Approx(e.f(0, 3)));
      }
   }

   TEST_CASE("wedge density of dx1^dx2 + dx3^dtau")
   {
      Mat4 f = Mat4::Zero();
      f(0, 1) = 1.0;
      f(1, 0) = -1.0;
      f(2, 3) = 1.0;
      f(3, 2) = -1.0;
      CHECK(wedge_density(f) == doctest::Approx(2.0));
   }

   TEST_CASE("bulk action against the Stokes closed form")
   {
      // Oracle: F ^ F = d(a ^ da) with a boundary term at infinity only,
      // giving -(lambda - m)^2 / 2 per channel.
      charclasses::QuadratureSpec q;
      for (auto [l, m] : {std::pair{0.0, 1.0}, {0.3, -1.0}, {0.7, 2.5}}) {
         const auto b = bulk_action(channels({{l, m, 0}}), q);
         CHECK(std::abs(b.value + 0.5 * (l - m) * (l - m)) < 1e-9);
      }
   }

   TEST_CASE("bulk vanishes when lambda = m in every channel")
   {
      const auto b = bulk_action(channels({{0.4, 0.4, 0}, {1.5, 1.5, 2}}), charclasses::QuadratureSpec{});
      CHECK(std::abs(b.value) < 1e-8);
   }

   TEST_CASE("bulk of lambda = 0, m = 1 is stable under grid doubling")
   {
      charclasses::QuadratureSpec q;
      q.n_r = 128;
      const double a = bulk_action(channels({{0.0, 1.0, 0}}), q).value;
      q.n_r = 256;
      const double b = bulk_action(channels({{0.0, 1.0, 0}}), q).value;
      CHECK(std::isfinite(a));
      CHECK(std::abs(a - b) < 1e-4);
   }

   TEST_CASE("bulk is additive over channels")
   {
      charclasses::QuadratureSpec q;
      const double one = bulk_action(channels({{0.2, 1.0, 0}}), q).value;
      const double two = bulk_action(channels({{0.2, 1.0, 0}, {0.2, 1.0, 0}}), q).value;
      CHECK(two == doctest::Approx(2.0 * one).epsilon(1e-14));
      const double other = bulk_action(channels({{0.6, -1.0, 0}}), q).value;
      const double both = bulk_action(channels({{0.2, 1.0, 0}, {0.6, -1.0, 0}}), q).value;
      CHECK(both == doctest::Approx(one + other).epsilon(1e-12));
   }

   TEST_CASE("boundary data and the spectral gap")
   {
      const auto b = boundary_data(channels({{0.3, 0, 1}, {0.7, 0, -2}}));
      CHECK(b.delta == 0.15);
      CHECK(b.cherns == std::vector<int>{1, -2});
      CHECK(boundary_data(channels({{0.95, 0, 0}})).delta == doctest::Approx(0.025));
      const auto shifted = boundary_data(channels({{1.25, 0, 0}}));
      CHECK(shifted.lambdas_mod1[0] == doctest::Approx(0.25));
      CHECK(shifted.delta == doctest::Approx(boundary_data(channels({{0.25, 0, 0}})).delta));
      CHECK_THROWS_AS(boundary_data(channels({{3.0, 0, 0}})), GenericityError);
   }

   TEST_CASE("gap agrees with a direct spectrum scan")
   {
      std::mt19937_64 rng(31);
      std::uniform_real_distribution<double> u(-5.0, 5.0);
      for (int t = 0; t < 50; ++t) {
         const double l = u(rng);
         const double delta = boundary_data(channels({{l, 0, 0}})).delta;
         double smallest = 1e9;
         for (int k = -10; k <= 10; ++k) smallest = std::min(smallest, std::abs(k - l));
         CHECK(delta == doctest::Approx(0.5 * smallest).epsilon(1e-12));
      }
   }
}
