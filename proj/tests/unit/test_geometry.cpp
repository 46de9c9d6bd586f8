#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tnindex/geometry.hpp"

using namespace tnindex;
using namespace tnindex::geometry;

namespace {

constexpr double pi = std::numbers::pi;

Point random_point(std::mt19937_64& rng, double r_lo, double r_hi)
{
   std::uniform_real_distribution<double> u(0.0, 1.0);
   const double r = r_lo + (r_hi - r_lo) * u(rng);
   return Point::polar(r, std::acos(1.0 - 2.0 * u(rng)), 2.0 * pi * u(rng), 2.0 * pi * u(rng));
}

MetricSpec variant(MetricVariant v, double t = 0.0)
{
   MetricSpec s;
   s.variant = v;
   s.t = t;
   return s;
}

}  // namespace

TEST_SUITE("geometry")
{
   TEST_CASE("point wraps tau and reports polar coordinates")
   {
      const Point p(0.0, 0.0, 1.0, -0.5);
      CHECK(p.tau == doctest::Approx(2.0 * pi - 0.5));
      const Point q = Point::polar(2.0, 0.7, -2.5, 7.0);
      CHECK(q.r() == doctest::Approx(2.0));
      CHECK(q.theta() == doctest::Approx(0.7));
      CHECK(q.phi() == doctest::Approx(-2.5));
      CHECK(q.tau == doctest::Approx(7.0 - 2.0 * pi));
   }

   TEST_CASE("potential at r = 1/2 and the equatorial gauge on the equator")
   {
      const auto s = potential_and_omega(Point::polar(0.5, pi / 2, 0.3), GaugeChart::Equatorial);
      CHECK(s.V == 2.0);
      for (double w : s.omega) CHECK(std::abs(w) < 1e-16);
   }

   TEST_CASE("chart errors on the singular axes")
   {
      const Point up(0.0, 0.0, 1.0), down(0.0, 0.0, -1.0);
      CHECK_THROWS_AS(potential_and_omega(up, GaugeChart::Equatorial), ChartError);
      CHECK_THROWS_AS(potential_and_omega(down, GaugeChart::North), ChartError);
      CHECK_THROWS_AS(potential_and_omega(up, GaugeChart::South), ChartError);
      CHECK_NOTHROW(potential_and_omega(up, GaugeChart::North));
      CHECK_NOTHROW(potential_and_omega(down, GaugeChart::South));
      CHECK(regular_chart(up) == GaugeChart::North);
      CHECK(regular_chart(down) == GaugeChart::South);
      CHECK_THROWS_AS(potential_and_omega(Point(0, 0, 0), GaugeChart::North), DomainError);
   }

   TEST_CASE("charts differ by a multiple of dphi on the overlap")
   {
      const Point p = Point::polar(1.7, 1.2, 0.9);
      const auto e = potential_and_omega(p, GaugeChart::Equatorial).omega;
      const auto n = potential_and_omega(p, GaugeChart::North).omega;
      const auto s = potential_and_omega(p, GaugeChart::South).omega;
      const double rho2 = p.x1 * p.x1 + p.x2 * p.x2;
      const double dphi[3] = {-p.x2 / rho2, p.x1 / rho2, 0.0};
      for (int i = 0; i < 3; ++i) {
         CHECK(n[i] - e[i] == doctest::Approx(-0.5 * dphi[i]));
         CHECK(s[i] - e[i] == doctest::Approx(0.5 * dphi[i]));
      }
   }

   TEST_CASE("d omega equals *_3 dV at random points")
   {
      std::mt19937_64 rng(11);
      for (int k = 0; k < 100; ++k) {
         const Point p = random_point(rng, 0.05, 50.0);
         CHECK(monopole_residual(p, regular_chart(p)) < 1e-10);
      }
   }

   TEST_CASE("flux of d omega through a sphere is -2 pi")
   {
      // Independent oracle: -(1/2) sin(theta) dtheta dphi integrates to -2 pi.
      for (double r : {0.3, 1.0, 25.0}) {
         CHECK(std::abs(monopole_flux(r) + 2.0 * pi) < 1e-10);
      }
   }

   TEST_CASE("TN metric on the equator at r = 1/2")
   {
      MetricSpec s;
      const auto m = metric_at(s, Point::polar(0.5, pi / 2, 0.0));
      CHECK(m.g(3, 3) == doctest::Approx(0.5));
      CHECK(m.g(0, 0) == doctest::Approx(2.0));
      CHECK(m.g(0, 3) == doctest::Approx(0.0));
   }

   TEST_CASE("TN approaches flat R3 x S1")
   {
      MetricSpec s;
      const auto m = metric_at(s, Point::polar(1e8, pi / 2, 0.4));
      CHECK((m.g - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-8);
   }

   TEST_CASE("ExactD far out has fiber coefficient e^{-2y}")
   {
      const double r = std::exp(3.0);
      const auto m = metric_at(variant(MetricVariant::ExactD), Point::polar(r, 1.0, 0.2),
                               Coordinates::LogPolar);
      CHECK(m.g(3, 3) == doctest::Approx(std::exp(-6.0)).epsilon(1e-13));
      CHECK(m.g(0, 0) == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(m.g(1, 1) == doctest::Approx(1.0).epsilon(1e-13));
   }

   TEST_CASE("every variant is TN inside r_in")
   {
      const Point p = Point::polar(1.2, 0.9, 2.0);
      const auto tn = metric_at(MetricSpec{}, p).g;
      for (auto v : {MetricVariant::Conformal, MetricVariant::Homotopy, MetricVariant::ExactD}) {
         CHECK((metric_at(variant(v, 0.4), p).g - tn).cwiseAbs().maxCoeff() == 0.0);
      }
   }

   TEST_CASE("homotopy at t = 1 matches the conformal metric beyond r_out")
   {
      for (double r : {4.5, 9.0, 60.0}) {
         const Point p = Point::polar(r, 0.7, 1.1);
         const Mat4 a = metric_at(variant(MetricVariant::Homotopy, 1.0), p).g;
         const Mat4 b = metric_at(variant(MetricVariant::Conformal), p).g;
         CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
      }
   }

   TEST_CASE("conformal metric beyond r_out is g_TN / (V r^2)")
   {
      for (double r : {4.5, 12.0}) {
         const Point p = Point::polar(r, 2.0, -0.3);
         const double V = 1.0 + 0.5 / r;
         const Mat4 tn = metric_at(MetricSpec{}, p).g / (V * r * r);
         CHECK((metric_at(variant(MetricVariant::Conformal), p).g - tn).cwiseAbs().maxCoeff() < 1e-12);
      }
   }

   TEST_CASE("blend profiles are monotone switches with matched ends")
   {
      for (auto kind : {BlendKind::Quintic, BlendKind::Septic}) {
         const BlendProfile b{kind, 2.0, 4.0};
         CHECK(b.weight(2.0) == doctest::Approx(0.0));
         CHECK(b.weight(4.0) == doctest::Approx(1.0));
         double prev = 0.0;
         for (int k = 1; k <= 100; ++k) {
            const double w = b.weight(2.0 + 2.0 * k / 100.0);
            CHECK(w >= prev - 1e-15);
            prev = w;
         }
         // First derivative vanishes at both ends.
         const double h = 1e-4;
         CHECK(std::abs(b.weight(2.0 + h) - b.weight(2.0)) / h < 1e-6);
         CHECK(std::abs(b.weight(4.0) - b.weight(4.0 - h)) / h < 1e-6);
      }
   }

   TEST_CASE("validation rejects bad specs")
   {
      MetricSpec s;
      s.l = 0.0;
      CHECK_THROWS_AS(validate(s), ValidationError);
      s = MetricSpec{};
      s.t = 1.5;
      CHECK_THROWS_AS(validate(s), ValidationError);
      s = MetricSpec{};
      s.blend.r_out = 1.0;
      CHECK_THROWS_AS(validate(s), ValidationError);
   }

   TEST_CASE("frame is orthonormal and positive-definiteness is enforced")
   {
      std::mt19937_64 rng(3);
      for (int k = 0; k < 20; ++k) {
         const Point p = random_point(rng, 0.1, 30.0);
         for (auto v : {MetricVariant::TN, MetricVariant::ExactD, MetricVariant::Conformal}) {
            MetricSpec s = variant(v);
            s.chart = regular_chart(p);
            const auto m = metric_at(s, p);
            const Mat4 e = m.frame.transpose() * m.g * m.frame - Mat4::Identity();
            CHECK(e.cwiseAbs().maxCoeff() < 1e-12);
            CHECK(m.g.determinant() > 0.0);
         }
      }
      Mat4 bad = Mat4::Identity();
      bad(2, 2) = -1.0;
      CHECK_THROWS_AS(make_sample(bad), ConsistencyError);
   }

   TEST_CASE("hodge star on the flat metric")
   {
      const auto flat = make_sample(Mat4::Identity());
      Mat4 f = Mat4::Zero();
      f(0, 1) = 1.0;
      f(1, 0) = -1.0;
      const Mat4 s = hodge_star(flat, f);
      CHECK(s(2, 3) == doctest::Approx(1.0));
      CHECK(s(3, 2) == doctest::Approx(-1.0));
      CHECK(std::abs(s(0, 1)) < 1e-15);
      CHECK(two_form_norm(flat, f) == doctest::Approx(1.0));
   }

   TEST_CASE("hodge star is an involution on 2-forms")
   {
      std::mt19937_64 rng(5);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      for (int k = 0; k < 30; ++k) {
         const Point p = random_point(rng, 0.2, 20.0);
         MetricSpec s;
         s.chart = regular_chart(p);
         const auto m = metric_at(s, p);
         Mat4 f = Mat4::Zero();
         for (int a = 0; a < 4; ++a) {
            for (int b = a + 1; b < 4; ++b) {
               f(a, b) = u(rng);
               f(b, a) = -f(a, b);
            }
         }
         CHECK((hodge_star(m, hodge_star(m, f)) - f).cwiseAbs().maxCoeff() < 1e-12);
         // |*F| = |F| in Riemannian signature.
         CHECK(two_form_norm(m, hodge_star(m, f)) == doctest::Approx(two_form_norm(m, f)));
      }
   }

   TEST_CASE("TN is Ricci flat")
   {
      std::mt19937_64 rng(9);
      for (int k = 0; k < 50; ++k) {
         const Point p = random_point(rng, 0.3, 10.0);
         MetricSpec s;
         s.chart = regular_chart(p);
         const double h = 1e-4 * p.r();
         const auto c = curvature_at(s, p, h);
         CHECK(c.ricci.cwiseAbs().maxCoeff() < 10.0 * h * h * c.riemann_norm);
         CHECK(c.bianchi_residual < 1e-12 * std::max(1.0, c.riemann_norm));
      }
   }

   TEST_CASE("TN curvature decays towards flat space")
   {
      MetricSpec s;
      const auto c = curvature_at(s, Point::polar(1e6, 1.0, 1.0), 1e2);
      CHECK(c.riemann_norm < 1e-6);
   }

   TEST_CASE("dual and central-difference curvature agree")
   {
      MetricSpec s;
      const Point p = Point::polar(1.3, 0.8, 0.5);
      s.chart = regular_chart(p);
      const double h = 1e-3 * p.r();
      const auto a = curvature_at(s, p, h, Differentiation::Dual);
      const auto b = curvature_at(s, p, h, Differentiation::CentralDifference);
      double d = 0.0;
      for (int i = 0; i < 256; ++i) d = std::max(d, std::abs(a.riemann[i] - b.riemann[i]));
      CHECK(d < 1e-5 * a.riemann_norm);
   }

   TEST_CASE("curvature rejects steps reaching the nut")
   {
      MetricSpec s;
      const Point p = Point::polar(0.1, 1.0, 1.0);
      CHECK_THROWS_AS(curvature_at(s, p, 0.0), DomainError);
      CHECK_THROWS_AS(curvature_at(s, p, 0.06), DomainError);
   }

   TEST_CASE("ExactD approaches a cusp times the round sphere")
   {
      // Oracle: H^2 (K = -1) x S^2 (K = +1) has |Riem|^2 = 8, Ricci
      // diag(-1,-1,1,1) and vanishing Pontryagin density. Fiber corrections
      // fall off like e^{-2y} = r^{-2}.
      MetricSpec s = variant(MetricVariant::ExactD);
      double prev = 1.0;
      for (double r : {10.0, 100.0, 1000.0}) {
         const Point p = Point::polar(r, 1.1, 0.3);
         s.chart = regular_chart(p);
         const auto c = curvature_at(s, p, 1e-4 * r);
         const double dev = std::abs(c.riemann_norm * c.riemann_norm - 8.0);
         CHECK(dev < 2.0 / (r * r));
         CHECK(dev < prev);
         prev = dev;
         CHECK(c.ricci.norm() == doctest::Approx(2.0).epsilon(1e-3));
         CHECK(std::abs(c.pontryagin) < 1.0 / (r * r));
      }
   }

   TEST_CASE("pair indices")
   {
      CHECK(pair_index(0, 1) == 0);
      CHECK(pair_index(1, 3) == 4);
      CHECK(pair_index(2, 3) == 5);
   }
}
