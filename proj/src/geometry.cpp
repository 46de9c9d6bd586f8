#include "tnindex/geometry.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "tnindex/numerics.hpp"

namespace tnindex::geometry {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_angle(double t)
{
   double w = std::fmod(t, two_pi);
   if (w < 0.0) w += two_pi;
   if (w >= two_pi) w = 0.0;
   return w;
}

// Levi-Civita symbol on four indices.
int levi_civita(int a, int b, int c, int d)
{
   const int idx[4] = {a, b, c, d};
   for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
         if (idx[i] == idx[j]) return 0;
      }
   }
   int sign = 1;
   int p[4] = {a, b, c, d};
   for (int i = 0; i < 4; ++i) {
      while (p[i] != i) {
         std::swap(p[i], p[p[i]]);
         sign = -sign;
      }
   }
   return sign;
}

}  // namespace

Point::Point(double a, double b, double c, double t) : x1(a), x2(b), x3(c), tau(wrap_angle(t)) {}

Point Point::polar(double r, double theta, double phi, double t)
{
   return Point(r * std::sin(theta) * std::cos(phi), r * std::sin(theta) * std::sin(phi),
                r * std::cos(theta), t);
}

GaugeChart regular_chart(const Point& p)
{
   return p.x3 >= 0.0 ? GaugeChart::North : GaugeChart::South;
}

void validate(const MetricSpec& spec)
{
   if (!(spec.l > 0.0)) throw ValidationError("metric: mass parameter l must be > 0");
   if (!(spec.t >= 0.0 && spec.t <= 1.0)) throw ValidationError("metric: t must lie in [0, 1]");
   if (!(spec.blend.r_in > 0.0 && spec.blend.r_out > spec.blend.r_in)) {
      throw ValidationError("metric: blend radii must satisfy r_out > r_in > 0");
   }
}

const char* to_string(MetricVariant v)
{
   switch (v) {
      case MetricVariant::TN: return "TN";
      case MetricVariant::Conformal: return "Conformal";
      case MetricVariant::Homotopy: return "Homotopy";
      case MetricVariant::ExactD: return "ExactD";
      case MetricVariant::Flat: return "Flat";
   }
   return "?";
}

const char* to_string(BlendKind k)
{
   return k == BlendKind::Quintic ? "quintic" : "septic";
}

PotentialSample potential_and_omega(const Point& p, GaugeChart chart, double l)
{
   const double r = p.r();
   if (!(r > 0.0)) throw DomainError("potential_and_omega: r must be > 0");
   PotentialSample s;
   s.V = l + 0.5 / r;
   s.omega = detail::omega_components(p.x1, p.x2, p.x3, chart);
   return s;
}

MetricSample make_sample(const Mat4& g, Coordinates coords)
{
   Eigen::LLT<Mat4> llt(g);
   if (llt.info() != Eigen::Success) {
      throw ConsistencyError("metric is not positive definite");
   }
   MetricSample s;
   s.g = g;
   s.coordinates = coords;
   // L^{-T} has positive determinant, so the frame is oriented like the chart.
   const Mat4 L = llt.matrixL();
   s.frame = L.transpose().triangularView<Eigen::Upper>().solve(Mat4::Identity());
   return s;
}

MetricSample metric_at(const MetricSpec& spec, const Point& p, Coordinates coords)
{
   const double r = p.r();
   if (!(r > 0.0)) throw DomainError("metric_at: r must be > 0");
   const auto c = detail::metric_components(spec, p.x1, p.x2, p.x3);
   Mat4 g;
   for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) g(i, j) = c[i][j];
   }
   if (coords == Coordinates::LogPolar) {
      // q = (y, theta, phi, tau), x = e^y (sin th cos ph, sin th sin ph, cos th)
      const double th = p.theta(), ph = p.phi();
      const double st = std::sin(th), ct = std::cos(th), sp = std::sin(ph), cp = std::cos(ph);
      Mat4 J = Mat4::Zero();
      J(0, 0) = r * st * cp;  J(0, 1) = r * ct * cp;  J(0, 2) = -r * st * sp;
      J(1, 0) = r * st * sp;  J(1, 1) = r * ct * sp;  J(1, 2) = r * st * cp;
      J(2, 0) = r * ct;       J(2, 1) = -r * st;      J(2, 2) = 0.0;
      J(3, 3) = 1.0;
      g = J.transpose() * g * J;
      g = 0.5 * (g + g.transpose());
   }
   return make_sample(g, coords);
}

Mat4 hodge_star(const MetricSample& sample, const Mat4& F)
{
   const Mat4 ginv = sample.g.inverse();
   const double sqrt_det = std::sqrt(sample.g.determinant());
   const Mat4 Fup = ginv * F * ginv.transpose();  // F^{ab}
   Mat4 out = Mat4::Zero();
   for (int m = 0; m < 4; ++m) {
      for (int n = 0; n < 4; ++n) {
         if (m == n) continue;
         double acc = 0.0;
         for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
               const int e = levi_civita(m, n, a, b);
               if (e != 0) acc += e * Fup(a, b);
            }
         }
         out(m, n) = 0.5 * sqrt_det * acc;
      }
   }
   return out;
}

double two_form_norm(const MetricSample& sample, const Mat4& F)
{
   const Mat4 ginv = sample.g.inverse();
   const Mat4 Fup = ginv * F * ginv.transpose();
   return std::sqrt(std::max(0.0, 0.5 * (F.cwiseProduct(Fup)).sum()));
}

int pair_index(int a, int b)
{
   static constexpr int table[4][4] = {
      {-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
   return table[a][b];
}

double monopole_residual(const Point& p, GaugeChart chart)
{
   const double r = p.r();
   if (!(r > 0.0)) throw DomainError("monopole_residual: r must be > 0");
   using J = Jet<4>;
   const auto w = detail::omega_components(J::variable(p.x1, 0), J::variable(p.x2, 1),
                                           J::variable(p.x3, 2), chart);
   const double x[3] = {p.x1, p.x2, p.x3};
   const double dV = -0.5 / (r * r);
   double res = 0.0;
   for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3, k = (i + 2) % 3;
      const double d_omega = w[k].grad[j] - w[j].grad[k];
      res = std::max(res, std::abs(d_omega - dV * x[i] / r));
   }
   return res;
}

double monopole_flux(double r, GaugeChart chart, int n)
{
   if (!(r > 0.0)) throw DomainError("monopole_flux: r must be > 0");
   if (n < 2) throw ValidationError("monopole_flux: n must be >= 2");
   const Rule rule = gauss_legendre(n);
   using J = Jet<4>;
   std::vector<double> terms;
   terms.reserve(static_cast<std::size_t>(n) * n);
   for (int a = 0; a < n; ++a) {
      const double th = 0.5 * std::numbers::pi * (rule.nodes[a] + 1.0);
      const double wt = 0.5 * std::numbers::pi * rule.weights[a];
      for (int b = 0; b < n; ++b) {
         const double ph = std::numbers::pi * (rule.nodes[b] + 1.0);
         const double wp = std::numbers::pi * rule.weights[b];
         const Point p = Point::polar(r, th, ph);
         const auto w = detail::omega_components(J::variable(p.x1, 0), J::variable(p.x2, 1),
                                                 J::variable(p.x3, 2), chart);
         const double et[3] = {r * std::cos(th) * std::cos(ph), r * std::cos(th) * std::sin(ph),
                               -r * std::sin(th)};
         const double ep[3] = {-r * std::sin(th) * std::sin(ph), r * std::sin(th) * std::cos(ph),
                               0.0};
         double v = 0.0;
         for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) v += (w[j].grad[i] - w[i].grad[j]) * et[i] * ep[j];
         }
         terms.push_back(wt * wp * v);
      }
   }
   return pairwise_sum(terms);
}

}  // namespace tnindex::geometry
