#include "tnindex/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tnindex/errors.hpp"
#include "tnindex/jet.hpp"
#include "tnindex/numerics.hpp"

namespace tnindex::gauge {

using geometry::GaugeChart;

double distance_to_integer(double x)
{
   return std::abs(x - std::nearbyint(x));
}

double fractional_part(double x)
{
   return x - std::floor(x);
}

void validate(const InstantonData& data, double lambda_tol)
{
   if (data.channels.empty()) throw ValidationError("instanton data: no channels");
   for (std::size_t j = 0; j < data.channels.size(); ++j) {
      const auto& ch = data.channels[j];
      if (!std::isfinite(ch.lambda) || !std::isfinite(ch.mcharge)) {
         throw ValidationError("instanton data: non-finite lambda or m in channel "
                               + std::to_string(j));
      }
      if (distance_to_integer(ch.lambda) < lambda_tol) {
         std::ostringstream os;
         os << "channel " << j << ": lambda = " << ch.lambda << " lies within " << lambda_tol
            << " of an integer";
         throw GenericityError(os.str(), static_cast<int>(j));
      }
      for (std::size_t i = 0; i < j; ++i) {
         if (data.channels[i].lambda == ch.lambda) {
            throw ValidationError("instanton data: channels " + std::to_string(i) + " and "
                                  + std::to_string(j) + " share the same lambda");
         }
      }
   }
}

U1Form model_connection_at(const InstantonChannel& ch, const Point& p, GaugeChart chart)
{
   if (!(p.r() > 0.0)) throw DomainError("model connection: r must be > 0");
   U1Form out;
   const auto a = detail::connection_components(ch, p.x1, p.x2, p.x3, chart);
   std::copy(a.begin(), a.end(), out.coeff.begin());
   return out;
}

const char* to_string(Duality d)
{
   switch (d) {
      case Duality::SelfDual: return "self-dual";
      case Duality::AntiSelfDual: return "anti-self-dual";
      default: return "neither";
   }
}

double wedge_density(const Mat4& f)
{
   return 2.0 * (f(0, 1) * f(2, 3) - f(0, 2) * f(1, 3) + f(0, 3) * f(1, 2));
}

FieldStrengthSample field_strength_at(const InstantonChannel& ch, const Point& p,
                                      GaugeChart chart)
{
   if (!(p.r() > 0.0)) throw DomainError("field strength: r must be > 0");
   using J = Jet<4>;
   const auto fj = detail::field_components(ch, J::variable(p.x1, 0), J::variable(p.x2, 1),
                                            J::variable(p.x3, 2), chart);
   FieldStrengthSample out;
   for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) out.f(i, j) = fj[i][j].value;
   }
   double closure = 0.0;
   for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) {
         for (int c = b + 1; c < 4; ++c) {
            const double v = fj[b][c].grad[a] + fj[c][a].grad[b] + fj[a][b].grad[c];
            closure = std::max(closure, std::abs(v));
         }
      }
   }
   out.closure_residual = closure;

   geometry::MetricSpec tn;
   tn.chart = chart;
   const auto sample = geometry::metric_at(tn, p);
   const Mat4 star = geometry::hodge_star(sample, out.f);
   out.norm = geometry::two_form_norm(sample, out.f);
   out.asd_defect = geometry::two_form_norm(sample, out.f + star);
   out.sd_defect = geometry::two_form_norm(sample, out.f - star);
   return out;
}

Duality classify(const FieldStrengthSample& s, double rel_tol)
{
   if (s.norm == 0.0) return Duality::Neither;
   if (s.asd_defect <= rel_tol * s.norm) return Duality::AntiSelfDual;
   if (s.sd_defect <= rel_tol * s.norm) return Duality::SelfDual;
   return Duality::Neither;
}

BulkResult bulk_action(const InstantonData& data, const charclasses::QuadratureSpec& quad)
{
   if (data.channels.empty()) throw ValidationError("instanton data: no channels");
   charclasses::QuadratureSpec q = quad;
   q.r_max = std::numeric_limits<double>::infinity();
   charclasses::validate(q);
   // The density vanishes linearly at the nut, so the range starts there.
   q.r_min = std::numeric_limits<double>::min();
   const std::vector<double> breaks = {1.0, 4.0};

   const auto dirs = charclasses::angular_directions(q.n_ang);
   // Level set {r} has coordinate measure 8 pi^2 r^2, cancelling 1/(8 pi^2).
   auto rho = [&](double r) {
      std::vector<double> vals;
      vals.reserve(dirs.size());
      for (const auto& [th, ph] : dirs) {
         const Point p = Point::polar(r, th, ph);
         const GaugeChart chart = geometry::regular_chart(p);
         double w = 0.0;
         for (const auto& ch : data.channels) {
            const auto f = detail::field_components(ch, p.x1, p.x2, p.x3, chart);
            Mat4 m;
            for (int i = 0; i < 4; ++i) {
               for (int j = 0; j < 4; ++j) m(i, j) = f[i][j];
            }
            w += wedge_density(m);
         }
         vals.push_back(w * r * r);
      }
      charclasses::DensitySample s;
      s.value = pairwise_sum(vals) / static_cast<double>(vals.size());
      s.isotropy = charclasses::isotropy_residual(vals);
      return s;
   };

   BulkResult out;
   out.integral = charclasses::integrate_radial(rho, q, breaks);
   out.value = out.integral.value;
   out.error_estimate = out.integral.error_estimate;
   return out;
}

BoundaryData boundary_data(const InstantonData& data, double lambda_tol)
{
   validate(data, lambda_tol);
   BoundaryData out;
   double dmin = std::numeric_limits<double>::infinity();
   for (const auto& ch : data.channels) {
      out.lambdas_mod1.push_back(fractional_part(ch.lambda));
      out.cherns.push_back(ch.chern);
      dmin = std::min(dmin, distance_to_integer(ch.lambda));
   }
   out.delta = 0.5 * dmin;
   return out;
}

}  // namespace tnindex::gauge
