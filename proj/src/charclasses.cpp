#include "tnindex/charclasses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tnindex/numerics.hpp"

namespace tnindex::charclasses {

using geometry::MetricSpec;
using geometry::Point;

namespace {

constexpr double pi = std::numbers::pi;

struct Panel
{
   double a, b;
   bool mapped = false;  // [a, b] is a range of s with r = r0 / s
};

// Appends `order` nodes of `rule` mapped onto the panel.
void append_panel(RadialDensity& out, const Rule& rule, const Panel& p, double r0)
{
   for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double half = 0.5 * (p.b - p.a);
      const double x = p.a + half * (rule.nodes[k] + 1.0);
      const double w = half * rule.weights[k];
      if (p.mapped) {
         // x is s in (0, 1]; r = r0 / s
         out.nodes.push_back(r0 / x);
         out.weights.push_back(w * r0 / (x * x));
      } else {
         out.nodes.push_back(x);
         out.weights.push_back(w);
      }
   }
}

}  // namespace

const char* to_string(Scheme s)
{
   return s == Scheme::GaussLegendreComposite ? "gauss-legendre-composite" : "tanh-sinh";
}

void validate(const QuadratureSpec& q)
{
   if (!(q.r_min > 0.0)) throw ValidationError("quadrature: r_min must be > 0");
   if (!(q.r_max > q.r_min)) throw ValidationError("quadrature: r_max must exceed r_min");
   if (q.n_r < 16) throw ValidationError("quadrature: n_r must be >= 16");
   if (q.n_ang < 1) throw ValidationError("quadrature: n_ang must be >= 1");
   if (!(q.tolerance > 0.0)) throw ValidationError("quadrature: tolerance must be > 0");
   if (q.threads < 0) throw ValidationError("quadrature: threads must be >= 0");
}

QuadratureSpec default_quadrature(const MetricSpec& spec)
{
   QuadratureSpec q;
   q.r_max = 20.0 * spec.blend.r_out;
   return q;
}

std::vector<double> blend_breakpoints(const MetricSpec& spec)
{
   return {spec.blend.r_in, spec.blend.r_out};
}

RadialDensity radial_grid(const QuadratureSpec& q, int n_r, std::span<const double> breakpoints)
{
   std::vector<double> bp;
   for (double b : breakpoints) {
      if (b > q.r_min && b < q.r_max) bp.push_back(b);
   }
   std::sort(bp.begin(), bp.end());
   bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

   std::vector<Panel> panels;
   double mapped_r0 = 0.0;
   if (bp.empty()) {
      const double len = q.r_max - q.r_min;
      if (std::isinf(len)) throw ValidationError("quadrature: infinite range needs a breakpoint");
      for (int k = 0; k < 8; ++k) {
         panels.push_back({q.r_min + len * k / 8.0, q.r_min + len * (k + 1) / 8.0});
      }
   } else {
      // Inner segment: quadratic grading towards r_min.
      const double inner = bp.front() - q.r_min;
      for (int k = 0; k < 3; ++k) {
         const double s0 = k / 3.0, s1 = (k + 1) / 3.0;
         panels.push_back({q.r_min + inner * s0 * s0, q.r_min + inner * s1 * s1});
      }
      for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
         const double mid = 0.5 * (bp[i] + bp[i + 1]);
         panels.push_back({bp[i], mid});
         panels.push_back({mid, bp[i + 1]});
      }
      const double outer = bp.back();
      if (std::isinf(q.r_max)) {
         mapped_r0 = outer;
         for (int k = 0; k < 3; ++k) {
            Panel p{k / 3.0, (k + 1) / 3.0};
            p.mapped = true;
            panels.push_back(p);
         }
      } else {
         const double ratio = q.r_max / outer;
         for (int k = 0; k < 3; ++k) {
            panels.push_back({outer * std::pow(ratio, k / 3.0), outer * std::pow(ratio, (k + 1) / 3.0)});
         }
         panels.back().b = q.r_max;
      }
   }

   const int order = std::max(1, n_r / static_cast<int>(panels.size()));
   const Rule rule = q.scheme == Scheme::GaussLegendreComposite ? gauss_legendre(order)
                                                                : tanh_sinh_rule(order);
   RadialDensity out;
   for (const Panel& p : panels) append_panel(out, rule, p, mapped_r0);
   out.values.assign(out.nodes.size(), 0.0);
   out.isotropy.assign(out.nodes.size(), 0.0);
   return out;
}

double integrate(const RadialDensity& rho)
{
   std::vector<double> terms(rho.nodes.size());
   for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = rho.weights[i] * rho.values[i];
   return pairwise_sum(terms);
}

RadialIntegral integrate_radial(const RadialDensity& fine, const RadialDensity* coarse,
                                const QuadratureSpec& q)
{
   RadialIntegral out;
   out.density = fine;
   out.value = integrate(fine);
   if (coarse != nullptr) {
      const double cv = integrate(*coarse);
      out.history.emplace_back(static_cast<int>(coarse->nodes.size()), cv);
      out.error_estimate = std::abs(out.value - cv);
   }
   out.history.emplace_back(static_cast<int>(fine.nodes.size()), out.value);

   for (const RadialDensity* d : {&fine, coarse}) {
      if (d == nullptr) continue;
      for (std::size_t i = 0; i < d->nodes.size(); ++i) {
         if (d->isotropy[i] > q.tolerance) {
            std::ostringstream os;
            os << "density not isotropic at r = " << d->nodes[i] << " (residual "
               << d->isotropy[i] << " > " << q.tolerance << ")";
            throw SymmetryError(os.str());
         }
      }
   }
   if (out.error_estimate > q.tolerance) {
      std::ostringstream os;
      os << "radial quadrature did not converge: error estimate " << out.error_estimate
         << " > tolerance " << q.tolerance << "; history:";
      for (const auto& [n, v] : out.history) os << " (" << n << ", " << v << ")";
      throw ConvergenceError(os.str());
   }
   return out;
}

namespace {

void sample_into(RadialDensity& d, const DensityFn& rho, int threads)
{
   parallel_for(d.nodes.size(), threads, [&](std::size_t i) {
      const DensitySample s = rho(d.nodes[i]);
      d.values[i] = s.value;
      d.isotropy[i] = s.isotropy;
   });
}

}  // namespace

RadialIntegral integrate_radial(const DensityFn& rho, const QuadratureSpec& q,
                                std::span<const double> breakpoints)
{
   validate(q);
   const int threads = resolve_threads(q.threads);
   RadialDensity fine = radial_grid(q, q.n_r, breakpoints);
   RadialDensity coarse = radial_grid(q, q.n_r / 2, breakpoints);
   sample_into(fine, rho, threads);
   sample_into(coarse, rho, threads);
   return integrate_radial(fine, &coarse, q);
}

std::vector<std::pair<double, double>> angular_directions(int n_ang)
{
   // Latitudes in |cos theta| <= 0.9 and golden-angle longitudes.
   const double golden = pi * (3.0 - std::sqrt(5.0));
   std::vector<std::pair<double, double>> dirs;
   dirs.reserve(n_ang);
   for (int k = 0; k < n_ang; ++k) {
      const double z = n_ang == 1 ? 0.3 : 0.9 * (1.0 - 2.0 * (k + 0.5) / n_ang);
      dirs.emplace_back(std::acos(z), std::fmod(0.4 + k * golden, 2.0 * pi));
   }
   return dirs;
}

double isotropy_residual(std::span<const double> samples)
{
   if (samples.empty()) return 0.0;
   const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
   double mean = 0.0;
   for (double s : samples) mean += s;
   mean /= static_cast<double>(samples.size());
   return (*hi - *lo) / std::max(std::abs(mean), 1e-12);
}

DensitySample pontryagin_sample(const MetricSpec& spec, double r, int n_ang)
{
   if (!(r > 0.0)) throw DomainError("pontryagin_density: r must be > 0");
   // Level set {r} has coordinate measure r^2 dOmega dtau, total 8 pi^2 r^2.
   const double shell = 8.0 * pi * pi * r * r / (192.0 * pi * pi);
   std::vector<double> vals;
   vals.reserve(n_ang);
   for (const auto& [th, ph] : angular_directions(n_ang)) {
      const Point p = Point::polar(r, th, ph);
      MetricSpec s = spec;
      s.chart = geometry::regular_chart(p);
      const auto c = geometry::curvature_at(s, p, 1e-4 * r);
      vals.push_back(c.pontryagin * c.volume_density * shell);
   }
   DensitySample out;
   out.value = pairwise_sum(vals) / static_cast<double>(vals.size());
   out.isotropy = isotropy_residual(vals);
   return out;
}

double pontryagin_density(const MetricSpec& spec, double r, const QuadratureSpec& quad)
{
   const DensitySample s = pontryagin_sample(spec, r, quad.n_ang);
   if (s.isotropy > quad.tolerance) {
      std::ostringstream os;
      os << "pontryagin density not isotropic at r = " << r << " (residual " << s.isotropy << ")";
      throw SymmetryError(os.str());
   }
   return s.value;
}

double cs_tail_bound(const MetricSpec& spec, double r_cut)
{
   const double r_out = spec.blend.r_out;
   if (!(r_cut > r_out)) throw DomainError("cs_tail_bound: r_cut must exceed r_out");

   // Fit sigma(y) = rho(e^y) e^y ~ A e^{-kappa y} on a window fixed by the
   // metric alone, so the bound is monotone in r_cut.
   constexpr int n_fit = 8;
   const double y0 = std::log(1.5 * r_out);
   std::vector<double> ys, sig;
   for (int k = 0; k < n_fit; ++k) {
      const double y = y0 + 3.0 * k / (n_fit - 1);
      const double r = std::exp(y);
      ys.push_back(y);
      sig.push_back(std::abs(pontryagin_sample(spec, r, 2).value * r));
   }
   if (std::all_of(sig.begin(), sig.end(), [](double s) { return s == 0.0; })) return 0.0;
   if (std::any_of(sig.begin(), sig.end(), [](double s) { return s == 0.0; })) {
      throw ConvergenceError("cs_tail_bound: tail samples vanish intermittently; no exponential fit");
   }
   double sy = 0.0, sl = 0.0, syy = 0.0, syl = 0.0;
   for (int k = 0; k < n_fit; ++k) {
      const double l = std::log(sig[k]);
      sy += ys[k];
      sl += l;
      syy += ys[k] * ys[k];
      syl += ys[k] * l;
   }
   const double slope = (n_fit * syl - sy * sl) / (n_fit * syy - sy * sy);
   const double kappa = -slope;
   if (!(kappa > 0.0)) {
      throw ConvergenceError("cs_tail_bound: Pontryagin density tail does not decay");
   }
   double amp = 0.0;
   for (int k = 0; k < n_fit; ++k) amp = std::max(amp, sig[k] * std::exp(kappa * ys[k]));
   return amp * std::exp(-kappa * std::log(r_cut)) / kappa;
}

PontryaginResult pontryagin_integral(const MetricSpec& spec, const QuadratureSpec& quad)
{
   geometry::validate(spec);
   const auto bp = blend_breakpoints(spec);
   const int n_ang = quad.n_ang;
   PontryaginResult out;
   out.integral = integrate_radial(
      [&](double r) { return pontryagin_sample(spec, r, n_ang); }, quad, bp);
   out.value = out.integral.value;
   out.error_estimate = out.integral.error_estimate;
   out.n_r = static_cast<int>(out.integral.density.nodes.size());
   if (std::isfinite(quad.r_max)) {
      out.tail_bound = quad.r_max > spec.blend.r_out ? cs_tail_bound(spec, quad.r_max) : 0.0;
      if (out.tail_bound > quad.tolerance) {
         std::ostringstream os;
         os << "truncation at r_max = " << quad.r_max << " not certified: tail bound "
            << out.tail_bound << " > tolerance " << quad.tolerance;
         throw ConvergenceError(os.str());
      }
   }
   return out;
}

std::vector<ConvergenceRow> pontryagin_convergence(const MetricSpec& spec,
                                                   const QuadratureSpec& quad,
                                                   std::span<const int> n_r_values)
{
   std::vector<ConvergenceRow> rows;
   for (int n : n_r_values) {
      QuadratureSpec q = quad;
      q.n_r = n;
      // Coarse grids are reported, not rejected.
      q.tolerance = std::numeric_limits<double>::infinity();
      const PontryaginResult r = pontryagin_integral(spec, q);
      rows.push_back({r.n_r, r.value, r.error_estimate, r.tail_bound});
   }
   return rows;
}

}  // namespace tnindex::charclasses
