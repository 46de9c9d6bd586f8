#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "tnindex/config.hpp"
#include "tnindex/errors.hpp"
#include "tnindex/numerics.hpp"

namespace tnindex::cli {

namespace {

namespace fs = std::filesystem;

// CSV dialect: ',' separator, '.' decimal, LF endings, header row always.
class CsvWriter
{
public:
   explicit CsvWriter(std::vector<std::string> header) : columns_(header.size())
   {
      row(header);
   }

   void row(const std::vector<std::string>& cells)
   {
      if (cells.size() != columns_) throw ConsistencyError("csv: wrong number of cells");
      for (std::size_t i = 0; i < cells.size(); ++i) {
         if (i > 0) body_ += ',';
         body_ += cells[i];
      }
      body_ += '\n';
   }

   const std::string& str() const { return body_; }

private:
   std::size_t columns_;
   std::string body_;
};

std::string num(double x)
{
   return fmt::format("{}", x);
}

std::string num(long long x)
{
   return fmt::format("{}", x);
}

std::string write_file(const RunConfig& cfg, const std::string& name, const std::string& body)
{
   const fs::path dir(cfg.out_dir);
   std::error_code ec;
   fs::create_directories(dir, ec);
   const fs::path path = dir / name;
   std::ofstream out(path, std::ios::binary);
   if (!out) throw Error("io", "cannot write '" + path.string() + "'");
   out << body;
   if (!out) throw Error("io", "failed writing '" + path.string() + "'");
   return path.string();
}

charclasses::QuadratureSpec quad_for(const RunConfig& cfg, const geometry::MetricSpec& m)
{
   charclasses::QuadratureSpec q = cfg.quad ? *cfg.quad : charclasses::default_quadrature(m);
   if (cfg.threads > 0) q.threads = cfg.threads;
   return q;
}

std::vector<geometry::MetricSpec> metrics_of(const RunConfig& cfg)
{
   return cfg.metrics.empty() ? default_metrics() : cfg.metrics;
}

std::vector<eta::Route> routes_of(const RunConfig& cfg)
{
   return cfg.routes.empty() ? parse_routes("all") : cfg.routes;
}

double tol_of(const RunConfig& cfg)
{
   return cfg.tol ? *cfg.tol : default_tolerance(cfg.mode);
}

void fail(RunResult& r, const std::string& what)
{
   r.passed = false;
   r.failures.push_back(what);
}

RunResult run_index(const RunConfig& cfg)
{
   RunResult res;
   const auto& data = *cfg.instanton;
   const auto metric = metrics_of(cfg).front();
   const auto quad = quad_for(cfg, metric);

   index::AssembleOptions opts;
   opts.grav = cfg.grav;
   opts.metric = metric;
   opts.series = cfg.series;
   opts.lambda_tol = cfg.lambda_tol;

   gauge::boundary_data(data, cfg.lambda_tol);
   const auto bulk = gauge::bulk_action(data, quad);
   const double m = data.rank();
   double grav = m / 12.0, grav_error = 0.0;
   if (cfg.grav == index::GravMode::Numeric) {
      const auto p = charclasses::pontryagin_integral(metric, quad);
      grav = m * p.value;
      grav_error = m * (p.error_estimate + p.tail_bound);
   }

   const auto routes = routes_of(cfg);
   std::vector<index::IndexReport> reports;
   for (const auto route : routes) {
      opts.route = route;
      const auto eta = eta::eta_integral(data, route, cfg.series, cfg.lambda_tol);
      auto r = index::assemble_from_parts(data, bulk.value, bulk.error_estimate, grav, grav_error,
                                          eta, opts);
      r.quadrature = quad;
      const std::string name = std::string("index_report_") + eta::to_string(route) + ".json";
      res.files.push_back(write_file(cfg, name, index::to_json(r)));
      reports.push_back(r);
   }
   const double tol = tol_of(cfg);
   for (std::size_t i = 1; i < reports.size(); ++i) {
      const double d = std::abs(reports[i].index_value - reports[0].index_value);
      if (d > tol) {
         fail(res, fmt::format("index via {} differs from {} by {} > {}",
                               eta::to_string(reports[i].route), eta::to_string(reports[0].route),
                               d, tol));
      }
   }
   const auto& r = reports.back();
   res.summary = fmt::format("index {} (nearest {}, defect {}, integrality {})", r.index_value,
                             r.nearest_integer, r.integrality_defect,
                             r.integrality_pass ? "pass" : "fail");
   return res;
}

RunResult run_eta(const RunConfig& cfg)
{
   RunResult res;
   const auto& data = *cfg.instanton;
   gauge::validate(data, cfg.lambda_tol);
   const double tol = tol_of(cfg);
   CsvWriter csv({"lambda", "route", "a0", "a2coeff", "integrated", "error"});
   double worst = 0.0;
   for (const auto& ch : data.channels) {
      const auto ref = eta::eta_bernoulli(ch.lambda);
      for (const auto route : routes_of(cfg)) {
         const auto v = eta::eta_route(ch.lambda, route, cfg.series);
         const double integrated = -v.eta.a2 - v.eta.a0 * ch.chern;
         csv.row({num(ch.lambda), eta::to_string(route), num(v.eta.a0), num(v.eta.a2),
                  num(integrated), num(v.error_estimate)});
         const double d = std::max(std::abs(v.eta.a0 - ref.eta.a0), std::abs(v.eta.a2 - ref.eta.a2));
         worst = std::max(worst, d);
         if (d > tol) {
            fail(res, fmt::format("route {} at lambda {} differs from the closed form by {} > {}",
                                  eta::to_string(route), ch.lambda, d, tol));
         }
      }
   }
   res.files.push_back(write_file(cfg, "eta_routes.csv", csv.str()));
   res.summary = fmt::format("eta routes: max deviation from closed form {}", worst);
   return res;
}

RunResult run_geometry(const RunConfig& cfg)
{
   using namespace geometry;
   RunResult res;
   const auto& gs = cfg.geometry;
   std::mt19937_64 rng(gs.seed);
   std::uniform_real_distribution<double> u01(0.0, 1.0);
   CsvWriter csv({"check", "r", "theta", "phi", "residual", "bound", "pass"});
   auto record = [&](const std::string& check, double r, double th, double ph, double residual,
                     double bound) {
      const bool ok = residual <= bound;
      csv.row({check, num(r), num(th), num(ph), num(residual), num(bound), ok ? "1" : "0"});
      if (!ok) {
         fail(res, fmt::format("{} at r = {}: residual {} > bound {}", check, r, residual, bound));
      }
   };

   for (int k = 0; k < gs.n_points; ++k) {
      const double r = gs.r_lo + (gs.r_hi - gs.r_lo) * u01(rng);
      const double th = std::acos(1.0 - 2.0 * u01(rng));
      const double ph = 2.0 * std::numbers::pi * u01(rng);
      const double tau = 2.0 * std::numbers::pi * u01(rng);
      const Point p = Point::polar(r, th, ph, tau);
      MetricSpec tn;
      tn.chart = regular_chart(p);

      // Ricci flatness; bound 10 h^2 |Riem| at the fallback stencil step.
      const double h = 1e-4 * r;
      const auto c = curvature_at(tn, p, h);
      record("ricci", r, th, ph, c.ricci.cwiseAbs().maxCoeff(), 10.0 * h * h * c.riemann_norm);

      // Involution of the Hodge star on a random 2-form.
      const auto s = metric_at(tn, p);
      Mat4 F = Mat4::Zero();
      for (int a = 0; a < 4; ++a) {
         for (int b = a + 1; b < 4; ++b) {
            F(a, b) = 2.0 * u01(rng) - 1.0;
            F(b, a) = -F(a, b);
         }
      }
      const Mat4 ss = hodge_star(s, hodge_star(s, F));
      record("hodge_involution", r, th, ph, (ss - F).cwiseAbs().maxCoeff(), 1e-12);

      const Mat4 orth = s.frame.transpose() * s.g * s.frame - Mat4::Identity();
      record("frame_orthonormality", r, th, ph, orth.cwiseAbs().maxCoeff(), 1e-12);

      record("domega_minus_star_dV", r, th, ph, monopole_residual(p, tn.chart), 1e-10);
   }
   const double flux = monopole_flux(1.0);
   record("omega_flux", 1.0, 0.0, 0.0, std::abs(flux + 2.0 * std::numbers::pi), 1e-6);

   res.files.push_back(write_file(cfg, "geometry_check.csv", csv.str()));
   res.summary = fmt::format("geometry-check: {} failures", res.failures.size());
   return res;
}

std::string metric_label(std::size_t k, const geometry::MetricSpec& m)
{
   return fmt::format("{}_{}_{}", k, geometry::to_string(m.variant), geometry::to_string(m.blend.kind));
}

RunResult run_pontryagin(const RunConfig& cfg, const std::vector<int>& sizes_override)
{
   RunResult res;
   const double tol = tol_of(cfg);
   const auto metrics = metrics_of(cfg);
   std::string summary;
   for (std::size_t k = 0; k < metrics.size(); ++k) {
      const auto q = quad_for(cfg, metrics[k]);
      std::vector<int> sizes = sizes_override;
      if (sizes.empty()) sizes = {q.n_r / 4, q.n_r / 2, q.n_r};
      sizes.erase(std::remove_if(sizes.begin(), sizes.end(), [](int n) { return n < 16; }),
                  sizes.end());
      if (sizes.empty()) throw ValidationError("no grid size >= 16 to evaluate");
      const auto rows = charclasses::pontryagin_convergence(metrics[k], q, sizes);
      CsvWriter csv({"N_r", "value", "error_estimate", "tail_bound"});
      for (const auto& row : rows) {
         csv.row({num(static_cast<long long>(row.n_r)), num(row.value), num(row.error_estimate),
                  num(row.tail_bound)});
      }
      const std::string prefix = cfg.mode == Mode::Convergence ? "convergence_" : "pontryagin_";
      res.files.push_back(write_file(cfg, prefix + metric_label(k, metrics[k]) + ".csv", csv.str()));
      const double dev = std::abs(rows.back().value - 1.0 / 12.0);
      if (!(dev <= tol)) {
         fail(res, fmt::format("metric {}: final value {} deviates from 1/12 by {} > {}",
                               metric_label(k, metrics[k]), rows.back().value, dev, tol));
      }
      summary += fmt::format("{}{} = {}", summary.empty() ? "" : "; ", metric_label(k, metrics[k]),
                             rows.back().value);
   }
   res.summary = "pontryagin: " + summary;
   return res;
}

RunResult run_convergence(const RunConfig& cfg)
{
   RunResult res = run_pontryagin(cfg, cfg.n_r_sweep);
   if (cfg.instanton) {
      CsvWriter csv({"N_r", "value", "error_estimate", "tail_bound"});
      for (int n : cfg.n_r_sweep) {
         auto q = quad_for(cfg, metrics_of(cfg).front());
         q.n_r = n;
         q.tolerance = std::numeric_limits<double>::infinity();
         const auto b = gauge::bulk_action(*cfg.instanton, q);
         csv.row({num(static_cast<long long>(n)), num(b.value), num(b.error_estimate), num(0.0)});
      }
      res.files.push_back(write_file(cfg, "convergence_bulk.csv", csv.str()));
   }
   return res;
}

}  // namespace

RunResult run(const RunConfig& cfg)
{
   validate(cfg);
   switch (cfg.mode) {
      case Mode::Index: return run_index(cfg);
      case Mode::Eta: return run_eta(cfg);
      case Mode::GeometryCheck: return run_geometry(cfg);
      case Mode::Pontryagin: return run_pontryagin(cfg, {});
      default: return run_convergence(cfg);
   }
}

}  // namespace tnindex::cli
