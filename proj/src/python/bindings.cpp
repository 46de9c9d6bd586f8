#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tnindex/config.hpp"
#include "tnindex/errors.hpp"
#include "tnindex/index.hpp"
#include "tnindex/json_io.hpp"

namespace py = pybind11;
using namespace tnindex;

namespace {

using ChannelTuple = std::tuple<double, double, int>;

gauge::InstantonData make_data(const std::vector<ChannelTuple>& channels)
{
   gauge::InstantonData d;
   for (const auto& [l, m, c] : channels) d.channels.push_back({l, m, c});
   return d;
}

geometry::MetricSpec make_metric(const std::string& variant, double t, const std::string& blend,
                                 double r_in, double r_out)
{
   geometry::MetricSpec m;
   m.variant = json_io::parse_variant(variant);
   m.t = t;
   m.blend = {json_io::parse_blend(blend), r_in, r_out};
   geometry::validate(m);
   return m;
}

charclasses::QuadratureSpec make_quad(const geometry::MetricSpec& m, int n_r, int n_ang,
                                      std::optional<double> r_max, int threads)
{
   auto q = charclasses::default_quadrature(m);
   q.n_r = n_r;
   q.n_ang = n_ang;
   if (r_max) q.r_max = *r_max;
   q.threads = threads;
   return q;
}

py::dict form_dict(const FormScalar<double>& f)
{
   py::dict d;
   d["a0"] = f.a0;
   d["a2"] = f.a2;
   return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod)
{
   mod.doc() = "Index-theorem numerics on Taub-NUT space";

   static py::exception<Error> exc(mod, "TnIndexError", PyExc_RuntimeError);
   py::register_exception_translator([](std::exception_ptr p) {
      try {
         if (p) std::rethrow_exception(p);
      } catch (const Error& e) {
         PyErr_SetObject(exc.ptr(), py::make_tuple(e.kind(), e.what()).ptr());
      }
   });

   mod.def(
       "metric_at",
       [](std::array<double, 4> x, const std::string& variant, double t, const std::string& blend,
          double r_in, double r_out) {
          const auto m = make_metric(variant, t, blend, r_in, r_out);
          geometry::MetricSpec s = m;
          const geometry::Point p(x[0], x[1], x[2], x[3]);
          s.chart = geometry::regular_chart(p);
          return geometry::metric_at(s, p).g;
       },
       py::arg("x"), py::arg("variant") = "TN", py::arg("t") = 0.0, py::arg("blend") = "quintic",
       py::arg("r_in") = 2.0, py::arg("r_out") = 4.0,
       "Coordinate metric at (x1, x2, x3, tau) in the chart regular there.");

   mod.def(
       "curvature",
       [](std::array<double, 3> x, const std::string& variant, double t, const std::string& blend,
          double r_in, double r_out) {
          auto s = make_metric(variant, t, blend, r_in, r_out);
          const geometry::Point p(x[0], x[1], x[2]);
          s.chart = geometry::regular_chart(p);
          const auto c = geometry::curvature_at(s, p, 1e-4 * p.r());
          py::dict d;
          d["ricci"] = c.ricci;
          d["pontryagin"] = c.pontryagin;
          d["riemann_norm"] = c.riemann_norm;
          d["bianchi_residual"] = c.bianchi_residual;
          return d;
       },
       py::arg("x"), py::arg("variant") = "TN", py::arg("t") = 0.0, py::arg("blend") = "quintic",
       py::arg("r_in") = 2.0, py::arg("r_out") = 4.0);

   mod.def(
       "pontryagin_integral",
       [](const std::string& variant, const std::string& blend, double r_in, double r_out,
          int n_r, int n_ang, std::optional<double> r_max, int threads) {
          const auto m = make_metric(variant, 0.0, blend, r_in, r_out);
          const auto res = charclasses::pontryagin_integral(m, make_quad(m, n_r, n_ang, r_max, threads));
          py::dict d;
          d["value"] = res.value;
          d["error_estimate"] = res.error_estimate;
          d["tail_bound"] = res.tail_bound;
          d["n_r"] = res.n_r;
          return d;
       },
       py::arg("variant") = "ExactD", py::arg("blend") = "quintic", py::arg("r_in") = 2.0,
       py::arg("r_out") = 4.0, py::arg("n_r") = 256, py::arg("n_ang") = 8,
       py::arg("r_max") = py::none(), py::arg("threads") = 0,
       "(1/192 pi^2) int tr R ^ R with error estimate and tail bound.");

   mod.def(
       "field_strength",
       [](double lambda, double m, std::array<double, 3> x) {
          const geometry::Point p(x[0], x[1], x[2]);
          const auto s = gauge::field_strength_at({lambda, m, 0}, p, geometry::regular_chart(p));
          py::dict d;
          d["f"] = s.f;
          d["norm"] = s.norm;
          d["asd_defect"] = s.asd_defect;
          d["sd_defect"] = s.sd_defect;
          d["closure_residual"] = s.closure_residual;
          return d;
       },
       py::arg("lam"), py::arg("m"), py::arg("x"));

   mod.def(
       "bulk_action",
       [](const std::vector<ChannelTuple>& channels, int n_r, int n_ang) {
          charclasses::QuadratureSpec q;
          q.n_r = n_r;
          q.n_ang = n_ang;
          const auto b = gauge::bulk_action(make_data(channels), q);
          return std::make_pair(b.value, b.error_estimate);
       },
       py::arg("channels"), py::arg("n_r") = 256, py::arg("n_ang") = 8,
       "-(1/8 pi^2) int tr F ^ F for channels [(lambda, m, chern), ...].");

   mod.def(
       "boundary_data",
       [](const std::vector<ChannelTuple>& channels) {
          const auto b = gauge::boundary_data(make_data(channels));
          py::dict d;
          d["lambdas_mod1"] = b.lambdas_mod1;
          d["cherns"] = b.cherns;
          d["delta"] = b.delta;
          return d;
       },
       py::arg("channels"));

   mod.def(
       "vertical_spectrum", [](double lambda, int K) { return eta::vertical_spectrum(lambda, K); },
       py::arg("lam"), py::arg("K"));

   mod.def(
       "eta",
       [](double lambda, const std::string& route) {
          const auto v = eta::eta_route(lambda, eta::parse_route(route), eta::SeriesSpec{});
          py::dict d = form_dict(v.eta);
          d["error_estimate"] = v.error_estimate;
          return d;
       },
       py::arg("lam"), py::arg("route") = "bernoulli",
       "Eta form (a0, a2) of one channel; a2 multiplies vol/(2i).");

   mod.def(
       "eta_integral",
       [](const std::vector<ChannelTuple>& channels, const std::string& route) {
          const auto r = eta::eta_integral(make_data(channels), eta::parse_route(route),
                                           eta::SeriesSpec{});
          py::dict d;
          d["integrated"] = r.integrated;
          d["per_channel_integrated"] = r.per_channel_integrated;
          d["error_estimate"] = r.error_estimate;
          return d;
       },
       py::arg("channels"), py::arg("route") = "bernoulli");

   mod.def(
       "poisson_check",
       [](double a, double s) {
          const auto c = eta::poisson_check(a, s);
          return std::make_pair(c.lhs, c.rhs);
       },
       py::arg("a"), py::arg("s"));

   mod.def(
       "index_formula",
       [](const std::vector<ChannelTuple>& channels, double bulk) {
          return index::index_formula(make_data(channels), bulk);
       },
       py::arg("channels"), py::arg("bulk"));

   mod.def(
       "integrality_check",
       [](double value, double tol) {
          const auto r = index::integrality_check(value, tol);
          return std::make_tuple(r.nearest, r.defect, r.pass);
       },
       py::arg("value"), py::arg("tol"));

   mod.def(
       "assemble_json",
       [](const std::vector<ChannelTuple>& channels, const std::string& grav,
          const std::string& route, int n_r) {
          index::AssembleOptions opts;
          opts.grav = index::parse_grav(grav);
          opts.route = eta::parse_route(route);
          auto q = charclasses::default_quadrature(opts.metric);
          q.n_r = n_r;
          return index::to_json(index::assemble(make_data(channels), q, opts));
       },
       py::arg("channels"), py::arg("grav") = "numeric", py::arg("route") = "bernoulli",
       py::arg("n_r") = 256, "IndexReport as JSON text.");

   mod.def(
       "run_config",
       [](const std::string& config_json) {
          const auto cfg = cli::parse_config(config_json);
          const auto r = cli::run(cfg);
          py::dict d;
          d["passed"] = r.passed;
          d["failures"] = r.failures;
          d["files"] = r.files;
          d["summary"] = r.summary;
          return d;
       },
       py::arg("config_json"), "Runs a CLI configuration in-process.");
}
