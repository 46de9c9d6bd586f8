#include "tnindex/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "tnindex/errors.hpp"
#include "tnindex/json_io.hpp"

namespace tnindex::cli {

using json_io::json;

const char* to_string(Mode m)
{
   switch (m) {
      case Mode::Index: return "index";
      case Mode::Eta: return "eta";
      case Mode::GeometryCheck: return "geometry-check";
      case Mode::Pontryagin: return "pontryagin";
      default: return "convergence";
   }
}

Mode parse_mode(const std::string& s)
{
   for (auto m : {Mode::Index, Mode::Eta, Mode::GeometryCheck, Mode::Pontryagin,
                  Mode::Convergence}) {
      if (s == to_string(m)) return m;
   }
   throw ValidationError("unknown mode '" + s + "'");
}

double default_tolerance(Mode m)
{
   switch (m) {
      case Mode::Eta: return 1e-6;
      case Mode::Index: return 1e-6;
      default: return 1e-3;
   }
}

std::vector<geometry::MetricSpec> default_metrics()
{
   geometry::MetricSpec a;
   a.variant = geometry::MetricVariant::ExactD;
   geometry::MetricSpec b = a;
   b.blend = {geometry::BlendKind::Septic, 1.5, 5.0};
   return {a, b};
}

std::vector<eta::Route> parse_routes(const std::string& s)
{
   if (s == "all") return {eta::Route::ModeSum, eta::Route::Poisson, eta::Route::Bernoulli};
   // Comma-separated subsets are accepted too ("bernoulli,poisson").
   std::vector<eta::Route> out;
   std::size_t start = 0;
   while (true) {
      const std::size_t comma = s.find(',', start);
      const auto r = eta::parse_route(s.substr(start, comma - start));
      if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
      if (comma == std::string::npos) break;
      start = comma + 1;
   }
   return out;
}

RunConfig parse_config(const std::string& text)
{
   const json j = json_io::parse(text, "config");
   const std::string w = "config";
   json_io::require_keys(j, {"mode", "instanton", "metric", "quadrature", "series", "route",
                             "grav", "tol", "n_r_sweep", "geometry", "out", "threads"},
                         w);
   RunConfig cfg;
   if (j.contains("mode")) cfg.mode = parse_mode(json_io::get_string(j, "mode", "", w));
   if (j.contains("instanton")) {
      cfg.instanton = json_io::instanton_from_json(j.at("instanton"), &cfg.lambda_tol);
   }
   if (j.contains("metric")) {
      const json& m = j.at("metric");
      if (m.is_array()) {
         for (const json& x : m) cfg.metrics.push_back(json_io::metric_from_json(x));
         if (cfg.metrics.empty()) throw ValidationError("config.metric: empty list");
      } else {
         cfg.metrics.push_back(json_io::metric_from_json(m));
      }
   }
   if (j.contains("quadrature")) cfg.quad = json_io::quadrature_from_json(j.at("quadrature"));
   if (j.contains("series")) cfg.series = json_io::series_from_json(j.at("series"));
   if (j.contains("route")) cfg.routes = parse_routes(json_io::get_string(j, "route", "", w));
   if (j.contains("grav")) cfg.grav = index::parse_grav(json_io::get_string(j, "grav", "", w));
   if (j.contains("tol")) cfg.tol = json_io::get_number(j, "tol", 0.0, w);
   if (j.contains("n_r_sweep")) {
      const json& s = j.at("n_r_sweep");
      if (!s.is_array()) throw ParseError("config.n_r_sweep: expected an array");
      cfg.n_r_sweep.clear();
      for (const json& x : s) {
         if (!x.is_number_integer()) throw ParseError("config.n_r_sweep: expected integers");
         cfg.n_r_sweep.push_back(x.get<int>());
      }
   }
   if (j.contains("geometry")) {
      const json& g = j.at("geometry");
      const std::string wg = "config.geometry";
      json_io::require_keys(g, {"n_points", "seed", "r_lo", "r_hi"}, wg);
      cfg.geometry.n_points = json_io::get_int(g, "n_points", cfg.geometry.n_points, wg);
      if (g.contains("seed")) {
         if (!g.at("seed").is_number_unsigned()) throw ParseError(wg + ".seed: expected an unsigned integer");
         cfg.geometry.seed = g.at("seed").get<std::uint64_t>();
      }
      cfg.geometry.r_lo = json_io::get_number(g, "r_lo", cfg.geometry.r_lo, wg);
      cfg.geometry.r_hi = json_io::get_number(g, "r_hi", cfg.geometry.r_hi, wg);
   }
   cfg.out_dir = json_io::get_string(j, "out", cfg.out_dir, w);
   cfg.threads = json_io::get_int(j, "threads", cfg.threads, w);
   validate(cfg);
   return cfg;
}

RunConfig load_config(const std::string& path)
{
   std::ifstream in(path);
   if (!in) throw ParseError("cannot read config file '" + path + "'");
   std::ostringstream ss;
   ss << in.rdbuf();
   return parse_config(ss.str());
}

void validate(const RunConfig& cfg)
{
   if ((cfg.mode == Mode::Index || cfg.mode == Mode::Eta) && !cfg.instanton) {
      throw ValidationError(std::string("mode ") + to_string(cfg.mode)
                            + " needs an 'instanton' section");
   }
   if (cfg.instanton) gauge::validate(*cfg.instanton, cfg.lambda_tol);
   for (const auto& m : cfg.metrics) geometry::validate(m);
   if (cfg.quad) charclasses::validate(*cfg.quad);
   eta::validate(cfg.series);
   if (cfg.tol && !(*cfg.tol > 0.0)) throw ValidationError("tol must be > 0");
   if (cfg.threads < 0) throw ValidationError("threads must be >= 0");
   if (cfg.n_r_sweep.empty()) throw ValidationError("n_r_sweep must not be empty");
   for (int n : cfg.n_r_sweep) {
      if (n < 16) throw ValidationError("n_r_sweep entries must be >= 16");
   }
   const auto& g = cfg.geometry;
   if (g.n_points < 1) throw ValidationError("geometry.n_points must be >= 1");
   if (!(g.r_lo > 0.0) || !(g.r_hi > g.r_lo) || !std::isfinite(g.r_hi)) {
      throw ValidationError("geometry: need 0 < r_lo < r_hi < inf");
   }
   if (cfg.out_dir.empty()) throw ValidationError("out must not be empty");
}

int exit_code_for(const std::string& kind)
{
   if (kind == "parse") return 2;
   if (kind == "validation" || kind == "genericity") return 3;
   return 1;
}

std::string error_json(const std::string& kind, const std::string& message, int exit_code)
{
   json j;
   j["error"] = {{"kind", kind}, {"message", message}, {"exit_code", exit_code}};
   return j.dump() + "\n";
}

}  // namespace tnindex::cli
