#include "tnindex/index.hpp"

#include <cmath>
#include <sstream>

#include "tnindex/errors.hpp"
#include "tnindex/json_io.hpp"

namespace tnindex::index {

using json_io::json;

const char* to_string(GravMode g)
{
   return g == GravMode::Lemma ? "lemma" : "numeric";
}

GravMode parse_grav(const std::string& s)
{
   if (s == "lemma") return GravMode::Lemma;
   if (s == "numeric") return GravMode::Numeric;
   throw ValidationError("unknown grav mode '" + s + "'");
}

IntegralityResult integrality_check(double value, double tol)
{
   if (!(tol > 0.0)) throw ValidationError("integrality_check: tol must be > 0");
   if (!std::isfinite(value)) throw ValidationError("integrality_check: value is not finite");
   IntegralityResult out;
   // nearbyint honours the default rounding mode: ties to even.
   const double n = std::nearbyint(value);
   out.nearest = static_cast<long long>(n);
   out.defect = std::abs(value - n);
   out.pass = out.defect <= tol;
   return out;
}

double index_formula(const gauge::InstantonData& data, double bulk, double lambda_tol)
{
   const auto bd = gauge::boundary_data(data, lambda_tol);
   double twist = 0.0, b2 = 0.0;
   for (std::size_t j = 0; j < bd.lambdas_mod1.size(); ++j) {
      const double f = bd.lambdas_mod1[j];
      twist += (f - 0.5) * bd.cherns[j];
      b2 += f * f - f;
   }
   return bulk + twist - 0.5 * b2;
}

IndexReport assemble_from_parts(const gauge::InstantonData& data, double bulk, double bulk_error,
                                double grav, double grav_error, const eta::EtaResult& eta,
                                const AssembleOptions& opts)
{
   const auto bd = gauge::boundary_data(data, opts.lambda_tol);
   IndexReport r;
   r.rank = data.rank();
   for (std::size_t j = 0; j < data.channels.size(); ++j) {
      ChannelReport c;
      c.channel = data.channels[j];
      c.lambda_mod1 = bd.lambdas_mod1[j];
      c.eta = eta.per_channel.at(j);
      c.eta_integrated = eta.per_channel_integrated.at(j);
      r.channels.push_back(c);
   }
   r.delta = bd.delta;
   r.bulk = bulk;
   r.bulk_error = bulk_error;
   r.grav = grav;
   r.grav_error = grav_error;
   r.grav_mode = opts.grav;
   r.pontryagin_per_channel = grav / r.rank;
   r.eta_contribution = eta.integrated;
   r.eta_error = eta.error_estimate;
   r.route = eta.route;
   r.series = opts.series;
   r.metric = opts.metric;

   r.index_value = bulk + grav - eta.integrated;
   r.formula_value = index_formula(data, bulk, opts.lambda_tol);
   r.cancellation_residual = std::abs(r.index_value - r.formula_value);
   r.cancellation_tolerance = 1e-9 + grav_error + eta.error_estimate;
   if (!(r.cancellation_residual <= r.cancellation_tolerance)) {
      std::ostringstream os;
      os.precision(17);
      os << "assembled index " << r.index_value << " disagrees with the closed formula "
         << r.formula_value << " (residual " << r.cancellation_residual << " > "
         << r.cancellation_tolerance << ")";
      throw ConsistencyError(os.str());
   }

   r.integrality_tolerance = opts.integrality_tol + bulk_error;
   const auto ic = integrality_check(r.index_value, r.integrality_tolerance);
   r.nearest_integer = ic.nearest;
   r.integrality_defect = ic.defect;
   r.integrality_pass = ic.pass;
   return r;
}

IndexReport assemble(const gauge::InstantonData& data, const charclasses::QuadratureSpec& quad,
                     const AssembleOptions& opts)
{
   gauge::boundary_data(data, opts.lambda_tol);
   const auto bulk = gauge::bulk_action(data, quad);
   const double m = data.rank();
   double grav = m / 12.0, grav_error = 0.0;
   if (opts.grav == GravMode::Numeric) {
      const auto p = charclasses::pontryagin_integral(opts.metric, quad);
      grav = m * p.value;
      grav_error = m * (p.error_estimate + p.tail_bound);
   }
   const auto eta = eta::eta_integral(data, opts.route, opts.series, opts.lambda_tol);
   IndexReport r = assemble_from_parts(data, bulk.value, bulk.error_estimate, grav, grav_error,
                                       eta, opts);
   r.quadrature = quad;
   return r;
}

namespace {

json form(const FormScalar<double>& f)
{
   return {{"a0", f.a0}, {"a2", f.a2}};
}

}  // namespace

std::string to_json(const IndexReport& r)
{
   json j;
   j["schema"] = "tn-index-report/1";
   j["rank"] = r.rank;
   json chans = json::array();
   for (const auto& c : r.channels) {
      json cj = json_io::to_json(c.channel);
      cj["lambda_mod1"] = c.lambda_mod1;
      cj["eta"] = form(c.eta);
      cj["eta_integrated"] = c.eta_integrated;
      chans.push_back(cj);
   }
   j["channels"] = chans;
   j["delta"] = r.delta;
   j["bulk"] = r.bulk;
   j["bulk_error"] = r.bulk_error;
   j["grav"] = r.grav;
   j["grav_error"] = r.grav_error;
   j["grav_mode"] = to_string(r.grav_mode);
   j["pontryagin_per_channel"] = r.pontryagin_per_channel;
   j["eta_contribution"] = r.eta_contribution;
   j["eta_error"] = r.eta_error;
   j["route"] = eta::to_string(r.route);
   j["index_value"] = r.index_value;
   j["formula_value"] = r.formula_value;
   j["cancellation_residual"] = r.cancellation_residual;
   j["cancellation_tolerance"] = r.cancellation_tolerance;
   j["nearest_integer"] = r.nearest_integer;
   j["integrality_defect"] = r.integrality_defect;
   j["integrality_tolerance"] = r.integrality_tolerance;
   j["integrality_pass"] = r.integrality_pass;
   j["quadrature"] = json_io::to_json(r.quadrature);
   j["series"] = json_io::to_json(r.series);
   j["metric"] = json_io::to_json(r.metric);
   return j.dump(2) + "\n";
}

namespace {

const json& field(const json& j, const char* key)
{
   if (!j.contains(key)) throw ValidationError(std::string("report: missing field '") + key + "'");
   return j.at(key);
}

double num(const json& j, const char* key)
{
   const json& v = field(j, key);
   if (!v.is_number()) throw ValidationError(std::string("report: '") + key + "' is not a number");
   return v.get<double>();
}

}  // namespace

IndexReport from_json(const std::string& text)
{
   json j;
   try {
      j = json_io::parse(text, "report");
   } catch (const ParseError& e) {
      throw ValidationError(e.what());
   }
   if (!j.is_object() || field(j, "schema") != "tn-index-report/1") {
      throw ValidationError("report: unsupported schema");
   }
   try {
      IndexReport r;
      r.rank = field(j, "rank").get<int>();
      for (const json& c : field(j, "channels")) {
         ChannelReport cr;
         cr.channel.lambda = num(c, "lambda");
         cr.channel.mcharge = num(c, "m");
         cr.channel.chern = field(c, "chern").get<int>();
         cr.lambda_mod1 = num(c, "lambda_mod1");
         cr.eta = {num(field(c, "eta"), "a0"), num(field(c, "eta"), "a2")};
         cr.eta_integrated = num(c, "eta_integrated");
         r.channels.push_back(cr);
      }
      r.delta = num(j, "delta");
      r.bulk = num(j, "bulk");
      r.bulk_error = num(j, "bulk_error");
      r.grav = num(j, "grav");
      r.grav_error = num(j, "grav_error");
      r.grav_mode = parse_grav(field(j, "grav_mode").get<std::string>());
      r.pontryagin_per_channel = num(j, "pontryagin_per_channel");
      r.eta_contribution = num(j, "eta_contribution");
      r.eta_error = num(j, "eta_error");
      r.route = eta::parse_route(field(j, "route").get<std::string>());
      r.index_value = num(j, "index_value");
      r.formula_value = num(j, "formula_value");
      r.cancellation_residual = num(j, "cancellation_residual");
      r.cancellation_tolerance = num(j, "cancellation_tolerance");
      r.nearest_integer = field(j, "nearest_integer").get<long long>();
      r.integrality_defect = num(j, "integrality_defect");
      r.integrality_tolerance = num(j, "integrality_tolerance");
      r.integrality_pass = field(j, "integrality_pass").get<bool>();
      r.quadrature = json_io::quadrature_from_json(field(j, "quadrature"));
      r.series = json_io::series_from_json(field(j, "series"));
      r.metric = json_io::metric_from_json(field(j, "metric"));
      return r;
   } catch (const json::exception& e) {
      throw ValidationError(std::string("report: ") + e.what());
   } catch (const ParseError& e) {
      throw ValidationError(e.what());
   }
}

}  // namespace tnindex::index
