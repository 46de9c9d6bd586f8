#include "tnindex/json_io.hpp"

#include <cmath>
#include <limits>

#include "tnindex/errors.hpp"

namespace tnindex::json_io {

json parse(const std::string& text, const std::string& what)
{
   try {
      return json::parse(text);
   } catch (const json::parse_error& e) {
      throw ParseError(what + ": " + e.what());
   }
}

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& where)
{
   if (!obj.is_object()) throw ParseError(where + ": expected an object");
   for (const auto& [key, value] : obj.items()) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok) throw ParseError(where + ": unknown key '" + key + "'");
   }
}

namespace {

double as_number(const json& v, const std::string& where)
{
   if (v.is_number()) return v.get<double>();
   if (v.is_string()) {
      const auto s = v.get<std::string>();
      if (s == "inf") return std::numeric_limits<double>::infinity();
      if (s == "-inf") return -std::numeric_limits<double>::infinity();
   }
   throw ParseError(where + ": expected a number");
}

}  // namespace

double get_number(const json& obj, const char* key, double fallback, const std::string& where)
{
   if (!obj.contains(key)) return fallback;
   return as_number(obj.at(key), where + "." + key);
}

int get_int(const json& obj, const char* key, int fallback, const std::string& where)
{
   if (!obj.contains(key)) return fallback;
   const json& v = obj.at(key);
   if (v.is_number_integer()) {
      const auto x = v.get<long long>();
      if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
         throw ParseError(where + "." + key + ": integer out of range");
      }
      return static_cast<int>(x);
   }
   throw ParseError(where + "." + key + ": expected an integer");
}

std::string get_string(const json& obj, const char* key, const std::string& fallback,
                       const std::string& where)
{
   if (!obj.contains(key)) return fallback;
   const json& v = obj.at(key);
   if (!v.is_string()) throw ParseError(where + "." + key + ": expected a string");
   return v.get<std::string>();
}

json number(double x)
{
   if (std::isinf(x)) return x > 0 ? json("inf") : json("-inf");
   return json(x);
}

geometry::MetricVariant parse_variant(const std::string& s)
{
   using geometry::MetricVariant;
   for (auto v : {MetricVariant::TN, MetricVariant::Conformal, MetricVariant::Homotopy,
                  MetricVariant::ExactD, MetricVariant::Flat}) {
      if (s == geometry::to_string(v)) return v;
   }
   throw ValidationError("unknown metric variant '" + s + "'");
}

geometry::BlendKind parse_blend(const std::string& s)
{
   if (s == "quintic") return geometry::BlendKind::Quintic;
   if (s == "septic") return geometry::BlendKind::Septic;
   throw ValidationError("unknown blend profile '" + s + "'");
}

charclasses::Scheme parse_scheme(const std::string& s)
{
   using charclasses::Scheme;
   for (auto v : {Scheme::GaussLegendreComposite, Scheme::TanhSinh}) {
      if (s == charclasses::to_string(v)) return v;
   }
   throw ValidationError("unknown quadrature scheme '" + s + "'");
}

json to_json(const geometry::MetricSpec& m)
{
   json j;
   j["variant"] = geometry::to_string(m.variant);
   j["t"] = m.t;
   j["blend"] = {{"kind", geometry::to_string(m.blend.kind)},
                 {"r_in", m.blend.r_in},
                 {"r_out", m.blend.r_out}};
   j["l"] = m.l;
   return j;
}

json to_json(const charclasses::QuadratureSpec& q)
{
   json j;
   j["r_min"] = q.r_min;
   j["r_max"] = number(q.r_max);
   j["n_r"] = q.n_r;
   j["n_ang"] = q.n_ang;
   j["scheme"] = charclasses::to_string(q.scheme);
   j["tolerance"] = q.tolerance;
   return j;
}

json to_json(const eta::SeriesSpec& s)
{
   json j;
   j["K"] = s.K;
   j["P"] = s.P;
   j["u_min"] = s.u_min;
   j["u_max"] = s.u_max;
   j["tolerance"] = s.tolerance;
   return j;
}

json to_json(const gauge::InstantonChannel& c)
{
   return {{"lambda", c.lambda}, {"m", c.mcharge}, {"chern", c.chern}};
}

geometry::MetricSpec metric_from_json(const json& j)
{
   const std::string w = "metric";
   require_keys(j, {"variant", "t", "blend", "l"}, w);
   geometry::MetricSpec m;
   m.variant = parse_variant(get_string(j, "variant", geometry::to_string(m.variant), w));
   m.t = get_number(j, "t", m.t, w);
   m.l = get_number(j, "l", m.l, w);
   if (j.contains("blend")) {
      const json& b = j.at("blend");
      const std::string wb = w + ".blend";
      require_keys(b, {"kind", "r_in", "r_out"}, wb);
      m.blend.kind = parse_blend(get_string(b, "kind", geometry::to_string(m.blend.kind), wb));
      m.blend.r_in = get_number(b, "r_in", m.blend.r_in, wb);
      m.blend.r_out = get_number(b, "r_out", m.blend.r_out, wb);
   }
   geometry::validate(m);
   return m;
}

charclasses::QuadratureSpec quadrature_from_json(const json& j)
{
   const std::string w = "quadrature";
   require_keys(j, {"r_min", "r_max", "n_r", "n_ang", "scheme", "tolerance", "threads"}, w);
   charclasses::QuadratureSpec q;
   q.r_min = get_number(j, "r_min", q.r_min, w);
   q.r_max = get_number(j, "r_max", q.r_max, w);
   q.n_r = get_int(j, "n_r", q.n_r, w);
   q.n_ang = get_int(j, "n_ang", q.n_ang, w);
   q.scheme = parse_scheme(get_string(j, "scheme", charclasses::to_string(q.scheme), w));
   q.tolerance = get_number(j, "tolerance", q.tolerance, w);
   q.threads = get_int(j, "threads", q.threads, w);
   charclasses::validate(q);
   return q;
}

eta::SeriesSpec series_from_json(const json& j)
{
   const std::string w = "series";
   require_keys(j, {"K", "P", "u_min", "u_max", "tolerance"}, w);
   eta::SeriesSpec s;
   s.K = get_int(j, "K", s.K, w);
   s.P = get_int(j, "P", s.P, w);
   s.u_min = get_number(j, "u_min", s.u_min, w);
   s.u_max = get_number(j, "u_max", s.u_max, w);
   s.tolerance = get_number(j, "tolerance", s.tolerance, w);
   eta::validate(s);
   return s;
}

gauge::InstantonData instanton_from_json(const json& j, double* lambda_tol)
{
   const std::string w = "instanton";
   require_keys(j, {"channels", "lambda_tol"}, w);
   if (!j.contains("channels") || !j.at("channels").is_array()) {
      throw ParseError(w + ".channels: expected an array");
   }
   gauge::InstantonData data;
   int k = 0;
   for (const json& c : j.at("channels")) {
      const std::string wc = w + ".channels[" + std::to_string(k++) + "]";
      require_keys(c, {"lambda", "m", "chern"}, wc);
      if (!c.contains("lambda")) throw ParseError(wc + ": missing 'lambda'");
      gauge::InstantonChannel ch;
      ch.lambda = get_number(c, "lambda", 0.0, wc);
      ch.mcharge = get_number(c, "m", 0.0, wc);
      ch.chern = get_int(c, "chern", 0, wc);
      data.channels.push_back(ch);
   }
   const double tol = get_number(j, "lambda_tol", gauge::default_lambda_tol, w);
   if (!(tol > 0.0) || !(tol < 0.5)) throw ValidationError("instanton.lambda_tol must be in (0, 0.5)");
   if (lambda_tol != nullptr) *lambda_tol = tol;
   return data;
}

}  // namespace tnindex::json_io
