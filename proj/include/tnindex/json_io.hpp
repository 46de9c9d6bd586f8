#pragma once

#include <initializer_list>
#include <string>

#include <json.hpp>

#include "tnindex/charclasses.hpp"
#include "tnindex/eta.hpp"
#include "tnindex/gauge.hpp"
#include "tnindex/geometry.hpp"

/// JSON mapping of the parameter structs. Readers are strict: unknown keys
/// and wrong JSON types raise ParseError, missing keys keep the defaults.
/// Range checks are left to the modules' validate() functions.
namespace tnindex::json_io {

using json = nlohmann::ordered_json;

/// Parses text; syntax errors become ParseError.
json parse(const std::string& text, const std::string& what);

/// Throws ParseError if obj is not an object or has a key outside `allowed`.
void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& where);

double get_number(const json& obj, const char* key, double fallback, const std::string& where);
int get_int(const json& obj, const char* key, int fallback, const std::string& where);
std::string get_string(const json& obj, const char* key, const std::string& fallback,
                       const std::string& where);

/// Finite numbers, or the strings "inf" / "-inf".
json number(double x);

json to_json(const geometry::MetricSpec& m);
json to_json(const charclasses::QuadratureSpec& q);
json to_json(const eta::SeriesSpec& s);
json to_json(const gauge::InstantonChannel& c);

geometry::MetricSpec metric_from_json(const json& j);
charclasses::QuadratureSpec quadrature_from_json(const json& j);
eta::SeriesSpec series_from_json(const json& j);
gauge::InstantonData instanton_from_json(const json& j, double* lambda_tol = nullptr);

geometry::MetricVariant parse_variant(const std::string& s);
geometry::BlendKind parse_blend(const std::string& s);
charclasses::Scheme parse_scheme(const std::string& s);

}  // namespace tnindex::json_io
