#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tnindex/charclasses.hpp"
#include "tnindex/eta.hpp"
#include "tnindex/gauge.hpp"

namespace tnindex::index {

enum class GravMode { Lemma, Numeric };

const char* to_string(GravMode g);
GravMode parse_grav(const std::string& s);

struct IntegralityResult
{
   long long nearest = 0;
   double defect = 0.0;
   bool pass = false;
};

/// Rounds to the nearest integer (ties to even) and reports the defect;
/// pass iff defect <= tol. Throws ValidationError unless tol > 0.
IntegralityResult integrality_check(double value, double tol);

/// bulk + sum_j ({lambda_j} - 1/2) c_j - (1/2) sum_j ({lambda_j}^2 - {lambda_j}).
double index_formula(const gauge::InstantonData& data, double bulk,
                     double lambda_tol = gauge::default_lambda_tol);

struct AssembleOptions
{
   eta::Route route = eta::Route::Bernoulli;
   GravMode grav = GravMode::Numeric;
   /// Metric whose Pontryagin integral supplies grav in Numeric mode.
   geometry::MetricSpec metric{geometry::MetricVariant::ExactD};
   eta::SeriesSpec series;
   double integrality_tol = 1e-3;
   double lambda_tol = gauge::default_lambda_tol;
};

struct ChannelReport
{
   gauge::InstantonChannel channel;
   double lambda_mod1 = 0.0;
   FormScalar<double> eta;
   double eta_integrated = 0.0;
};

struct IndexReport
{
   int rank = 0;
   std::vector<ChannelReport> channels;
   double delta = 0.0;

   double bulk = 0.0;
   double bulk_error = 0.0;
   double grav = 0.0;
   double grav_error = 0.0;
   GravMode grav_mode = GravMode::Numeric;
   double pontryagin_per_channel = 0.0;  ///< grav / rank
   double eta_contribution = 0.0;
   double eta_error = 0.0;
   eta::Route route = eta::Route::Bernoulli;

   double index_value = 0.0;
   double formula_value = 0.0;
   double cancellation_residual = 0.0;
   double cancellation_tolerance = 0.0;

   long long nearest_integer = 0;
   double integrality_defect = 0.0;
   double integrality_tolerance = 0.0;
   bool integrality_pass = false;

   charclasses::QuadratureSpec quadrature;
   eta::SeriesSpec series;
   geometry::MetricSpec metric;
};

/// Assembles bulk + grav - eta_contribution and checks it against
/// index_formula. A cancellation residual above 1e-9 + quadrature error
/// throws ConsistencyError.
IndexReport assemble(const gauge::InstantonData& data, const charclasses::QuadratureSpec& quad,
                     const AssembleOptions& opts);

/// Rebuilds an IndexReport from fields already computed elsewhere (used by
/// assemble and by tests that inject contributions).
IndexReport assemble_from_parts(const gauge::InstantonData& data, double bulk, double bulk_error,
                                double grav, double grav_error, const eta::EtaResult& eta,
                                const AssembleOptions& opts);

/// JSON text of a report (keys in a fixed order, shortest round-trip
/// number formatting).
std::string to_json(const IndexReport& r);

/// Parses a document produced by to_json; throws ValidationError on
/// missing or mistyped fields.
IndexReport from_json(const std::string& text);

}  // namespace tnindex::index
