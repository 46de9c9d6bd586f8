#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tnindex/charclasses.hpp"
#include "tnindex/eta.hpp"
#include "tnindex/gauge.hpp"
#include "tnindex/index.hpp"

namespace tnindex::cli {

enum class Mode { Index, Eta, GeometryCheck, Pontryagin, Convergence };

const char* to_string(Mode m);
Mode parse_mode(const std::string& s);

struct GeometryCheckSpec
{
   int n_points = 50;
   std::uint64_t seed = 7;
   double r_lo = 0.3;
   double r_hi = 10.0;
};

struct RunConfig
{
   Mode mode = Mode::Pontryagin;
   std::optional<gauge::InstantonData> instanton;
   double lambda_tol = gauge::default_lambda_tol;
   /// Metrics for pontryagin/convergence; the first one also feeds the
   /// numeric grav term of mode index.
   std::vector<geometry::MetricSpec> metrics;
   /// Unset means default_quadrature() of each metric.
   std::optional<charclasses::QuadratureSpec> quad;
   eta::SeriesSpec series;
   /// Empty means all three routes.
   std::vector<eta::Route> routes;
   index::GravMode grav = index::GravMode::Numeric;
   /// Mode assertion tolerance; unset means the mode default.
   std::optional<double> tol;
   std::vector<int> n_r_sweep = {32, 64, 128, 256};
   GeometryCheckSpec geometry;
   std::string out_dir = ".";
   int threads = 0;
};

/// Default assertion tolerance of a mode.
double default_tolerance(Mode m);

/// The two reference metrics: ExactD with the quintic blend on [2, 4] and
/// with the septic blend on [1.5, 5].
std::vector<geometry::MetricSpec> default_metrics();

/// Parses a JSON config document. Syntax and type errors raise ParseError,
/// range and consistency errors ValidationError.
RunConfig parse_config(const std::string& text);

/// Reads and parses a config file (unreadable file: ParseError).
RunConfig load_config(const std::string& path);

/// Mode-specific presence checks (e.g. index/eta need channels).
void validate(const RunConfig& cfg);

/// Parses "mode_sum" | "poisson" | "bernoulli" | "all" or a comma list of routes.
std::vector<eta::Route> parse_routes(const std::string& s);

struct RunResult
{
   bool passed = true;
   std::vector<std::string> failures;  ///< failed mode assertions
   std::vector<std::string> files;     ///< written outputs
   std::string summary;                ///< one line for stdout
};

/// Executes the configured workflow and writes its outputs into
/// cfg.out_dir. Library errors propagate as tnindex::Error.
RunResult run(const RunConfig& cfg);

/// Process exit status for an error kind: 2 parse, 3 validation or
/// genericity, 1 otherwise.
int exit_code_for(const std::string& kind);

/// Machine-readable error document written to stderr.
std::string error_json(const std::string& kind, const std::string& message, int exit_code);

}  // namespace tnindex::cli
