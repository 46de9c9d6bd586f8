#pragma once

#include <array>
#include <vector>

#include "tnindex/charclasses.hpp"
#include "tnindex/geometry.hpp"

/// Diagonal model instantons on Taub-NUT (l = 1).
///
/// Each channel is the abelian connection
///
///    a = -i [ (lambda + m/(2r)) (dtau + omega) / V  -  m omega ],
///
/// i.e. the harmonic profile lambda + m/(2r) along the fiber together with
/// the Dirac-monopole connection -m omega on the base. The monopole term is
/// what makes the field strength anti-self-dual for every (lambda, m); its
/// boundary line bundle has (1/2 pi i) int F = -m. All u(1)-valued forms are
/// stored as real coefficients of -i.
namespace tnindex::gauge {

using geometry::Mat4;
using geometry::Point;

struct InstantonChannel
{
   double lambda = 0.5;
   double mcharge = 0.0;
   int chern = 0;
};

struct InstantonData
{
   std::vector<InstantonChannel> channels;
   int rank() const { return static_cast<int>(channels.size()); }
};

constexpr double default_lambda_tol = 1e-6;

/// |x - round(x)|.
double distance_to_integer(double x);

/// x - floor(x).
double fractional_part(double x);

/// Throws GenericityError naming the first channel with
/// dist(lambda, Z) < lambda_tol, and ValidationError for an empty channel
/// list or repeated lambda values.
void validate(const InstantonData& data, double lambda_tol = default_lambda_tol);

/// Connection coefficients alpha_mu with a = -i alpha_mu dx^mu.
struct U1Form
{
   std::array<double, 4> coeff{};
};

U1Form model_connection_at(const InstantonChannel& ch, const Point& p,
                           geometry::GaugeChart chart = geometry::GaugeChart::Equatorial);

enum class Duality { SelfDual, AntiSelfDual, Neither };

const char* to_string(Duality d);

struct FieldStrengthSample
{
   Mat4 f = Mat4::Zero();        ///< F = -i f
   double norm = 0.0;            ///< |f| in g_TN
   double asd_defect = 0.0;      ///< |f + *f|
   double sd_defect = 0.0;       ///< |f - *f|
   double closure_residual = 0.0;  ///< max |(df)_{mu nu rho}|
};

/// Closed-form field strength with duality defects against *_TN.
FieldStrengthSample field_strength_at(const InstantonChannel& ch, const Point& p,
                                      geometry::GaugeChart chart = geometry::GaugeChart::Equatorial);

/// SelfDual / AntiSelfDual if the corresponding relative defect is below
/// rel_tol, otherwise Neither.
Duality classify(const FieldStrengthSample& s, double rel_tol);

/// (f ^ f)/d^4x, the coordinate density of f ^ f.
double wedge_density(const Mat4& f);

struct BulkResult
{
   double value = 0.0;
   double error_estimate = 0.0;
   charclasses::RadialIntegral integral;
};

/// -(1/8 pi^2) int tr F ^ F over all of TN, summed over channels. The
/// radial integral always runs to infinity (the model fields decay only
/// algebraically) and starts at the nut, so quad.r_min and quad.r_max are
/// ignored; the segment r > 4 is mapped.
BulkResult bulk_action(const InstantonData& data, const charclasses::QuadratureSpec& quad);

struct BoundaryData
{
   std::vector<double> lambdas_mod1;
   std::vector<int> cherns;
   double delta = 0.0;
};

/// Holonomies reduced to (0,1), Chern numbers, and the spectral gap
/// delta = (1/2) min_j dist(lambda_j, Z).
BoundaryData boundary_data(const InstantonData& data, double lambda_tol = default_lambda_tol);

namespace detail {

/// Field-strength components f_mu_nu, templated for jets.
template <typename T>
std::array<std::array<T, 4>, 4> field_components(const InstantonChannel& ch, const T& x1,
                                                 const T& x2, const T& x3,
                                                 geometry::GaugeChart chart)
{
   using std::sqrt;
   const T r = sqrt(x1 * x1 + x2 * x2 + x3 * x3);
   const auto w = geometry::detail::omega_components(x1, x2, x3, chart);
   const T den = 2.0 * r + 1.0;
   const T h = (2.0 * ch.lambda * r + ch.mcharge) / den;
   const T dh = 2.0 * (ch.lambda - ch.mcharge) / (den * den);
   const T dV = -0.5 / (r * r);
   const std::array<T, 3> x = {x1, x2, x3};
   std::array<std::array<T, 4>, 4> f{};
   for (int i = 0; i < 3; ++i) {
      f[i][3] = dh * x[i] / r;
      f[3][i] = -f[i][3];
   }
   // (d omega)_ij = eps_ijk dV x_k / r
   const int k_of[3][3] = {{-1, 2, 1}, {2, -1, 0}, {1, 0, -1}};
   const double eps[3][3] = {{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}};
   for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
         const int k = k_of[i][j];
         const T v = dh * (x[i] * w[j] - x[j] * w[i]) / r
                     + (h - ch.mcharge) * (eps[i][j] * dV * x[k] / r);
         f[i][j] = v;
         f[j][i] = -v;
      }
   }
   return f;
}

/// Connection components alpha_mu, templated for jets.
template <typename T>
std::array<T, 4> connection_components(const InstantonChannel& ch, const T& x1, const T& x2,
                                       const T& x3, geometry::GaugeChart chart)
{
   using std::sqrt;
   const T r = sqrt(x1 * x1 + x2 * x2 + x3 * x3);
   const auto w = geometry::detail::omega_components(x1, x2, x3, chart);
   const T h = (2.0 * ch.lambda * r + ch.mcharge) / (2.0 * r + 1.0);
   return {(h - ch.mcharge) * w[0], (h - ch.mcharge) * w[1], (h - ch.mcharge) * w[2], h};
}

}  // namespace detail
}  // namespace tnindex::gauge
