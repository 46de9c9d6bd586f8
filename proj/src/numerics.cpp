#include "tnindex/numerics.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

namespace tnindex {

Rule gauss_legendre(int n)
{
   Rule rule;
   if (n == 1) {
      rule.nodes = {0.0};
      rule.weights = {2.0};
      return rule;
   }
   // Symmetric Jacobi matrix of the Legendre recurrence.
   Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
   for (int k = 1; k < n; ++k) {
      const double b = k / std::sqrt(4.0 * k * k - 1.0);
      J(k, k - 1) = b;
      J(k - 1, k) = b;
   }
   Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
   rule.nodes.resize(n);
   rule.weights.resize(n);
   for (int i = 0; i < n; ++i) {
      double x = es.eigenvalues()(i);
      // One Newton step on P_n sharpens the eigenvalue to full precision.
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
         const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
         p0 = p1;
         p1 = p2;
      }
      const double dp = n * (x * p1 - p0) / (x * x - 1.0);
      x -= p1 / dp;
      p0 = 1.0;
      p1 = x;
      for (int k = 2; k <= n; ++k) {
         const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
         p0 = p1;
         p1 = p2;
      }
      const double d = n * (x * p1 - p0) / (x * x - 1.0);
      rule.nodes[i] = x;
      rule.weights[i] = 2.0 / ((1.0 - x * x) * d * d);
   }
   return rule;
}

Rule tanh_sinh_rule(int n)
{
   Rule rule;
   if (n == 1) {
      rule.nodes = {0.0};
      rule.weights = {2.0};
      return rule;
   }
   // Abscissae t_k = -t_max .. t_max; t_max chosen so that 1 - |x| stays
   // representable at the ends.
   constexpr double t_max = 3.0;
   constexpr double half_pi = 0.5 * std::numbers::pi;
   const double h = 2.0 * t_max / (n - 1);
   rule.nodes.resize(n);
   rule.weights.resize(n);
   for (int k = 0; k < n; ++k) {
      const double t = -t_max + k * h;
      const double u = half_pi * std::sinh(t);
      const double c = std::cosh(u);
      rule.nodes[k] = std::tanh(u);
      rule.weights[k] = h * half_pi * std::cosh(t) / (c * c);
   }
   // Renormalise so constants integrate exactly.
   double s = 0.0;
   for (double w : rule.weights) s += w;
   for (double& w : rule.weights) w *= 2.0 / s;
   return rule;
}

double pairwise_sum(std::span<const double> v)
{
   if (v.size() <= 8) {
      double s = 0.0;
      for (double x : v) s += x;
      return s;
   }
   const std::size_t half = v.size() / 2;
   return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

int resolve_threads(int requested)
{
   if (requested > 0) return requested;
   if (const char* env = std::getenv("TN_INDEX_THREADS")) {
      try {
         const int n = std::stoi(env);
         if (n > 0) return n;
      } catch (...) {
      }
   }
   return 1;
}

}  // namespace tnindex
