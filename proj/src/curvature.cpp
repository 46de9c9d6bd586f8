#include <algorithm>
#include <cmath>

#include "tnindex/geometry.hpp"

namespace tnindex::geometry {

namespace {

using Arr4 = std::array<std::array<double, 4>, 4>;

// Metric value with first and second coordinate derivatives.
struct MetricJet
{
   Arr4 g{};
   std::array<Arr4, 4> dg{};                  // dg[a][i][j] = d_a g_ij
   std::array<std::array<Arr4, 4>, 4> ddg{};  // ddg[a][b][i][j]
};

MetricJet differentiate_dual(const MetricSpec& spec, const Point& p)
{
   using J = Jet<4>;
   const auto c = detail::metric_components(spec, J::variable(p.x1, 0), J::variable(p.x2, 1),
                                            J::variable(p.x3, 2));
   MetricJet m;
   for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
         m.g[i][j] = c[i][j].value;
         for (int a = 0; a < 4; ++a) {
            m.dg[a][i][j] = c[i][j].grad[a];
            for (int b = 0; b < 4; ++b) m.ddg[a][b][i][j] = c[i][j].hess[a][b];
         }
      }
   }
   return m;
}

MetricJet differentiate_fd(const MetricSpec& spec, const Point& p, double h)
{
   const std::array<double, 3> x0 = {p.x1, p.x2, p.x3};
   auto eval = [&](int a, double sa, int b, double sb) {
      auto x = x0;
      if (a >= 0) x[a] += sa * h;
      if (b >= 0) x[b] += sb * h;
      return detail::metric_components(spec, x[0], x[1], x[2]);
   };
   MetricJet m;
   m.g = eval(-1, 0, -1, 0);
   for (int a = 0; a < 3; ++a) {
      const Arr4 gp = eval(a, 1, -1, 0), gm = eval(a, -1, -1, 0);
      for (int i = 0; i < 4; ++i) {
         for (int j = 0; j < 4; ++j) {
            m.dg[a][i][j] = (gp[i][j] - gm[i][j]) / (2.0 * h);
            m.ddg[a][a][i][j] = (gp[i][j] - 2.0 * m.g[i][j] + gm[i][j]) / (h * h);
         }
      }
      for (int b = a + 1; b < 3; ++b) {
         const Arr4 pp = eval(a, 1, b, 1), pm = eval(a, 1, b, -1);
         const Arr4 mp = eval(a, -1, b, 1), mm = eval(a, -1, b, -1);
         for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
               const double v = (pp[i][j] - pm[i][j] - mp[i][j] + mm[i][j]) / (4.0 * h * h);
               m.ddg[a][b][i][j] = v;
               m.ddg[b][a][i][j] = v;
            }
         }
      }
   }
   return m;
}

// Pair-epsilon: e^P ^ e^Q = E(P,Q) vol over pairs 01,02,03,12,13,23.
Eigen::Matrix<double, 6, 6> pair_epsilon()
{
   Eigen::Matrix<double, 6, 6> E = Eigen::Matrix<double, 6, 6>::Zero();
   E(0, 5) = E(5, 0) = 1.0;
   E(1, 4) = E(4, 1) = -1.0;
   E(2, 3) = E(3, 2) = 1.0;
   return E;
}

}  // namespace

CurvatureSample curvature_at(const MetricSpec& spec, const Point& p, double h,
                             Differentiation mode)
{
   if (!(h > 0.0)) throw DomainError("curvature_at: step h must be > 0");
   if (!(p.r() > 2.0 * h)) throw DomainError("curvature_at: stencil crosses the nut (r <= 2h)");

   const MetricJet m = mode == Differentiation::Dual ? differentiate_dual(spec, p)
                                                     : differentiate_fd(spec, p, h);
   Mat4 g;
   for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) g(i, j) = m.g[i][j];
   }
   const MetricSample sample = make_sample(g);
   const Mat4 gi = g.inverse();
   const Mat4& E = sample.frame;

   std::array<Mat4, 4> dgi;
   for (int a = 0; a < 4; ++a) {
      Mat4 d;
      for (int i = 0; i < 4; ++i) {
         for (int j = 0; j < 4; ++j) d(i, j) = m.dg[a][i][j];
      }
      dgi[a] = -gi * d * gi;
   }

   // Christoffel symbols of the first kind and their derivatives.
   double gl[4][4][4], G[4][4][4], dgl[4][4][4][4], dG[4][4][4][4];
   for (int s = 0; s < 4; ++s) {
      for (int mu = 0; mu < 4; ++mu) {
         for (int nu = 0; nu < 4; ++nu) {
            gl[s][mu][nu] = 0.5 * (m.dg[mu][s][nu] + m.dg[nu][s][mu] - m.dg[s][mu][nu]);
            for (int a = 0; a < 4; ++a) {
               dgl[a][s][mu][nu] = 0.5 * (m.ddg[a][mu][s][nu] + m.ddg[a][nu][s][mu]
                                          - m.ddg[a][s][mu][nu]);
            }
         }
      }
   }
   for (int l = 0; l < 4; ++l) {
      for (int mu = 0; mu < 4; ++mu) {
         for (int nu = 0; nu < 4; ++nu) {
            double acc = 0.0;
            for (int s = 0; s < 4; ++s) acc += gi(l, s) * gl[s][mu][nu];
            G[l][mu][nu] = acc;
            for (int a = 0; a < 4; ++a) {
               double d = 0.0;
               for (int s = 0; s < 4; ++s) {
                  d += dgi[a](l, s) * gl[s][mu][nu] + gi(l, s) * dgl[a][s][mu][nu];
               }
               dG[a][l][mu][nu] = d;
            }
         }
      }
   }

   // R^r_{s mu nu}, then lower the first index.
   double Rup[4][4][4][4], Rc[4][4][4][4];
   for (int r = 0; r < 4; ++r) {
      for (int s = 0; s < 4; ++s) {
         for (int mu = 0; mu < 4; ++mu) {
            for (int nu = 0; nu < 4; ++nu) {
               double v = dG[mu][r][nu][s] - dG[nu][r][mu][s];
               for (int l = 0; l < 4; ++l) v += G[r][mu][l] * G[l][nu][s] - G[r][nu][l] * G[l][mu][s];
               Rup[r][s][mu][nu] = v;
            }
         }
      }
   }
   for (int r = 0; r < 4; ++r) {
      for (int s = 0; s < 4; ++s) {
         for (int mu = 0; mu < 4; ++mu) {
            for (int nu = 0; nu < 4; ++nu) {
               double v = 0.0;
               for (int k = 0; k < 4; ++k) v += g(r, k) * Rup[k][s][mu][nu];
               Rc[r][s][mu][nu] = v;
            }
         }
      }
   }

   // Frame components by successive contraction with the vierbein.
   double T1[4][4][4][4], T2[4][4][4][4];
   auto contract = [&](const double (&in)[4][4][4][4], double (&out)[4][4][4][4]) {
      // Contracts the last index and rotates it to the front.
      for (int i = 0; i < 4; ++i) {
         for (int j = 0; j < 4; ++j) {
            for (int k = 0; k < 4; ++k) {
               for (int d = 0; d < 4; ++d) {
                  double v = 0.0;
                  for (int n = 0; n < 4; ++n) v += in[i][j][k][n] * E(n, d);
                  out[d][i][j][k] = v;
               }
            }
         }
      }
   };
   contract(Rc, T1);
   contract(T1, T2);
   contract(T2, T1);
   contract(T1, T2);

   CurvatureSample out;
   double norm2 = 0.0;
   for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
         for (int c = 0; c < 4; ++c) {
            for (int d = 0; d < 4; ++d) {
               // Enforce the pair antisymmetries exactly.
               const double v = 0.25 * (T2[a][b][c][d] - T2[b][a][c][d] - T2[a][b][d][c]
                                        + T2[b][a][d][c]);
               out.riemann[a * 64 + b * 16 + c * 4 + d] = v;
               norm2 += v * v;
            }
         }
      }
   }
   out.riemann_norm = std::sqrt(norm2);

   for (int b = 0; b < 4; ++b) {
      for (int d = 0; d < 4; ++d) {
         double v = 0.0;
         for (int a = 0; a < 4; ++a) v += out(a, b, a, d);
         out.ricci(b, d) = v;
      }
   }
   out.ricci = 0.5 * (out.ricci + out.ricci.transpose()).eval();

   double bianchi = 0.0;
   for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
         for (int c = 0; c < 4; ++c) {
            for (int d = 0; d < 4; ++d) {
               bianchi = std::max(bianchi, std::abs(out(a, b, c, d) + out(a, c, d, b)
                                                    + out(a, d, b, c)));
            }
         }
      }
   }
   out.bianchi_residual = bianchi;

   for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) {
         for (int c = 0; c < 4; ++c) {
            for (int d = c + 1; d < 4; ++d) {
               out.two_form(pair_index(a, b), pair_index(c, d)) = out(a, b, c, d);
            }
         }
      }
   }
   // tr(R ^ R) = -sum_{a,b} R_ab ^ R_ab = -2 sum_{a<b} R_ab ^ R_ab
   out.pontryagin = -2.0 * (out.two_form * pair_epsilon() * out.two_form.transpose()).trace();
   out.volume_density = std::sqrt(g.determinant());
   return out;
}

}  // namespace tnindex::geometry
