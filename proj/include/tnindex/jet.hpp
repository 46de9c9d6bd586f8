#pragma once

#include <array>
#include <cmath>

namespace tnindex {

/// Second-order truncated Taylor number in N variables.
///
/// Carries a value, its gradient and its (symmetric) Hessian through
/// arithmetic; products of three or more infinitesimals are dropped, so a
/// single evaluation of a closed-form expression yields exact first and
/// second partial derivatives up to rounding.
template <int N>
struct Jet
{
   double value = 0.0;
   std::array<double, N> grad{};
   std::array<std::array<double, N>, N> hess{};

   constexpr Jet() = default;
   constexpr Jet(double v) : value(v) {}

   /// The i-th coordinate function evaluated at x.
   static constexpr Jet variable(double x, int i)
   {
      Jet j(x);
      j.grad[i] = 1.0;
      return j;
   }

   Jet& operator+=(const Jet& o)
   {
      value += o.value;
      for (int i = 0; i < N; ++i) {
         grad[i] += o.grad[i];
         for (int k = 0; k < N; ++k) hess[i][k] += o.hess[i][k];
      }
      return *this;
   }
   Jet& operator-=(const Jet& o)
   {
      value -= o.value;
      for (int i = 0; i < N; ++i) {
         grad[i] -= o.grad[i];
         for (int k = 0; k < N; ++k) hess[i][k] -= o.hess[i][k];
      }
      return *this;
   }
   Jet& operator*=(double s)
   {
      value *= s;
      for (int i = 0; i < N; ++i) {
         grad[i] *= s;
         for (int k = 0; k < N; ++k) hess[i][k] *= s;
      }
      return *this;
   }
};

/// Compose a scalar function with known f, f', f'' onto a jet.
template <int N>
Jet<N> chain(const Jet<N>& a, double f, double df, double d2f)
{
   Jet<N> r(f);
   for (int i = 0; i < N; ++i) {
      r.grad[i] = df * a.grad[i];
      for (int k = 0; k < N; ++k) {
         r.hess[i][k] = df * a.hess[i][k] + d2f * a.grad[i] * a.grad[k];
      }
   }
   return r;
}

template <int N> Jet<N> operator+(Jet<N> a, const Jet<N>& b) { return a += b; }
template <int N> Jet<N> operator-(Jet<N> a, const Jet<N>& b) { return a -= b; }
template <int N> Jet<N> operator+(Jet<N> a, double b) { a.value += b; return a; }
template <int N> Jet<N> operator+(double a, Jet<N> b) { b.value += a; return b; }
template <int N> Jet<N> operator-(Jet<N> a, double b) { a.value -= b; return a; }
template <int N> Jet<N> operator-(double a, const Jet<N>& b) { return Jet<N>(a) - b; }
template <int N> Jet<N> operator-(Jet<N> a) { return a *= -1.0; }
template <int N> Jet<N> operator*(Jet<N> a, double s) { return a *= s; }
template <int N> Jet<N> operator*(double s, Jet<N> a) { return a *= s; }
template <int N> Jet<N> operator/(Jet<N> a, double s) { return a *= (1.0 / s); }

template <int N>
Jet<N> operator*(const Jet<N>& a, const Jet<N>& b)
{
   Jet<N> r(a.value * b.value);
   for (int i = 0; i < N; ++i) {
      r.grad[i] = a.value * b.grad[i] + b.value * a.grad[i];
      for (int k = 0; k < N; ++k) {
         r.hess[i][k] = a.value * b.hess[i][k] + b.value * a.hess[i][k]
                        + a.grad[i] * b.grad[k] + a.grad[k] * b.grad[i];
      }
   }
   return r;
}

template <int N>
Jet<N> inverse(const Jet<N>& a)
{
   const double v = 1.0 / a.value;
   return chain(a, v, -v * v, 2.0 * v * v * v);
}

template <int N> Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) { return a * inverse(b); }
template <int N> Jet<N> operator/(double a, const Jet<N>& b) { return a * inverse(b); }

template <int N>
Jet<N> sqrt(const Jet<N>& a)
{
   const double s = std::sqrt(a.value);
   return chain(a, s, 0.5 / s, -0.25 / (s * a.value));
}

template <int N>
Jet<N> exp(const Jet<N>& a)
{
   const double e = std::exp(a.value);
   return chain(a, e, e, e);
}

template <int N>
Jet<N> log(const Jet<N>& a)
{
   return chain(a, std::log(a.value), 1.0 / a.value, -1.0 / (a.value * a.value));
}

template <int N> bool operator<(const Jet<N>& a, double b) { return a.value < b; }
template <int N> bool operator<=(const Jet<N>& a, double b) { return a.value <= b; }
template <int N> bool operator>(const Jet<N>& a, double b) { return a.value > b; }
template <int N> bool operator>=(const Jet<N>& a, double b) { return a.value >= b; }

inline double value_of(double x) { return x; }
template <int N> double value_of(const Jet<N>& j) { return j.value; }

}  // namespace tnindex
