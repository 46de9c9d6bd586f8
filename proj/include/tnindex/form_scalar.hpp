#pragma once

#include <cmath>
#include <complex>

namespace tnindex {

/// Element a0 + a2 e of the truncated exterior algebra of the boundary
/// base, where e is a fixed 2-form and e ^ e = 0. Products and exponentials
/// follow the nilpotent rules (a + b e)(c + d e) = ac + (ad + bc) e.
template <typename T>
struct FormScalar
{
   T a0{};
   T a2{};

   FormScalar() = default;
   FormScalar(T zero, T two) : a0(zero), a2(two) {}
   explicit FormScalar(T zero) : a0(zero), a2() {}

   FormScalar& operator+=(const FormScalar& o)
   {
      a0 += o.a0;
      a2 += o.a2;
      return *this;
   }
   FormScalar& operator-=(const FormScalar& o)
   {
      a0 -= o.a0;
      a2 -= o.a2;
      return *this;
   }
   FormScalar& operator*=(const FormScalar& o)
   {
      a2 = a0 * o.a2 + a2 * o.a0;
      a0 *= o.a0;
      return *this;
   }
   FormScalar& operator*=(const T& s)
   {
      a0 *= s;
      a2 *= s;
      return *this;
   }
};

template <typename T>
FormScalar<T> operator+(FormScalar<T> a, const FormScalar<T>& b) { return a += b; }
template <typename T>
FormScalar<T> operator-(FormScalar<T> a, const FormScalar<T>& b) { return a -= b; }
template <typename T>
FormScalar<T> operator-(const FormScalar<T>& a) { return {-a.a0, -a.a2}; }
template <typename T>
FormScalar<T> operator*(FormScalar<T> a, const FormScalar<T>& b) { return a *= b; }
template <typename T>
FormScalar<T> operator*(FormScalar<T> a, const T& s) { return a *= s; }
template <typename T>
FormScalar<T> operator*(const T& s, FormScalar<T> a) { return a *= s; }

/// exp(a0 + a2 e) = e^{a0} (1 + a2 e).
template <typename T>
FormScalar<T> exp(const FormScalar<T>& x)
{
   using std::exp;
   const T e0 = exp(x.a0);
   return {e0, e0 * x.a2};
}

}  // namespace tnindex
