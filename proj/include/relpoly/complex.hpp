#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <type_traits>

#include "relpoly/real.hpp"

namespace relpoly {

/// Complex number over double or Real. std::complex is only specified for the
/// built-in floating types, so the multiprecision path needs its own.
template <class T>
struct Complex {
  T re;
  T im;

  Complex() : re(), im() {}
  Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(T r) : re(std::move(r)), im(re * 0.0) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }
  Complex& operator/=(const Complex& o) { return *this = *this / o; }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Complex& a, double s) { return {a.re * s, a.im * s}; }
  friend Complex operator*(double s, const Complex& a) { return {a.re * s, a.im * s}; }
  friend Complex operator*(const Complex& a, const T& s)
    requires(!std::is_same_v<T, double>)
  {
    return {a.re * s, a.im * s};
  }
  friend Complex operator/(const Complex& a, const T& s) { return {a.re / s, a.im / s}; }
  friend Complex operator+(const Complex& a, double s) { return {a.re + s, a.im}; }
  friend Complex operator-(const Complex& a, double s) { return {a.re - s, a.im}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    // Smith's algorithm keeps intermediates in range.
    using std::abs;
    if (abs(b.re) >= abs(b.im)) {
      T r = b.im / b.re;
      T d = b.re + b.im * r;
      return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
    }
    T r = b.re / b.im;
    T d = b.im + b.re * r;
    return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
  }
};

using ComplexD = Complex<double>;
using ComplexR = Complex<Real>;

template <class T>
T abs(const Complex<T>& z) {
  using std::hypot;
  return hypot(z.re, z.im);
}

template <class T>
T norm(const Complex<T>& z) {
  return z.re * z.re + z.im * z.im;
}

template <class T>
T arg(const Complex<T>& z) {
  using std::atan2;
  return atan2(z.im, z.re);
}

template <class T>
Complex<T> conj(const Complex<T>& z) {
  return {z.re, -z.im};
}

template <class T>
Complex<T> polar(const T& r, const T& theta) {
  using std::cos;
  using std::sin;
  return {r * cos(theta), r * sin(theta)};
}

template <class T>
Complex<T> exp(const Complex<T>& z) {
  using std::exp;
  return polar(T(exp(z.re)), z.im);
}

/// Principal branch.
template <class T>
Complex<T> log(const Complex<T>& z) {
  using std::log;
  return {log(abs(z)), arg(z)};
}

/// z^e for integer e >= 0 by repeated squaring.
template <class T>
Complex<T> ipow(Complex<T> z, unsigned long e) {
  Complex<T> result(z.re * 0.0 + 1.0, z.re * 0.0);
  while (e > 0) {
    if (e & 1) result = result * z;
    e >>= 1;
    if (e) z = z * z;
  }
  return result;
}

inline ComplexR to_real(const ComplexD& z, long bits) {
  return {Real(z.re, bits), Real(z.im, bits)};
}
inline ComplexR to_real(const ComplexR& z, long bits) {
  return {z.re.with_precision(bits), z.im.with_precision(bits)};
}
inline ComplexD to_double(const ComplexR& z) { return {z.re.to_double(), z.im.to_double()}; }
inline ComplexD to_double(const ComplexD& z) { return z; }

inline std::complex<double> to_std(const ComplexD& z) { return {z.re, z.im}; }
inline ComplexD from_std(const std::complex<double>& z) { return {z.real(), z.imag()}; }

}  // namespace relpoly
