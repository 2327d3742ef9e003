#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <string>
#include <utility>

namespace relpoly {

inline constexpr long default_precision_bits = 256;

/// Arbitrary-precision binary float on top of MPFR. Every value carries its
/// own precision; a binary operation rounds to the larger operand precision.
class Real {
 public:
  explicit Real(long bits = default_precision_bits);
  Real(double v, long bits);
  Real(const mpz_class& v, long bits);
  Real(const mpq_class& v, long bits);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  Real& operator=(double v);
  ~Real();

  long precision() const { return static_cast<long>(mpfr_get_prec(value_)); }
  /// Copy rounded to a different precision.
  Real with_precision(long bits) const;

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Decimal scientific notation with `digits` significant digits.
  std::string to_string(int digits = 20) const;
  /// Base-2 exponent e with |x| in [2^(e-1), 2^e); zero maps to a very negative value.
  long exponent() const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator*=(double o);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator-(const Real& a);
  friend Real operator*(const Real& a, double b);
  friend Real operator*(double a, const Real& b) { return b * a; }
  friend Real operator+(const Real& a, double b);
  friend Real operator-(const Real& a, double b);
  friend Real operator/(const Real& a, double b);

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.value_, b.value_); }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.value_, b.value_); }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.value_, b.value_); }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.value_, b.value_); }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_); }
  friend bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.value_, b) < 0; }
  friend bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.value_, b) > 0; }

  friend Real abs(const Real& a);
  friend Real sqrt(const Real& a);
  friend Real exp(const Real& a);
  friend Real log(const Real& a);
  friend Real sin(const Real& a);
  friend Real cos(const Real& a);
  friend Real atan2(const Real& y, const Real& x);
  friend Real hypot(const Real& a, const Real& b);
  friend Real ldexp(const Real& a, long e);

  static Real pi(long bits);

 private:
  mpfr_t value_;
};

inline Real max_prec_temp(const Real& a, const Real& b) {
  return Real(std::max(a.precision(), b.precision()));
}

// Precision-agnostic helpers so numeric code can be written once for double
// and Real.
inline long precision_of(double) { return 53; }
inline long precision_of(const Real& r) { return r.precision(); }
inline double to_double(double v) { return v; }
inline double to_double(const Real& r) { return r.to_double(); }

template <class T>
T make_scalar(double v, long bits);
template <>
inline double make_scalar<double>(double v, long) { return v; }
template <>
inline Real make_scalar<Real>(double v, long bits) { return Real(v, bits); }

}  // namespace relpoly
