#include "relpoly/real.hpp"

#include <algorithm>
#include <limits>
#include <memory>

namespace relpoly {

namespace {
constexpr mpfr_rnd_t rnd = MPFR_RNDN;

mpfr_prec_t clamp_bits(long bits) {
  return static_cast<mpfr_prec_t>(std::clamp<long>(bits, MPFR_PREC_MIN, 1L << 24));
}
}  // namespace

Real::Real(long bits) {
  mpfr_init2(value_, clamp_bits(bits));
  mpfr_set_zero(value_, 1);
}

Real::Real(double v, long bits) {
  mpfr_init2(value_, clamp_bits(bits));
  mpfr_set_d(value_, v, rnd);
}

Real::Real(const mpz_class& v, long bits) {
  mpfr_init2(value_, clamp_bits(bits));
  mpfr_set_z(value_, v.get_mpz_t(), rnd);
}

Real::Real(const mpq_class& v, long bits) {
  mpfr_init2(value_, clamp_bits(bits));
  mpfr_set_q(value_, v.get_mpq_t(), rnd);
}

Real::Real(const Real& o) {
  mpfr_init2(value_, mpfr_get_prec(o.value_));
  mpfr_set(value_, o.value_, rnd);
}

Real::Real(Real&& o) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, o.value_);
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(value_, mpfr_get_prec(o.value_));
    mpfr_set(value_, o.value_, rnd);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(value_, o.value_);
  return *this;
}

Real& Real::operator=(double v) {
  mpfr_set_d(value_, v, rnd);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::with_precision(long bits) const {
  Real r(bits);
  mpfr_set(r.value_, value_, rnd);
  return r;
}

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*Re", std::max(1, digits - 1), value_);
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

long Real::exponent() const {
  if (!mpfr_regular_p(value_)) return std::numeric_limits<long>::min() / 2;
  return static_cast<long>(mpfr_get_exp(value_));
}

#define RELPOLY_COMPOUND(op, fn)                  \
  Real& Real::operator op(const Real& o) {        \
    if (mpfr_get_prec(o.value_) > mpfr_get_prec(value_)) \
      mpfr_prec_round(value_, mpfr_get_prec(o.value_), rnd); \
    fn(value_, value_, o.value_, rnd);             \
    return *this;                                  \
  }
RELPOLY_COMPOUND(+=, mpfr_add)
RELPOLY_COMPOUND(-=, mpfr_sub)
RELPOLY_COMPOUND(*=, mpfr_mul)
RELPOLY_COMPOUND(/=, mpfr_div)
#undef RELPOLY_COMPOUND

Real& Real::operator*=(double o) {
  mpfr_mul_d(value_, value_, o, rnd);
  return *this;
}

#define RELPOLY_BINARY(op, fn)                             \
  Real operator op(const Real& a, const Real& b) {         \
    Real r = max_prec_temp(a, b);                          \
    fn(r.value_, a.value_, b.value_, rnd);                 \
    return r;                                              \
  }
RELPOLY_BINARY(+, mpfr_add)
RELPOLY_BINARY(-, mpfr_sub)
RELPOLY_BINARY(*, mpfr_mul)
RELPOLY_BINARY(/, mpfr_div)
#undef RELPOLY_BINARY

Real operator-(const Real& a) {
  Real r(a.precision());
  mpfr_neg(r.value_, a.value_, rnd);
  return r;
}

Real operator*(const Real& a, double b) {
  Real r(a.precision());
  mpfr_mul_d(r.value_, a.value_, b, rnd);
  return r;
}

Real operator+(const Real& a, double b) {
  Real r(a.precision());
  mpfr_add_d(r.value_, a.value_, b, rnd);
  return r;
}

Real operator-(const Real& a, double b) {
  Real r(a.precision());
  mpfr_sub_d(r.value_, a.value_, b, rnd);
  return r;
}

Real operator/(const Real& a, double b) {
  Real r(a.precision());
  mpfr_div_d(r.value_, a.value_, b, rnd);
  return r;
}

#define RELPOLY_UNARY(name, fn)           \
  Real name(const Real& a) {              \
    Real r(a.precision());                \
    fn(r.value_, a.value_, rnd);          \
    return r;                             \
  }
RELPOLY_UNARY(abs, mpfr_abs)
RELPOLY_UNARY(sqrt, mpfr_sqrt)
RELPOLY_UNARY(exp, mpfr_exp)
RELPOLY_UNARY(log, mpfr_log)
RELPOLY_UNARY(sin, mpfr_sin)
RELPOLY_UNARY(cos, mpfr_cos)
#undef RELPOLY_UNARY

Real atan2(const Real& y, const Real& x) {
  Real r = max_prec_temp(y, x);
  mpfr_atan2(r.value_, y.value_, x.value_, rnd);
  return r;
}

Real hypot(const Real& a, const Real& b) {
  Real r = max_prec_temp(a, b);
  mpfr_hypot(r.value_, a.value_, b.value_, rnd);
  return r;
}

Real ldexp(const Real& a, long e) {
  Real r(a.precision());
  mpfr_mul_2si(r.value_, a.value_, e, rnd);
  return r;
}

Real Real::pi(long bits) {
  Real r(bits);
  mpfr_const_pi(r.value_, rnd);
  return r;
}

}  // namespace relpoly
