#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace relpoly {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt binomial(unsigned long n, unsigned long k);

/// Reduced rational from integer numerator/denominator.
Rational make_rational(const BigInt& num, const BigInt& den = 1);

/// Dense univariate polynomial with big-integer coefficients, lowest power
/// first. Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients and equality is coefficientwise.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly monomial(std::size_t power, const BigInt& coeff = 1);
  static IntPoly constant(const BigInt& c);
  /// (x + shift)^n
  static IntPoly binomial_power(unsigned long n, long shift = 1);

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  /// Coefficient of x^k (zero past the degree).
  BigInt operator[](std::size_t k) const;
  const BigInt& leading() const { return coeffs_.back(); }

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const IntPoly& o);
  IntPoly& operator*=(const BigInt& c);

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const BigInt& c) { return a *= c; }
  friend IntPoly operator*(const BigInt& c, IntPoly a) { return a *= c; }
  friend IntPoly operator-(IntPoly a);
  friend bool operator==(const IntPoly& a, const IntPoly& b) = default;

  IntPoly pow(unsigned long e) const;
  IntPoly derivative() const;
  /// p(q(x)) by Horner's scheme.
  IntPoly compose(const IntPoly& q) const;
  /// p(x) / x^k for the largest k with x^k | p; returns the pair (quotient, k).
  std::pair<IntPoly, std::size_t> strip_zero_roots() const;
  /// Divides every coefficient exactly by c (throws if not exact).
  IntPoly exact_div(const BigInt& c) const;
  BigInt content() const;

  BigInt eval(const BigInt& x) const;
  Rational eval(const Rational& x) const;
  /// Sign of p(x) for rational x, computed homogeneously without division.
  int sign_at(const Rational& x) const;

  std::string to_string(char var = 'x') const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

/// Node reliability in the basis p^k (1-p)^(n-k): NRel = sum c_k p^k (1-p)^(n-k).
/// c[0] holds c_1, so c.size() == order.
struct CForm {
  std::size_t order = 0;
  std::vector<BigInt> c;

  CForm() = default;
  CForm(std::size_t n, std::vector<BigInt> coeffs);
  /// c_k with 1-based k; zero outside 1..order.
  BigInt coeff(std::size_t k) const;
  friend bool operator==(const CForm&, const CForm&) = default;
};

class Graph;

// Graph-derived forms.
IntPoly connected_set_polynomial(const Graph& g);
CForm nrel_cform(const Graph& g);

// Evaluation and basis changes.
Rational cform_eval(const CForm& f, const Rational& p);
IntPoly cform_expand(const CForm& f);
CForm cpoly_to_nrel(const IntPoly& cpoly, std::size_t n);
IntPoly nrel_to_cpoly(const CForm& f);
/// Inverse of cform_expand: C(x) = (1+x)^n NRel(x/(1+x)) from the power-basis
/// NRel polynomial. Throws if the result is not a valid C-polynomial of order n.
IntPoly power_nrel_to_cpoly(const IntPoly& nrel, std::size_t n);

// Closed forms and composition formulas.
IntPoly path_cpoly(std::size_t n);
CForm cycle_cform(std::size_t n);
IntPoly complete_cpoly(std::size_t n);
IntPoly lex_product_cpoly(const IntPoly& cg, std::size_t ng, const IntPoly& ch, std::size_t nh);
IntPoly apex_join_cpoly(const IntPoly& cg, std::size_t n);

struct PolyPart {
  IntPoly cpoly;
  std::size_t order = 0;
};
IntPoly union_cpoly(std::span<const PolyPart> parts);
CForm union_nrel(std::span<const CForm> parts);

CForm knn_nrel(std::size_t n);

/// (x-1)^2 C(P_n + v; x), the cleared-denominator family polynomial.
IntPoly family_fn(std::size_t n);
/// x(x-1)^2 (x+1)^n + x^2 x^n - x^2 - n x (x-1), the same polynomial assembled
/// from its exponential-family decomposition.
IntPoly family_fn_decomposition(std::size_t n);

}  // namespace relpoly
