#include "relpoly/poly.hpp"

#include <algorithm>
#include <sstream>

#include "relpoly/connected.hpp"
#include "relpoly/graph.hpp"

namespace relpoly {

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// IntPoly --------------------------------------------------------------------

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

IntPoly IntPoly::monomial(std::size_t power, const BigInt& coeff) {
  std::vector<BigInt> c(power + 1);
  c[power] = coeff;
  return IntPoly(std::move(c));
}

IntPoly IntPoly::constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }

IntPoly IntPoly::binomial_power(unsigned long n, long shift) {
  // (x + s)^n = sum_k C(n,k) s^(n-k) x^k
  std::vector<BigInt> c(n + 1);
  BigInt s = shift;
  for (unsigned long k = 0; k <= n; ++k) {
    BigInt sp;
    mpz_pow_ui(sp.get_mpz_t(), s.get_mpz_t(), n - k);
    c[k] = binomial(n, k) * sp;
  }
  return IntPoly(std::move(c));
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPoly::operator[](std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : BigInt(0);
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      mpz_addmul(c[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
  }
  return IntPoly(std::move(c));
}

IntPoly& IntPoly::operator*=(const IntPoly& o) { return *this = *this * o; }

IntPoly& IntPoly::operator*=(const BigInt& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

IntPoly operator-(IntPoly a) {
  for (auto& x : a.coeffs_) x = -x;
  return a;
}

IntPoly IntPoly::pow(unsigned long e) const {
  IntPoly result = IntPoly::constant(1);
  IntPoly base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

IntPoly IntPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<BigInt> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
  return IntPoly(std::move(d));
}

IntPoly IntPoly::compose(const IntPoly& q) const {
  IntPoly acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * q;
    acc += IntPoly::constant(*it);
  }
  return acc;
}

std::pair<IntPoly, std::size_t> IntPoly::strip_zero_roots() const {
  std::size_t k = 0;
  while (k < coeffs_.size() && coeffs_[k] == 0) ++k;
  if (k == coeffs_.size()) return {IntPoly{}, 0};
  return {IntPoly(std::vector<BigInt>(coeffs_.begin() + static_cast<long>(k), coeffs_.end())), k};
}

IntPoly IntPoly::exact_div(const BigInt& c) const {
  std::vector<BigInt> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!mpz_divisible_p(coeffs_[i].get_mpz_t(), c.get_mpz_t())) {
      throw std::domain_error("inexact polynomial division");
    }
    mpz_divexact(out[i].get_mpz_t(), coeffs_[i].get_mpz_t(), c.get_mpz_t());
  }
  return IntPoly(std::move(out));
}

BigInt IntPoly::content() const {
  BigInt g = 0;
  for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

BigInt IntPoly::eval(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational IntPoly::eval(const Rational& x) const {
  // Homogeneous Horner: sum a_i p^i q^(d-i), then divide by q^d once.
  if (is_zero()) return 0;
  const BigInt& p = x.get_num();
  const BigInt& q = x.get_den();
  BigInt acc = 0;
  BigInt qpow = 1;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * p + *it * qpow;
    qpow *= q;
  }
  BigInt den;
  mpz_pow_ui(den.get_mpz_t(), q.get_mpz_t(), coeffs_.size() - 1);
  return make_rational(acc, den);
}

int IntPoly::sign_at(const Rational& x) const {
  if (is_zero()) return 0;
  const BigInt& p = x.get_num();
  const BigInt& q = x.get_den();
  BigInt acc = 0;
  BigInt qpow = 1;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * p + *it * qpow;
    qpow *= q;
  }
  return sgn(acc);
}

std::string IntPoly::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (long k = degree(); k >= 0; --k) {
    const BigInt& c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || k == 0) out << mag.get_str();
    if (k >= 1) out << var;
    if (k >= 2) out << '^' << k;
  }
  return out.str();
}

// CForm ----------------------------------------------------------------------

CForm::CForm(std::size_t n, std::vector<BigInt> coeffs) : order(n), c(std::move(coeffs)) {
  if (c.size() != n) throw std::invalid_argument("C-form needs exactly n coefficients");
}

BigInt CForm::coeff(std::size_t k) const {
  return (k >= 1 && k <= order) ? c[k - 1] : BigInt(0);
}

IntPoly connected_set_polynomial(const Graph& g) {
  auto counts = connected_counts(g);
  std::vector<BigInt> coeffs(counts.counts.size() + 1);
  for (std::size_t k = 0; k < counts.counts.size(); ++k) coeffs[k + 1] = counts.counts[k];
  return IntPoly(std::move(coeffs));
}

CForm nrel_cform(const Graph& g) {
  auto counts = connected_counts(g);
  return CForm(g.order(), std::move(counts.counts));
}

Rational cform_eval(const CForm& f, const Rational& p) {
  Rational q = 1 - p;
  Rational sum = 0;
  // sum_k c_k p^k q^(n-k), building powers incrementally.
  std::vector<Rational> qpow(f.order + 1);
  qpow[0] = 1;
  for (std::size_t i = 1; i <= f.order; ++i) qpow[i] = qpow[i - 1] * q;
  Rational ppow = 1;
  for (std::size_t k = 1; k <= f.order; ++k) {
    ppow *= p;
    if (f.c[k - 1] != 0) sum += Rational(f.c[k - 1]) * ppow * qpow[f.order - k];
  }
  sum.canonicalize();
  return sum;
}

IntPoly cform_expand(const CForm& f) {
  // p^k (1-p)^(n-k) = sum_j C(n-k, j) (-1)^j p^(k+j)
  std::vector<BigInt> out(f.order + 1);
  for (std::size_t k = 1; k <= f.order; ++k) {
    const BigInt& ck = f.c[k - 1];
    if (ck == 0) continue;
    const std::size_t rest = f.order - k;
    for (std::size_t j = 0; j <= rest; ++j) {
      BigInt term = ck * binomial(rest, j);
      if (j % 2) out[k + j] -= term;
      else out[k + j] += term;
    }
  }
  return IntPoly(std::move(out));
}

CForm cpoly_to_nrel(const IntPoly& cpoly, std::size_t n) {
  if (cpoly.degree() > static_cast<long>(n)) {
    throw std::invalid_argument("connected set polynomial degree exceeds the order");
  }
  if (cpoly[0] != 0) throw std::invalid_argument("connected set polynomial has a constant term");
  std::vector<BigInt> c(n);
  for (std::size_t k = 1; k <= n; ++k) c[k - 1] = cpoly[k];
  return CForm(n, std::move(c));
}

IntPoly nrel_to_cpoly(const CForm& f) {
  std::vector<BigInt> coeffs(f.order + 1);
  for (std::size_t k = 1; k <= f.order; ++k) coeffs[k] = f.c[k - 1];
  return IntPoly(std::move(coeffs));
}

IntPoly power_nrel_to_cpoly(const IntPoly& nrel, std::size_t n) {
  if (nrel.degree() > static_cast<long>(n)) {
    throw std::invalid_argument("node reliability degree exceeds the order");
  }
  // (1+x)^n sum_j a_j (x/(1+x))^j = sum_j a_j x^j (1+x)^(n-j)
  std::vector<BigInt> out(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const BigInt a = nrel[j];
    if (a == 0) continue;
    for (std::size_t i = 0; i <= n - j; ++i) out[j + i] += a * binomial(n - j, i);
  }
  IntPoly c(std::move(out));
  if (c[0] != 0) throw std::invalid_argument("node reliability has a nonzero constant term");
  return c;
}

IntPoly path_cpoly(std::size_t n) {
  if (n == 0) throw std::invalid_argument("path order must be at least 1");
  std::vector<BigInt> c(n + 1);
  for (std::size_t k = 1; k <= n; ++k) c[k] = static_cast<unsigned long>(n - k + 1);
  return IntPoly(std::move(c));
}

CForm cycle_cform(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle order must be at least 3");
  std::vector<BigInt> c(n, BigInt(static_cast<unsigned long>(n)));
  c[n - 1] = 1;
  return CForm(n, std::move(c));
}

IntPoly complete_cpoly(std::size_t n) {
  return IntPoly::binomial_power(n, 1) - IntPoly::constant(1);
}

IntPoly lex_product_cpoly(const IntPoly& cg, std::size_t ng, const IntPoly& ch, std::size_t nh) {
  // C(G;(x+1)^nh - 1) + ng [C(H;x) - (x+1)^nh + 1]
  const IntPoly blowup = complete_cpoly(nh);
  IntPoly result = cg.compose(blowup);
  result += (ch - blowup) * BigInt(static_cast<unsigned long>(ng));
  return result;
}

IntPoly apex_join_cpoly(const IntPoly& cg, std::size_t n) {
  if (cg.degree() > static_cast<long>(n)) {
    throw std::invalid_argument("connected set polynomial degree exceeds the order");
  }
  return cg + IntPoly::monomial(1) * IntPoly::binomial_power(n, 1);
}

IntPoly union_cpoly(std::span<const PolyPart> parts) {
  IntPoly sum;
  for (const auto& part : parts) sum += part.cpoly;
  return sum;
}

CForm union_nrel(std::span<const CForm> parts) {
  // (1-p)^(n-n_i) NRel(G_i;p) keeps c_k unchanged in the order-n basis, so the
  // union is the zero-padded sum of c-vectors.
  std::size_t n = 0;
  for (const auto& part : parts) n += part.order;
  std::vector<BigInt> c(n);
  for (const auto& part : parts)
    for (std::size_t k = 0; k < part.c.size(); ++k) c[k] += part.c[k];
  return CForm(n, std::move(c));
}

CForm knn_nrel(std::size_t n) {
  if (n == 0) throw std::invalid_argument("K_{n,n} needs n >= 1");
  // 2n p (1-p)^(2n-1) + (1 - (1-p)^n)^2 in the power basis.
  const IntPoly one_minus_p{1, -1};
  IntPoly single = IntPoly::monomial(1, 2 * static_cast<unsigned long>(n)) * one_minus_p.pow(2 * n - 1);
  IntPoly both = IntPoly::constant(1) - one_minus_p.pow(n);
  IntPoly expanded = single + both * both;
  return cpoly_to_nrel(power_nrel_to_cpoly(expanded, 2 * n), 2 * n);
}

IntPoly family_fn(std::size_t n) {
  const IntPoly x_minus_1{-1, 1};
  return x_minus_1 * x_minus_1 * apex_join_cpoly(path_cpoly(n), n);
}

IntPoly family_fn_decomposition(std::size_t n) {
  const IntPoly x = IntPoly::monomial(1);
  const IntPoly x_minus_1{-1, 1};
  IntPoly f = x * x_minus_1 * x_minus_1 * IntPoly::binomial_power(n, 1);
  f += IntPoly::monomial(n + 2);
  f -= IntPoly::monomial(2);
  f -= x * x_minus_1 * BigInt(static_cast<unsigned long>(n));
  return f;
}

}  // namespace relpoly
