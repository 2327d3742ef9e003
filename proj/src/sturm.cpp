#include "relpoly/sturm.hpp"

#include <stdexcept>

namespace relpoly {

IntPoly positive_pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("pseudo-remainder by zero polynomial");
  if (a.degree() < b.degree()) return a;
  const long delta = a.degree() - b.degree();
  const BigInt& lb = b.leading();
  std::vector<BigInt> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  for (long top = a.degree(); top >= b.degree(); --top) {
    const auto t = static_cast<std::size_t>(top);
    BigInt lr = r[t];
    const std::size_t shift = t - db;
    for (auto& c : r) c *= lb;
    if (lr != 0) {
      for (std::size_t i = 0; i <= db; ++i) r[shift + i] -= lr * bc[i];
    }
  }
  IntPoly rem(std::move(r));
  if (lb < 0 && (delta + 1) % 2 == 1) rem = -rem;
  return rem;
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  IntPoly out = p.exact_div(p.content());
  if (out.leading() < 0) out = -out;
  return out;
}

IntPoly poly_gcd(IntPoly a, IntPoly b) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  a = primitive_part(a);
  b = primitive_part(b);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = positive_pseudo_remainder(a, b);
    a = std::move(b);
    b = r.is_zero() ? r : primitive_part(r);
  }
  return primitive_part(a);
}

IntPoly exact_quotient(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.degree() < b.degree()) {
    if (a.is_zero()) return {};
    throw std::domain_error("inexact polynomial quotient");
  }
  std::vector<BigInt> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  std::vector<BigInt> q(r.size() - db);
  for (long top = a.degree(); top >= b.degree(); --top) {
    const auto t = static_cast<std::size_t>(top);
    if (r[t] == 0) continue;
    if (!mpz_divisible_p(r[t].get_mpz_t(), b.leading().get_mpz_t())) {
      throw std::domain_error("inexact polynomial quotient");
    }
    BigInt c;
    mpz_divexact(c.get_mpz_t(), r[t].get_mpz_t(), b.leading().get_mpz_t());
    const std::size_t shift = t - db;
    q[shift] = c;
    for (std::size_t i = 0; i <= db; ++i) r[shift + i] -= c * bc[i];
  }
  for (const auto& c : r)
    if (c != 0) throw std::domain_error("inexact polynomial quotient");
  return IntPoly(std::move(q));
}

SturmSequence::SturmSequence(const IntPoly& p) {
  if (p.is_zero()) throw std::domain_error("Sturm sequence of the zero polynomial");
  chain_.push_back(primitive_part(p));
  IntPoly d = p.derivative();
  if (d.is_zero()) return;
  chain_.push_back(primitive_part(d));
  while (true) {
    const IntPoly& a = chain_[chain_.size() - 2];
    const IntPoly& b = chain_.back();
    IntPoly r = positive_pseudo_remainder(a, b);
    if (r.is_zero()) break;
    // Positive scaling keeps the sign pattern; the chain uses -rem.
    IntPoly next = r.exact_div(r.content());
    chain_.push_back(-next);
  }
}

namespace {
int count_variations(const std::vector<int>& signs) {
  int v = 0;
  int prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}
}  // namespace

int SturmSequence::variations_at(const Rational& x) const {
  std::vector<int> signs;
  signs.reserve(chain_.size());
  for (const auto& q : chain_) signs.push_back(q.sign_at(x));
  return count_variations(signs);
}

int SturmSequence::variations_at_plus_infinity() const {
  std::vector<int> signs;
  for (const auto& q : chain_) signs.push_back(sgn(q.leading()));
  return count_variations(signs);
}

int SturmSequence::variations_at_minus_infinity() const {
  std::vector<int> signs;
  for (const auto& q : chain_) {
    int s = sgn(q.leading());
    if (q.degree() % 2 == 1) s = -s;
    signs.push_back(s);
  }
  return count_variations(signs);
}

std::size_t SturmSequence::count_distinct_real_roots() const {
  return static_cast<std::size_t>(variations_at_minus_infinity() - variations_at_plus_infinity());
}

std::size_t SturmSequence::count_in(const Rational& a, const Rational& b) const {
  if (b < a) return 0;
  return static_cast<std::size_t>(variations_at(a) - variations_at(b));
}

std::size_t count_real_roots_with_multiplicity(const IntPoly& p) {
  if (p.is_zero()) throw std::domain_error("root count of the zero polynomial");
  std::size_t total = 0;
  IntPoly g = p;
  while (g.degree() > 0) {
    total += SturmSequence(g).count_distinct_real_roots();
    g = poly_gcd(g, g.derivative());
  }
  return total;
}

}  // namespace relpoly
