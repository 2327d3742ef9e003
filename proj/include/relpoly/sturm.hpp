#pragma once

#include <cstddef>
#include <vector>

#include "relpoly/poly.hpp"

namespace relpoly {

/// Pseudo-remainder scaled by |lc(b)|^(deg a - deg b + 1), so its sign pattern
/// matches the true remainder over Q.
IntPoly positive_pseudo_remainder(const IntPoly& a, const IntPoly& b);

/// Primitive part with positive leading coefficient.
IntPoly primitive_part(const IntPoly& p);

/// Greatest common divisor in Z[x], normalized by primitive_part.
IntPoly poly_gcd(IntPoly a, IntPoly b);

/// Exact quotient a / b; throws if b does not divide a over Z.
IntPoly exact_quotient(const IntPoly& a, const IntPoly& b);

/// Sturm chain p, p', -rem(...), ... kept primitive. Counts distinct real
/// roots, also for non-squarefree p.
class SturmSequence {
 public:
  explicit SturmSequence(const IntPoly& p);

  int variations_at(const Rational& x) const;
  int variations_at_plus_infinity() const;
  int variations_at_minus_infinity() const;

  std::size_t count_distinct_real_roots() const;
  /// Distinct roots in the half-open interval (a, b].
  std::size_t count_in(const Rational& a, const Rational& b) const;

  const std::vector<IntPoly>& chain() const { return chain_; }

 private:
  std::vector<IntPoly> chain_;
};

/// Real roots counted with multiplicity: sum over j of the distinct real roots
/// of g_j, where g_0 = p and g_{j+1} = gcd(g_j, g_j').
std::size_t count_real_roots_with_multiplicity(const IntPoly& p);

}  // namespace relpoly
