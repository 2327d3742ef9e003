#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relpoly/complex.hpp"
#include "relpoly/graph.hpp"
#include "relpoly/poly.hpp"

namespace relpoly {

struct RootOptions {
  long precision_bits = default_precision_bits;
  /// Relative residual contract |f(r)| / sum |a_i| |r|^i.
  double tolerance = 1e-12;
  /// |Im r| <= imag_tolerance * max(1, |r|) classifies r as real.
  double imag_tolerance = 1e-8;
  int max_iterations = 2000;
};

struct RootCluster {
  std::vector<std::size_t> members;  // indices into RootSet::roots
  ComplexD center;
};

struct RootSet {
  std::vector<ComplexR> roots;  // sorted by real part, then imaginary part
  std::vector<double> residuals;
  long precision_bits = default_precision_bits;
  double tolerance = 0;
  std::size_t zero_multiplicity = 0;  // exact roots at 0, stripped before iterating
  int double_iterations = 0;
  int mp_iterations = 0;
  bool used_double_stage = false;
  std::vector<RootCluster> clusters;

  std::size_t size() const { return roots.size(); }
  /// Residual bound that applies to root i (relaxed inside clusters).
  double allowed_residual(std::size_t i) const;
};

class RootFindingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RootSet find_roots(const IntPoly& f, const RootOptions& opts = {});

/// Double-precision Aberth iteration only, capped at 500 sweeps; no polishing
/// and no contract, so ill-conditioned roots may be far off. Falls back to a
/// multiprecision run when the coefficients do not fit in double range.
std::vector<ComplexD> approximate_roots(const IntPoly& f);

/// Starting points for simultaneous iteration from log2 |a_i| (lowest power
/// first, -inf for zero coefficients): circles whose radii come from the upper
/// convex hull of (i, log2 |a_i|), with a fixed angular offset.
std::vector<ComplexD> initial_approximations(const std::vector<double>& log2_abs_coeffs);

/// |f(z)| / sum |a_i| |z|^i evaluated at the precision of z.
Real relative_residual(const IntPoly& f, const ComplexR& z);

bool is_real_root(const ComplexR& z, double imag_tolerance);

enum class NonrealVerdict { nonreal, all_real, inconclusive };

struct NonrealCertificate {
  NonrealVerdict verdict = NonrealVerdict::inconclusive;
  std::optional<ComplexR> witness;  // Im > 0, conjugate also present
  std::size_t degree = 0;
  std::size_t exact_real_count = 0;    // Sturm, with multiplicity
  std::size_t numeric_real_count = 0;  // roots within the imaginary tolerance
  RootSet roots;
  std::string diagnostic;

  bool has_nonreal() const { return verdict == NonrealVerdict::nonreal; }
};

NonrealCertificate has_nonreal_root(const IntPoly& f, const RootOptions& opts = {});

struct NewtonCheck {
  Rational lhs;       // (c_{n-1}/c_n)(c_2/c_1)
  Rational rhs;       // (n-1)^2
  Rational identity;  // (n-t) m / n from graph statistics
  bool violated = false;
  bool identity_holds = false;
};

NewtonCheck newton_inequality_check(const CForm& f, const GraphStats& stats);

int sign_at(const CForm& f, const Rational& p);

struct RationalInterval {
  Rational lo;
  Rational hi;
};

/// Bisection on exact signs. Endpoints that are themselves roots are moved
/// inward until the sign is nonzero.
RationalInterval isolate_real_root(const CForm& f, Rational lo, Rational hi, const Rational& width);

struct CycleRootCertificate {
  std::size_t n = 0;
  std::size_t cycle_order = 0;  // 2n+1
  Rational lo;                  // 2n^2 - 1
  Rational hi;                  // 2n^2
  Rational value_lo;
  Rational value_hi;
  RationalInterval isolated;
};

CycleRootCertificate cycle_root_certificate(std::size_t n);

}  // namespace relpoly
