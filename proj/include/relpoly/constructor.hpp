#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "relpoly/complex.hpp"
#include "relpoly/graph.hpp"
#include "relpoly/poly.hpp"

namespace relpoly {

struct SearchLimits {
  /// Phase 1 scans every root of C(P_n+v) for n = 1..n_max.
  std::size_t n_max = 400;
  std::size_t m_max = 128;
  /// Phase 2 continues n_max+1..n_far, following a single root per m by
  /// Newton iteration from (target+1)^m - 1.
  std::size_t n_far = 20000;
  std::size_t m_far_max = 8;
  long precision_bits = 256;
};

class ConstructorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Root x of C((P_n+v)*K_m), i.e. (x+1)^m - 1 = w for a root w of C(P_n+v).
struct RootCertificate {
  std::string label;  // "(P37+v)*K9", or "K1" for the trivial root 0
  std::size_t n = 0;
  std::size_t m = 1;
  ComplexD target;
  ComplexR achieved;        // x, or p = x/(1+x) for node reliability targets
  ComplexR connected_root;  // x
  ComplexR w;
  Real residual{0.0, 64};  // relative residual of x in C((P_n+v)*K_m)
  double error = 0;       // |target - achieved|
  double eps = 0;
  double connected_eps = 0;  // Lipschitz window around the connected target (nrel only)
  double arg_offset = 0;     // |arg(x+1) - arg(x_t+1)|, x_t the connected target
  unsigned branch = 0;       // x+1 = |w+1|^(1/m) exp(i (arg(w+1) + 2 pi branch) / m)
  int phase = 0;             // 0 trivial, 1 scan, 2 continuation
  bool nrel = false;

  std::size_t order() const { return (n + 1) * m; }
};

/// All n roots of C(P_n+v;x)/x in double precision, from Aberth iteration on
/// the closed form f_n = x^(n+2) - x^2 - n x (x-1) + x (x-1)^2 (x+1)^n.
/// Cached; roots for n are continued from those for n-1 up to n = 1000.
std::vector<ComplexD> pnv_roots_double(std::size_t n);

/// Newton polish of a root of C(P_n+v;x)/x on the closed form.
ComplexR polish_pnv_root(std::size_t n, const ComplexD& w, long bits);

/// |C(P_n+v;q)| / C(P_n+v;Q) with q = (x+1)^m - 1 and Q = (1+|x|)^m - 1, the
/// relative residual of x in C((P_n+v)*K_m).
Real lex_pnv_residual(std::size_t n, std::size_t m, const ComplexR& x);

RootCertificate target_connected_root(const ComplexD& target, double eps, const SearchLimits& limits = {});
RootCertificate target_nrel_root(const ComplexD& target, double eps, const SearchLimits& limits = {});

/// (P_n+v)*K_m with the certificate label.
Graph materialize(const RootCertificate& cert);

struct RationalRoot {
  Graph graph;  // (a-b)K2 u (2b-a)K1
  Rational root;
  CForm nrel;
  bool exact_zero = false;  // cform_eval(nrel, a/b) == 0
};

/// Throws std::invalid_argument unless 1 <= b <= a <= 2b.
RationalRoot rational_nrel_root(unsigned long a, unsigned long b);

struct RealRootedUnion {
  Graph graph;  // K3 u kK2
  IntPoly cpoly;
  BigInt discriminant;  // of the quadratic factor, (k-3)(k+1)
  bool all_real = false;
};

RealRootedUnion real_rooted_disconnected(std::size_t k);

/// C(P_n u K_n) = C(P_n) + (x+1)^n - 1.
IntPoly path_union_complete_cpoly(std::size_t n);

}  // namespace relpoly
