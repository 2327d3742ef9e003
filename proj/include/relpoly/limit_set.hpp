#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "relpoly/complex.hpp"
#include "relpoly/poly.hpp"
#include "relpoly/roots.hpp"

namespace relpoly {

struct SimpleTerm {
  IntPoly alpha;
  IntPoly lambda;
};

/// alpha1 lambda^n + n alpha2 lambda^(n-1)
struct RepeatedTerm {
  IntPoly alpha1;
  IntPoly alpha2;
  IntPoly lambda;
};

class FamilyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t max_family_terms = 8;

/// f_n = sum alpha_i lambda_i^n plus repeated terms. Term index i runs over
/// the simple terms first, then the repeated ones.
class ExpFamily {
 public:
  /// Throws FamilyError on a zero alpha or lambda, more than 8 terms, or two
  /// lambdas that differ by a unimodular constant.
  ExpFamily(std::vector<SimpleTerm> simple, std::vector<RepeatedTerm> repeated, std::string name = "");

  const std::vector<SimpleTerm>& simple() const { return simple_; }
  const std::vector<RepeatedTerm>& repeated() const { return repeated_; }
  std::size_t term_count() const { return simple_.size() + repeated_.size(); }
  const IntPoly& lambda(std::size_t i) const;
  const std::string& name() const { return name_; }

  IntPoly evaluate(std::size_t n) const;

 private:
  std::vector<SimpleTerm> simple_;
  std::vector<RepeatedTerm> repeated_;
  std::string name_;
};

/// alpha1 = x(x-1)^2, lambda1 = x+1; alpha2 = x^2, lambda2 = x;
/// repeated alpha31 = -x^2, alpha32 = -x(x-1), lambda3 = 1.
ExpFamily pnv_family();

enum class LimitCase { case_i, case_ii, not_a_limit, boundary_tolerance };

std::string to_string(LimitCase c);

struct TermValues {
  double modulus = 0;  // |lambda_i(z)|
  ComplexD alpha1;
  std::optional<ComplexD> alpha2;  // repeated terms only
};

struct LimitVerdict {
  LimitCase classification = LimitCase::not_a_limit;
  std::vector<std::size_t> dominant;
  std::vector<TermValues> terms;
};

struct BkwOptions {
  /// Relative gap below which two moduli tie (and relative size below which
  /// an alpha vanishes). Gaps between tol and sqrt(tol) are reported as
  /// boundary-tolerance.
  double tolerance = 1e-9;
  long precision_bits = 128;
};

LimitVerdict bkw_classify(const ExpFamily& fam, const ComplexR& z, const BkwOptions& opts = {});
LimitVerdict bkw_classify(const ExpFamily& fam, const ComplexD& z, const BkwOptions& opts = {});

enum class CurvePiece { line, shifted_circle, unit_circle };

/// Distance to the union of: Re z = -1/2 with |z| >= 1; |z+1| = 1 with
/// Re z >= -1/2; |z| = 1 with Re z <= -1/2.
double pnv_curve_distance(const ComplexD& z);
double curve_piece_distance(CurvePiece piece, const ComplexD& z);

/// `count` points spread along one piece, at least `margin` away from the
/// junctions -1/2 +- i sqrt(3)/2. The line piece is cut at |Im z| <= max_im.
std::vector<ComplexD> sample_curve_piece(CurvePiece piece, std::size_t count, double margin = 1e-3,
                                         double max_im = 3.0);

/// Uniform points in |z| <= radius at least `min_distance` from the curve and
/// from z = 1, by rejection from a seeded stream.
std::vector<ComplexD> sample_off_curve(std::size_t count, double min_distance, double radius = 3.0,
                                       std::uint64_t seed = 1);

class Region {
 public:
  static Region box(double re_min, double re_max, double im_min, double im_max);
  static Region annulus(ComplexD center, double r_min, double r_max);

  bool contains(const ComplexD& z) const;
  bool empty() const;
  std::string describe() const;

 private:
  enum class Kind { box, annulus };
  Kind kind_ = Kind::box;
  double a_ = 0, b_ = 0, c_ = 0, d_ = 0;
  ComplexD center_{0, 0};
};

struct ConvergenceOptions {
  RootOptions roots;
  /// Roots within this distance of 0 or 1 are excluded.
  double exclusion_radius = 1e-6;
  unsigned threads = 1;
};

struct ConvergenceRow {
  std::size_t n = 0;
  std::vector<ComplexD> roots;
  std::vector<double> distances;
  double max_distance = 0;
  double mean_distance = 0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  /// True when each max distance is at most the previous one plus `noise`.
  bool max_non_increasing(double noise = 1e-3) const;
};

ConvergenceReport convergence_report(std::span<const std::size_t> n_values, const Region& region,
                                     const ConvergenceOptions& opts = {});

}  // namespace relpoly
