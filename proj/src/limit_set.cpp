#include "relpoly/limit_set.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

namespace relpoly {

namespace {

constexpr double pi = std::numbers::pi;
const double half_sqrt3 = std::sqrt(3.0) / 2;

ComplexR horner(const IntPoly& p, const ComplexR& z, long bits) {
  ComplexR acc(Real(0.0, bits), Real(0.0, bits));
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * z;
    acc.re += Real(c[i], bits);
  }
  return acc;
}

Real abs_horner(const IntPoly& p, const Real& r, long bits) {
  Real acc(0.0, bits);
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * r;
    acc += abs(Real(c[i], bits));
  }
  return acc;
}

// Proportional with a constant of modulus one means p = q or p = -q for
// integer polynomials.
bool unimodular_multiple(const IntPoly& p, const IntPoly& q) { return p == q || p == -q; }

double relative_gap(const Real& a, const Real& b) {
  Real m = a > b ? a : b;
  if (m.is_zero()) return 0.0;
  return (abs(a - b) / m).to_double();
}

enum class Vanish { yes, no, band };

Vanish vanishes(const IntPoly& alpha, const ComplexR& z, const Real& r, long bits, double tol) {
  Real v = abs(horner(alpha, z, bits));
  Real scale = abs_horner(alpha, r, bits);
  if (scale.is_zero()) return Vanish::yes;
  double rel = (v / scale).to_double();
  if (rel <= tol) return Vanish::yes;
  if (rel <= std::sqrt(tol)) return Vanish::band;
  return Vanish::no;
}

double point_distance(const ComplexD& a, const ComplexD& b) { return std::hypot(a.re - b.re, a.im - b.im); }

double arc_distance(const ComplexD& z, const ComplexD& center, double lo, double hi) {
  ComplexD w{z.re - center.re, z.im - center.im};
  double r = std::hypot(w.re, w.im);
  double phi = std::atan2(w.im, w.re);
  auto in_range = [&](double a) {
    for (double shift : {-2 * pi, 0.0, 2 * pi})
      if (a + shift >= lo && a + shift <= hi) return true;
    return false;
  };
  if (r > 0 && in_range(phi)) return std::fabs(r - 1.0);
  ComplexD e1{center.re + std::cos(lo), center.im + std::sin(lo)};
  ComplexD e2{center.re + std::cos(hi), center.im + std::sin(hi)};
  return std::min(point_distance(z, e1), point_distance(z, e2));
}

}  // namespace

ExpFamily::ExpFamily(std::vector<SimpleTerm> simple, std::vector<RepeatedTerm> repeated, std::string name)
    : simple_(std::move(simple)), repeated_(std::move(repeated)), name_(std::move(name)) {
  if (term_count() == 0) throw FamilyError("family needs at least one term");
  if (term_count() > max_family_terms) throw FamilyError("family has more than 8 terms");
  for (const auto& t : simple_) {
    if (t.alpha.is_zero()) throw FamilyError("alpha is identically zero");
    if (t.lambda.is_zero()) throw FamilyError("lambda is identically zero");
  }
  for (const auto& t : repeated_) {
    if (t.alpha1.is_zero() || t.alpha2.is_zero()) throw FamilyError("alpha is identically zero");
    if (t.lambda.is_zero()) throw FamilyError("lambda is identically zero");
  }
  // Sample points screen out most pairs; the exact test decides.
  const ComplexD samples[] = {{0.3, 0.7}, {-1.1, 0.4}, {2.3, -1.9}, {-0.2, -2.6}};
  for (std::size_t i = 0; i < term_count(); ++i) {
    for (std::size_t j = i + 1; j < term_count(); ++j) {
      bool constant_modulus = true;
      for (const auto& s : samples) {
        ComplexR z = to_real(s, 64);
        Real a = abs(horner(lambda(i), z, 64));
        Real b = abs(horner(lambda(j), z, 64));
        if (relative_gap(a, b) > 1e-12) {
          constant_modulus = false;
          break;
        }
      }
      if (constant_modulus && unimodular_multiple(lambda(i), lambda(j))) {
        std::ostringstream msg;
        msg << "lambda_" << i + 1 << " and lambda_" << j + 1 << " differ by a unimodular constant";
        throw FamilyError(msg.str());
      }
    }
  }
}

const IntPoly& ExpFamily::lambda(std::size_t i) const {
  if (i < simple_.size()) return simple_[i].lambda;
  return repeated_.at(i - simple_.size()).lambda;
}

IntPoly ExpFamily::evaluate(std::size_t n) const {
  IntPoly out;
  for (const auto& t : simple_) out += t.alpha * t.lambda.pow(n);
  for (const auto& t : repeated_) {
    out += t.alpha1 * t.lambda.pow(n);
    if (n > 0) out += t.alpha2 * t.lambda.pow(n - 1) * BigInt(static_cast<unsigned long>(n));
  }
  return out;
}

ExpFamily pnv_family() {
  IntPoly x = IntPoly::monomial(1);
  IntPoly xm1{-1, 1};
  std::vector<SimpleTerm> simple{
      {x * xm1 * xm1, IntPoly{1, 1}},
      {x * x, x},
  };
  std::vector<RepeatedTerm> repeated{{-(x * x), -(x * xm1), IntPoly::constant(1)}};
  return ExpFamily(std::move(simple), std::move(repeated), "P_n+v");
}

std::string to_string(LimitCase c) {
  switch (c) {
    case LimitCase::case_i: return "case-i";
    case LimitCase::case_ii: return "case-ii";
    case LimitCase::not_a_limit: return "not-a-limit";
    case LimitCase::boundary_tolerance: return "boundary-tolerance";
  }
  return "unknown";
}

LimitVerdict bkw_classify(const ExpFamily& fam, const ComplexR& z_in, const BkwOptions& opts) {
  const long bits = opts.precision_bits;
  const double tol = opts.tolerance;
  const double band = std::sqrt(tol);
  ComplexR z = to_real(z_in, bits);
  Real r = abs(z);
  const std::size_t k = fam.term_count();

  std::vector<Real> mods;
  LimitVerdict v;
  for (std::size_t i = 0; i < k; ++i) {
    mods.push_back(abs(horner(fam.lambda(i), z, bits)));
    TermValues tv;
    tv.modulus = mods.back().to_double();
    if (i < fam.simple().size()) {
      tv.alpha1 = to_double(horner(fam.simple()[i].alpha, z, bits));
    } else {
      const auto& t = fam.repeated()[i - fam.simple().size()];
      tv.alpha1 = to_double(horner(t.alpha1, z, bits));
      tv.alpha2 = to_double(horner(t.alpha2, z, bits));
    }
    v.terms.push_back(tv);
  }
  Real top = mods[0];
  for (const auto& m : mods)
    if (m > top) top = m;

  bool ambiguous = false;
  for (std::size_t i = 0; i < k; ++i) {
    double gap = relative_gap(mods[i], top);
    if (gap <= tol) v.dominant.push_back(i);
    else if (gap <= band) ambiguous = true;
  }
  if (ambiguous) {
    v.classification = LimitCase::boundary_tolerance;
    return v;
  }
  if (v.dominant.size() >= 2) {
    v.classification = LimitCase::case_i;
    return v;
  }
  const std::size_t j = v.dominant.front();
  std::vector<const IntPoly*> alphas;
  if (j < fam.simple().size()) {
    alphas.push_back(&fam.simple()[j].alpha);
  } else {
    const auto& t = fam.repeated()[j - fam.simple().size()];
    alphas.push_back(&t.alpha1);
    alphas.push_back(&t.alpha2);
  }
  bool in_band = false;
  for (const IntPoly* a : alphas) {
    Vanish s = vanishes(*a, z, r, bits, tol);
    if (s == Vanish::yes) {
      v.classification = LimitCase::case_ii;
      return v;
    }
    if (s == Vanish::band) in_band = true;
  }
  v.classification = in_band ? LimitCase::boundary_tolerance : LimitCase::not_a_limit;
  return v;
}

LimitVerdict bkw_classify(const ExpFamily& fam, const ComplexD& z, const BkwOptions& opts) {
  return bkw_classify(fam, to_real(z, opts.precision_bits), opts);
}

double curve_piece_distance(CurvePiece piece, const ComplexD& z) {
  switch (piece) {
    case CurvePiece::line: {
      double dx = std::fabs(z.re + 0.5);
      double ay = std::fabs(z.im);
      double dy = ay >= half_sqrt3 ? 0.0 : half_sqrt3 - ay;
      return std::hypot(dx, dy);
    }
    case CurvePiece::shifted_circle:
      return arc_distance(z, {-1.0, 0.0}, -pi / 3, pi / 3);
    case CurvePiece::unit_circle:
      return arc_distance(z, {0.0, 0.0}, 2 * pi / 3, 4 * pi / 3);
  }
  return 0.0;
}

double pnv_curve_distance(const ComplexD& z) {
  return std::min({curve_piece_distance(CurvePiece::line, z), curve_piece_distance(CurvePiece::shifted_circle, z),
                   curve_piece_distance(CurvePiece::unit_circle, z)});
}

std::vector<ComplexD> sample_curve_piece(CurvePiece piece, std::size_t count, double margin, double max_im) {
  std::vector<ComplexD> out;
  out.reserve(count);
  if (count == 0) return out;
  auto frac = [&](std::size_t i) { return (static_cast<double>(i) + 0.5) / static_cast<double>(count); };
  switch (piece) {
    case CurvePiece::line: {
      // Alternate between the upper and lower half-lines.
      double lo = half_sqrt3 + margin;
      std::size_t upper = (count + 1) / 2;
      std::size_t lower = count - upper;
      for (std::size_t i = 0; i < upper; ++i)
        out.push_back({-0.5, lo + (max_im - lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(upper)});
      for (std::size_t i = 0; i < lower; ++i)
        out.push_back({-0.5, -(lo + (max_im - lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(lower))});
      break;
    }
    case CurvePiece::shifted_circle: {
      double lo = -pi / 3 + margin, hi = pi / 3 - margin;
      for (std::size_t i = 0; i < count; ++i) {
        double phi = lo + (hi - lo) * frac(i);
        out.push_back({-1.0 + std::cos(phi), std::sin(phi)});
      }
      break;
    }
    case CurvePiece::unit_circle: {
      double lo = 2 * pi / 3 + margin, hi = 4 * pi / 3 - margin;
      for (std::size_t i = 0; i < count; ++i) {
        double phi = lo + (hi - lo) * frac(i);
        out.push_back({std::cos(phi), std::sin(phi)});
      }
      break;
    }
  }
  return out;
}

std::vector<ComplexD> sample_off_curve(std::size_t count, double min_distance, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-radius, radius);
  std::vector<ComplexD> out;
  while (out.size() < count) {
    const ComplexD z{coord(rng), coord(rng)};
    if (abs(z) > radius) continue;
    if (pnv_curve_distance(z) < min_distance || abs(z - 1.0) < min_distance) continue;
    out.push_back(z);
  }
  return out;
}

Region Region::box(double re_min, double re_max, double im_min, double im_max) {
  Region r;
  r.kind_ = Kind::box;
  r.a_ = re_min;
  r.b_ = re_max;
  r.c_ = im_min;
  r.d_ = im_max;
  return r;
}

Region Region::annulus(ComplexD center, double r_min, double r_max) {
  Region r;
  r.kind_ = Kind::annulus;
  r.center_ = center;
  r.a_ = r_min;
  r.b_ = r_max;
  return r;
}

bool Region::contains(const ComplexD& z) const {
  if (kind_ == Kind::box) return z.re >= a_ && z.re <= b_ && z.im >= c_ && z.im <= d_;
  double r = point_distance(z, center_);
  return r >= a_ && r <= b_;
}

bool Region::empty() const {
  if (kind_ == Kind::box) return !(a_ <= b_ && c_ <= d_);
  return !(a_ <= b_ && b_ >= 0);
}

std::string Region::describe() const {
  std::ostringstream s;
  if (kind_ == Kind::box) {
    s << "box re[" << a_ << "," << b_ << "] im[" << c_ << "," << d_ << "]";
  } else {
    s << "annulus " << a_ << "<=|z-(" << center_.re << "," << center_.im << ")|<=" << b_;
  }
  return s.str();
}

bool ConvergenceReport::max_non_increasing(double noise) const {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].max_distance > rows[i - 1].max_distance + noise) return false;
  return true;
}

ConvergenceReport convergence_report(std::span<const std::size_t> n_values, const Region& region,
                                     const ConvergenceOptions& opts) {
  for (std::size_t i = 1; i < n_values.size(); ++i)
    if (n_values[i] <= n_values[i - 1]) throw std::invalid_argument("convergence_report: n values must increase");
  for (auto n : n_values)
    if (n == 0) throw std::invalid_argument("convergence_report: n must be at least 1");
  ConvergenceReport report;
  if (region.empty()) return report;

  report.rows.resize(n_values.size());
  auto solve = [&](std::size_t idx) {
    ConvergenceRow& row = report.rows[idx];
    row.n = n_values[idx];
    RootSet rs = find_roots(family_fn(row.n), opts.roots);
    double sum = 0;
    for (const auto& zr : rs.roots) {
      ComplexD z = to_double(zr);
      if (point_distance(z, {0, 0}) <= opts.exclusion_radius) continue;
      if (point_distance(z, {1, 0}) <= opts.exclusion_radius) continue;
      if (!region.contains(z)) continue;
      double d = pnv_curve_distance(z);
      row.roots.push_back(z);
      row.distances.push_back(d);
      row.max_distance = std::max(row.max_distance, d);
      sum += d;
    }
    if (!row.distances.empty()) row.mean_distance = sum / static_cast<double>(row.distances.size());
  };

  unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(n_values.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < n_values.size(); ++i) solve(i);
    return report;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n_values.size(); i = next++) {
        try {
          solve(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return report;
}

}  // namespace relpoly
