#include "relpoly/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "relpoly/sturm.hpp"

namespace relpoly {

namespace {

constexpr double two_pi = 2 * std::numbers::pi;
constexpr double start_offset = 0.7;

bool finite(double v) { return std::isfinite(v); }
bool finite(const Real& v) { return v.is_finite(); }
bool finite(const ComplexD& z) { return finite(z.re) && finite(z.im); }
bool finite(const ComplexR& z) { return finite(z.re) && finite(z.im); }

double log2_abs(const BigInt& c) {
  if (c == 0) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpz_get_d_2exp(&e, c.get_mpz_t());
  return static_cast<double>(e) + std::log2(std::fabs(m));
}

struct Start {
  double log2_radius;
  double angle;
};

// Points on circles whose radii come from the upper convex hull of
// (i, log2 |a_i|).
std::vector<Start> polygon_starts(const std::vector<double>& lg) {
  const std::size_t d = lg.size() - 1;
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i <= d; ++i) {
    if (!std::isfinite(lg[i])) continue;
    while (hull.size() >= 2) {
      std::size_t a = hull[hull.size() - 2], b = hull.back();
      double lhs = (lg[b] - lg[a]) * static_cast<double>(i - a);
      double rhs = (lg[i] - lg[a]) * static_cast<double>(b - a);
      if (lhs <= rhs) hull.pop_back();
      else break;
    }
    hull.push_back(i);
  }
  std::vector<Start> out;
  out.reserve(d);
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    std::size_t count = hull[k + 1] - hull[k];
    double lr = (lg[hull[k]] - lg[hull[k + 1]]) / static_cast<double>(count);
    for (std::size_t j = 0; j < count; ++j) {
      double angle = two_pi * static_cast<double>(j) / static_cast<double>(count) +
                     two_pi * static_cast<double>(hull[k]) / static_cast<double>(d) + start_offset;
      out.push_back({lr, angle});
    }
  }
  return out;
}

template <class T>
struct Problem {
  std::vector<T> a;
  std::vector<T> abs_a;
  std::size_t degree() const { return a.size() - 1; }
};

template <class T>
struct Eval {
  bool exact_zero = false;
  Complex<T> ratio;  // p'(z) / p(z)
  T backward;        // |p(z)| / sum |a_i| |z|^i
};

template <class T>
Eval<T> evaluate(const Problem<T>& P, const Complex<T>& z) {
  const std::size_t d = P.degree();
  T zero = P.a[0] * 0.0;
  T r = abs(z);
  Eval<T> e{false, Complex<T>(zero, zero), zero};
  if (!(r > 1.0)) {
    Complex<T> p(P.a[d], zero), dp(zero, zero);
    T s = P.abs_a[d];
    for (std::size_t i = d; i-- > 0;) {
      dp = dp * z + p;
      p = p * z;
      p.re += P.a[i];
      s = s * r + P.abs_a[i];
    }
    if (p.re == zero && p.im == zero) {
      e.exact_zero = true;
      return e;
    }
    e.backward = abs(p) / s;
    e.ratio = dp / p;
    return e;
  }
  Complex<T> one(zero + 1.0, zero);
  Complex<T> y = one / z;
  T ry = zero + 1.0;
  ry /= r;
  Complex<T> q(P.a[0], zero), dq(zero, zero);
  T s = P.abs_a[0];
  for (std::size_t i = 1; i <= d; ++i) {
    dq = dq * y + q;
    q = q * y;
    q.re += P.a[i];
    s = s * ry + P.abs_a[i];
  }
  if (q.re == zero && q.im == zero) {
    e.exact_zero = true;
    return e;
  }
  e.backward = abs(q) / s;
  Complex<T> t = y * (dq / q);
  Complex<T> dd(zero + static_cast<double>(d), zero);
  e.ratio = y * (dd - t);
  return e;
}

template <class T>
struct AberthResult {
  int iterations = 0;
  bool converged = false;
  std::size_t unconverged = 0;
  double worst_backward = 0;
};

// A root freezes once its backward error is at most mu. With step_tol > 0 the
// Aberth step must also be below step_tol * max(1, |z|), which keeps two
// approximations from settling on the same simple root.
template <class T>
AberthResult<T> aberth(const Problem<T>& P, std::vector<Complex<T>>& z, double mu, int max_iter,
                       double step_tol = 0) {
  const std::size_t d = z.size();
  std::vector<char> done(d, 0);
  AberthResult<T> res;
  T zero = P.a[0] * 0.0;
  Complex<T> one(zero + 1.0, zero);
  for (int it = 1; it <= max_iter; ++it) {
    res.iterations = it;
    bool all = true;
    std::size_t open = 0;
    double worst = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (done[i]) continue;
      Eval<T> e = evaluate(P, z[i]);
      if (e.exact_zero) {
        done[i] = 1;
        continue;
      }
      const bool small = finite(e.backward) && !(e.backward > mu);
      if (small && step_tol <= 0) {
        done[i] = 1;
        continue;
      }
      Complex<T> S(zero, zero);
      for (std::size_t j = 0; j < d; ++j) {
        if (j == i) continue;
        Complex<T> diff = z[i] - z[j];
        T nd = diff.re * diff.re + diff.im * diff.im;
        if (nd == zero) continue;
        S.re += diff.re / nd;
        S.im -= diff.im / nd;
      }
      Complex<T> den = e.ratio - S;
      if (den.re == zero && den.im == zero) continue;
      Complex<T> w = one / den;
      if (small && to_double(abs(w)) <= step_tol * std::max(1.0, to_double(abs(z[i])))) {
        done[i] = 1;
        continue;
      }
      all = false;
      ++open;
      worst = std::max(worst, to_double(e.backward));
      Complex<T> next = z[i] - w;
      if (!finite(next)) {
        double ang = two_pi * static_cast<double>(i) / static_cast<double>(d) + start_offset + it;
        next = Complex<T>(zero + std::cos(ang), zero + std::sin(ang));
      }
      z[i] = std::move(next);
    }
    res.unconverged = open;
    res.worst_backward = worst;
    if (all) {
      res.converged = true;
      res.unconverged = 0;
      return res;
    }
  }
  return res;
}

// Multiprecision Aberth sweep on raw mpfr_t storage. Same iteration as
// aberth() above, written without temporaries so a sweep does not allocate.
class MpAberth {
 public:
  MpAberth(const IntPoly& g, long bits) : bits_(bits), d_(static_cast<std::size_t>(g.degree())) {
    const auto& c = g.coeffs();
    a_.resize(d_ + 1);
    abs_a_.resize(d_ + 1);
    for (std::size_t i = 0; i <= d_; ++i) {
      mpfr_init2(&a_[i], bits);
      mpfr_set_z(&a_[i], c[i].get_mpz_t(), MPFR_RNDN);
      mpfr_init2(&abs_a_[i], bits);
      mpfr_abs(&abs_a_[i], &a_[i], MPFR_RNDN);
    }
    zr_.resize(d_);
    zi_.resize(d_);
    for (std::size_t i = 0; i < d_; ++i) {
      mpfr_init2(&zr_[i], bits);
      mpfr_init2(&zi_[i], bits);
    }
    for (mpfr_ptr t : temps()) mpfr_init2(t, bits);
  }
  ~MpAberth() {
    for (auto& v : a_) mpfr_clear(&v);
    for (auto& v : abs_a_) mpfr_clear(&v);
    for (auto& v : zr_) mpfr_clear(&v);
    for (auto& v : zi_) mpfr_clear(&v);
    for (mpfr_ptr t : temps()) mpfr_clear(t);
  }
  MpAberth(const MpAberth&) = delete;
  MpAberth& operator=(const MpAberth&) = delete;

  void load(const std::vector<ComplexR>& z) {
    for (std::size_t i = 0; i < d_; ++i) {
      mpfr_set(&zr_[i], z[i].re.get(), MPFR_RNDN);
      mpfr_set(&zi_[i], z[i].im.get(), MPFR_RNDN);
    }
  }
  void store(std::vector<ComplexR>& z) const {
    z.clear();
    for (std::size_t i = 0; i < d_; ++i) {
      Real re(bits_), im(bits_);
      mpfr_set(re.get(), &zr_[i], MPFR_RNDN);
      mpfr_set(im.get(), &zi_[i], MPFR_RNDN);
      z.emplace_back(std::move(re), std::move(im));
    }
  }

  AberthResult<Real> run(double mu, int max_iter, double step_tol) {
    std::vector<char> done(d_, 0);
    AberthResult<Real> res;
    for (int it = 1; it <= max_iter; ++it) {
      res.iterations = it;
      std::size_t open = 0;
      double worst = 0;
      for (std::size_t i = 0; i < d_; ++i) {
        if (done[i]) continue;
        if (!ratio(i)) {
          done[i] = 1;
          continue;
        }
        const double be = mpfr_get_d(be_, MPFR_RNDN);
        const bool small = std::isfinite(be) && be <= mu;
        // S = sum_j 1 / (z_i - z_j)
        mpfr_set_zero(sr_, 1);
        mpfr_set_zero(si_, 1);
        for (std::size_t j = 0; j < d_; ++j) {
          if (j == i) continue;
          mpfr_sub(t1_, &zr_[i], &zr_[j], MPFR_RNDN);
          mpfr_sub(t2_, &zi_[i], &zi_[j], MPFR_RNDN);
          mpfr_fmma(t3_, t1_, t1_, t2_, t2_, MPFR_RNDN);
          if (mpfr_zero_p(t3_)) continue;
          mpfr_div(t1_, t1_, t3_, MPFR_RNDN);
          mpfr_div(t2_, t2_, t3_, MPFR_RNDN);
          mpfr_add(sr_, sr_, t1_, MPFR_RNDN);
          mpfr_sub(si_, si_, t2_, MPFR_RNDN);
        }
        // w = 1 / (ratio - S)
        mpfr_sub(t1_, rr_, sr_, MPFR_RNDN);
        mpfr_sub(t2_, ri_, si_, MPFR_RNDN);
        mpfr_fmma(t3_, t1_, t1_, t2_, t2_, MPFR_RNDN);
        if (mpfr_zero_p(t3_)) continue;
        mpfr_div(wr_, t1_, t3_, MPFR_RNDN);
        mpfr_div(wi_, t2_, t3_, MPFR_RNDN);
        mpfr_neg(wi_, wi_, MPFR_RNDN);
        if (small) {
          mpfr_hypot(t1_, wr_, wi_, MPFR_RNDN);
          mpfr_hypot(t2_, &zr_[i], &zi_[i], MPFR_RNDN);
          double step = mpfr_get_d(t1_, MPFR_RNDN);
          double mod = mpfr_get_d(t2_, MPFR_RNDN);
          if (step_tol <= 0 || step <= step_tol * std::max(1.0, mod)) {
            done[i] = 1;
            continue;
          }
        }
        ++open;
        worst = std::max(worst, be);
        mpfr_sub(t1_, &zr_[i], wr_, MPFR_RNDN);
        mpfr_sub(t2_, &zi_[i], wi_, MPFR_RNDN);
        if (mpfr_number_p(t1_) && mpfr_number_p(t2_)) {
          mpfr_swap(&zr_[i], t1_);
          mpfr_swap(&zi_[i], t2_);
        } else {
          double ang = two_pi * static_cast<double>(i) / static_cast<double>(d_) + start_offset + it;
          mpfr_set_d(&zr_[i], std::cos(ang), MPFR_RNDN);
          mpfr_set_d(&zi_[i], std::sin(ang), MPFR_RNDN);
        }
      }
      res.unconverged = open;
      res.worst_backward = worst;
      if (open == 0) {
        res.converged = true;
        return res;
      }
    }
    return res;
  }

 private:
  std::vector<mpfr_ptr> temps() {
    return {pr_, pi_, dr_, di_, s_, r_, yr_, yi_, rr_, ri_, be_, sr_, si_, wr_, wi_, t1_, t2_, t3_, t4_};
  }

  // x <- x * (zr + i zi) + (ar + i ai)
  void mul_add(mpfr_ptr xr, mpfr_ptr xi, mpfr_srcptr zr, mpfr_srcptr zi, mpfr_srcptr ar, mpfr_srcptr ai) {
    mpfr_fmms(t3_, xr, zr, xi, zi, MPFR_RNDN);
    mpfr_fmma(t4_, xr, zi, xi, zr, MPFR_RNDN);
    if (ar) mpfr_add(xr, t3_, ar, MPFR_RNDN);
    else mpfr_set(xr, t3_, MPFR_RNDN);
    if (ai) mpfr_add(xi, t4_, ai, MPFR_RNDN);
    else mpfr_set(xi, t4_, MPFR_RNDN);
  }

  // Sets (rr_, ri_) = p'/p at z_i and be_ = backward error; false on an exact zero.
  bool ratio(std::size_t i) {
    mpfr_srcptr zr = &zr_[i];
    mpfr_srcptr zi = &zi_[i];
    mpfr_hypot(r_, zr, zi, MPFR_RNDN);
    mpfr_set_zero(dr_, 1);
    mpfr_set_zero(di_, 1);
    if (mpfr_cmp_ui(r_, 1) <= 0) {
      mpfr_set(pr_, &a_[d_], MPFR_RNDN);
      mpfr_set_zero(pi_, 1);
      mpfr_set(s_, &abs_a_[d_], MPFR_RNDN);
      for (std::size_t k = d_; k-- > 0;) {
        mul_add(dr_, di_, zr, zi, pr_, pi_);
        mul_add(pr_, pi_, zr, zi, &a_[k], nullptr);
        mpfr_fma(s_, s_, r_, &abs_a_[k], MPFR_RNDN);
      }
      if (mpfr_zero_p(pr_) && mpfr_zero_p(pi_)) return false;
      mpfr_hypot(t1_, pr_, pi_, MPFR_RNDN);
      mpfr_div(be_, t1_, s_, MPFR_RNDN);
      complex_div(rr_, ri_, dr_, di_, pr_, pi_);
      return true;
    }
    // y = 1/z, q(y) = y^d p(1/y); p'/p = y (d - y q'/q)
    mpfr_sqr(t1_, r_, MPFR_RNDN);
    mpfr_div(yr_, zr, t1_, MPFR_RNDN);
    mpfr_div(yi_, zi, t1_, MPFR_RNDN);
    mpfr_neg(yi_, yi_, MPFR_RNDN);
    mpfr_ui_div(t2_, 1, r_, MPFR_RNDN);  // |y|
    mpfr_set(pr_, &a_[0], MPFR_RNDN);
    mpfr_set_zero(pi_, 1);
    mpfr_set(s_, &abs_a_[0], MPFR_RNDN);
    for (std::size_t k = 1; k <= d_; ++k) {
      mul_add(dr_, di_, yr_, yi_, pr_, pi_);
      mul_add(pr_, pi_, yr_, yi_, &a_[k], nullptr);
      mpfr_fma(s_, s_, t2_, &abs_a_[k], MPFR_RNDN);
    }
    if (mpfr_zero_p(pr_) && mpfr_zero_p(pi_)) return false;
    mpfr_hypot(t1_, pr_, pi_, MPFR_RNDN);
    mpfr_div(be_, t1_, s_, MPFR_RNDN);
    complex_div(rr_, ri_, dr_, di_, pr_, pi_);  // q'/q
    mul_add(rr_, ri_, yr_, yi_, nullptr, nullptr);  // y q'/q
    mpfr_ui_sub(rr_, static_cast<unsigned long>(d_), rr_, MPFR_RNDN);
    mpfr_neg(ri_, ri_, MPFR_RNDN);
    mul_add(rr_, ri_, yr_, yi_, nullptr, nullptr);
    return true;
  }

  // (outr + i outi) = (ar + i ai) / (br + i bi); outputs must not alias inputs.
  void complex_div(mpfr_ptr outr, mpfr_ptr outi, mpfr_srcptr ar, mpfr_srcptr ai, mpfr_srcptr br, mpfr_srcptr bi) {
    mpfr_fmma(t1_, br, br, bi, bi, MPFR_RNDN);
    mpfr_fmma(outr, ar, br, ai, bi, MPFR_RNDN);
    mpfr_fmms(outi, ai, br, ar, bi, MPFR_RNDN);
    mpfr_div(outr, outr, t1_, MPFR_RNDN);
    mpfr_div(outi, outi, t1_, MPFR_RNDN);
  }

  long bits_;
  std::size_t d_;
  std::vector<__mpfr_struct> a_, abs_a_, zr_, zi_;
  mpfr_t pr_, pi_, dr_, di_, s_, r_, yr_, yi_, rr_, ri_, be_, sr_, si_, wr_, wi_, t1_, t2_, t3_, t4_;
};

// Scaled double coefficients, or nothing when the dynamic range does not fit.
std::optional<Problem<double>> double_problem(const IntPoly& f, const std::vector<double>& lg) {
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (double v : lg) {
    if (!std::isfinite(v)) continue;
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  if (hi - lo > 1000) return std::nullopt;
  long shift = static_cast<long>(std::ceil(hi));
  Problem<double> P;
  for (const auto& c : f.coeffs()) {
    long e = 0;
    double m = mpz_get_d_2exp(&e, c.get_mpz_t());
    double v = std::ldexp(m, static_cast<int>(e - shift));
    P.a.push_back(v);
    P.abs_a.push_back(std::fabs(v));
  }
  return P;
}

Problem<Real> real_problem(const IntPoly& f, long bits) {
  Problem<Real> P;
  for (const auto& c : f.coeffs()) {
    P.a.emplace_back(c, bits);
    P.abs_a.push_back(abs(P.a.back()));
  }
  return P;
}

double unit_roundoff(long bits) { return std::ldexp(1.0, static_cast<int>(-bits)); }

// Step bound for freezing at `bits` precision; loose enough for roots of
// multiplicity up to about 8, whose approximations only settle to u^(1/m).
double mp_step_tol(long bits) { return std::ldexp(1.0, static_cast<int>(-bits / 8)); }

std::vector<ComplexR> real_starts(const std::vector<Start>& starts, long bits) {
  std::vector<ComplexR> z;
  z.reserve(starts.size());
  for (const auto& s : starts) {
    double ip = std::floor(s.log2_radius);
    Real r = ldexp(Real(std::exp2(s.log2_radius - ip), bits), static_cast<long>(ip));
    z.emplace_back(r * std::cos(s.angle), r * std::sin(s.angle));
  }
  return z;
}

struct Approximation {
  std::vector<ComplexR> z;
  int double_iterations = 0;
  int mp_iterations = 0;
  bool used_double = false;
  AberthResult<Real> mp;
};

// Aberth in double first when possible, then at `bits` precision.
Approximation approximate(const IntPoly& g, long bits, int max_iter) {
  Approximation out;
  const std::size_t d = static_cast<std::size_t>(g.degree());
  std::vector<double> lg;
  lg.reserve(d + 1);
  for (const auto& c : g.coeffs()) lg.push_back(log2_abs(c));
  auto starts = polygon_starts(lg);

  if (auto dp = double_problem(g, lg)) {
    std::vector<ComplexD> z;
    z.reserve(d);
    for (const auto& s : starts) {
      double r = std::exp2(s.log2_radius);
      z.push_back({r * std::cos(s.angle), r * std::sin(s.angle)});
    }
    bool ok = std::all_of(z.begin(), z.end(), [](const ComplexD& w) { return finite(w); });
    if (ok) {
      auto res = aberth(*dp, z, 4.0 * static_cast<double>(d + 1) * unit_roundoff(53), std::min(max_iter, 500), 1e-8);
      out.double_iterations = res.iterations;
      out.used_double = true;
      out.z.reserve(d);
      for (const auto& w : z) out.z.push_back(to_real(w, bits));
    }
  }
  if (!out.used_double) out.z = real_starts(starts, bits);

  MpAberth kernel(g, bits);
  kernel.load(out.z);
  out.mp = kernel.run(4.0 * static_cast<double>(d + 1) * unit_roundoff(bits), max_iter, mp_step_tol(bits));
  kernel.store(out.z);
  out.mp_iterations = out.mp.iterations;
  return out;
}

bool root_less(const ComplexR& a, const ComplexR& b) {
  double ar = a.re.to_double(), br = b.re.to_double();
  if (ar != br) return ar < br;
  double ai = a.im.to_double(), bi = b.im.to_double();
  if (ai != bi) return ai < bi;
  if (!(a.re == b.re)) return a.re < b.re;
  return a.im < b.im;
}

double cluster_radius(const ComplexD& z, double tol) {
  return std::sqrt(tol) * std::max(1.0, std::hypot(z.re, z.im));
}

std::vector<RootCluster> detect_clusters(const std::vector<ComplexR>& roots, double tol) {
  const std::size_t n = roots.size();
  std::vector<ComplexD> zd;
  zd.reserve(n);
  for (const auto& z : roots) zd.push_back(to_double(z));
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double dist = std::hypot(zd[i].re - zd[j].re, zd[i].im - zd[j].im);
      if (dist <= cluster_radius(zd[i], tol)) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<RootCluster> out;
  for (auto& g : groups) {
    if (g.size() < 2) continue;
    ComplexD c{0, 0};
    for (auto i : g) c = c + zd[i];
    c = c * (1.0 / static_cast<double>(g.size()));
    out.push_back({std::move(g), c});
  }
  std::sort(out.begin(), out.end(),
            [](const RootCluster& a, const RootCluster& b) { return a.members.front() < b.members.front(); });
  return out;
}

}  // namespace

std::vector<ComplexD> initial_approximations(const std::vector<double>& log2_abs_coeffs) {
  if (log2_abs_coeffs.size() < 2) return {};
  std::vector<ComplexD> out;
  for (const auto& s : polygon_starts(log2_abs_coeffs)) {
    double r = std::exp2(s.log2_radius);
    out.push_back({r * std::cos(s.angle), r * std::sin(s.angle)});
  }
  return out;
}

double RootSet::allowed_residual(std::size_t i) const {
  for (const auto& c : clusters) {
    if (std::find(c.members.begin(), c.members.end(), i) != c.members.end()) return std::sqrt(tolerance);
  }
  return tolerance;
}

Real relative_residual(const IntPoly& f, const ComplexR& z) {
  long bits = std::max(z.re.precision(), z.im.precision());
  if (f.is_zero()) throw std::domain_error("residual of the zero polynomial");
  if (f.degree() == 0) return Real(1.0, bits);
  Problem<Real> P = real_problem(f, bits);
  Eval<Real> e = evaluate(P, to_real(z, bits));
  if (e.exact_zero) return Real(0.0, bits);
  return e.backward;
}

bool is_real_root(const ComplexR& z, double imag_tolerance) {
  double scale = std::max(1.0, std::hypot(z.re.to_double(), z.im.to_double()));
  return std::fabs(z.im.to_double()) <= imag_tolerance * scale;
}

RootSet find_roots(const IntPoly& f, const RootOptions& opts) {
  if (f.is_zero()) throw std::domain_error("find_roots: zero polynomial");
  if (opts.precision_bits < 53) throw std::invalid_argument("find_roots: precision below 53 bits");
  if (!(opts.tolerance > 0 && opts.tolerance < 1)) throw std::invalid_argument("find_roots: tolerance must lie in (0,1)");

  const long bits = opts.precision_bits;
  RootSet rs;
  rs.precision_bits = bits;
  rs.tolerance = opts.tolerance;
  auto [g, zeros] = f.strip_zero_roots();
  rs.zero_multiplicity = zeros;

  std::vector<ComplexR> nonzero;
  std::vector<double> nonzero_res;
  if (g.degree() > 0) {
    Approximation ap = approximate(g, bits, opts.max_iterations);
    rs.double_iterations = ap.double_iterations;
    rs.mp_iterations = ap.mp_iterations;
    rs.used_double_stage = ap.used_double;
    if (!ap.mp.converged) {
      std::ostringstream msg;
      msg << "find_roots: Aberth iteration did not converge after " << ap.mp.iterations << " sweeps at " << bits
          << " bits; " << ap.mp.unconverged << " of " << g.degree()
          << " approximations unconverged, worst backward error " << ap.mp.worst_backward;
      throw RootFindingError(msg.str());
    }

    // Newton polish at doubled precision for isolated approximations.
    const long bits2 = 2 * bits;
    Problem<Real> P2 = real_problem(g, bits2);
    std::vector<ComplexD> zd;
    for (const auto& z : ap.z) zd.push_back(to_double(z));
    for (std::size_t i = 0; i < ap.z.size(); ++i) {
      bool isolated = true;
      for (std::size_t j = 0; j < ap.z.size() && isolated; ++j) {
        if (j == i) continue;
        double dist = std::hypot(zd[i].re - zd[j].re, zd[i].im - zd[j].im);
        if (dist <= cluster_radius(zd[i], opts.tolerance)) isolated = false;
      }
      if (!isolated) continue;
      ComplexR z2 = to_real(ap.z[i], bits2);
      Eval<Real> e = evaluate(P2, z2);
      for (int step = 0; step < 3 && !e.exact_zero; ++step) {
        Complex<Real> one(Real(1.0, bits2), Real(0.0, bits2));
        ComplexR cand = z2 - one / e.ratio;
        if (!finite(cand)) break;
        Eval<Real> ec = evaluate(P2, cand);
        if (!ec.exact_zero && !(ec.backward < e.backward)) break;
        z2 = std::move(cand);
        e = std::move(ec);
      }
      ap.z[i] = to_real(z2, bits);
    }
    for (auto& z : ap.z) {
      Eval<Real> e = evaluate(P2, to_real(z, bits2));
      nonzero_res.push_back(e.exact_zero ? 0.0 : e.backward.to_double());
      nonzero.push_back(std::move(z));
    }
  }

  std::vector<ComplexR> all;
  std::vector<double> res;
  for (std::size_t k = 0; k < zeros; ++k) {
    all.emplace_back(Real(0.0, bits), Real(0.0, bits));
    res.push_back(0.0);
  }
  for (std::size_t i = 0; i < nonzero.size(); ++i) {
    all.push_back(nonzero[i]);
    res.push_back(nonzero_res[i]);
  }
  std::vector<std::size_t> idx(all.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return root_less(all[a], all[b]); });
  for (auto i : idx) {
    rs.roots.push_back(all[i]);
    rs.residuals.push_back(res[i]);
  }
  rs.clusters = detect_clusters(rs.roots, opts.tolerance);

  for (std::size_t i = 0; i < rs.roots.size(); ++i) {
    if (!finite(rs.roots[i]) || !(rs.residuals[i] <= rs.allowed_residual(i))) {
      std::ostringstream msg;
      msg << "find_roots: root " << i << " (" << rs.roots[i].re.to_string(17) << ", " << rs.roots[i].im.to_string(17)
          << ") has relative residual " << rs.residuals[i] << " above the contract " << rs.allowed_residual(i);
      throw RootFindingError(msg.str());
    }
  }
  return rs;
}

std::vector<ComplexD> approximate_roots(const IntPoly& f) {
  if (f.is_zero()) throw std::domain_error("approximate_roots: zero polynomial");
  auto [g, zeros] = f.strip_zero_roots();
  std::vector<ComplexD> out(zeros, ComplexD{0.0, 0.0});
  if (g.degree() <= 0) return out;
  const std::size_t d = static_cast<std::size_t>(g.degree());
  std::vector<double> lg;
  for (const auto& c : g.coeffs()) lg.push_back(log2_abs(c));
  auto starts = polygon_starts(lg);
  if (auto dp = double_problem(g, lg)) {
    std::vector<ComplexD> z;
    for (const auto& s : starts) {
      double r = std::exp2(s.log2_radius);
      z.push_back({r * std::cos(s.angle), r * std::sin(s.angle)});
    }
    aberth(*dp, z, 4.0 * static_cast<double>(d + 1) * unit_roundoff(53), 500, 1e-8);
    out.insert(out.end(), z.begin(), z.end());
    return out;
  }
  Approximation ap = approximate(g, 128, 2000);
  for (const auto& z : ap.z) out.push_back(to_double(z));
  return out;
}

NonrealCertificate has_nonreal_root(const IntPoly& f, const RootOptions& opts) {
  NonrealCertificate cert;
  cert.degree = static_cast<std::size_t>(std::max(0L, f.degree()));
  cert.roots = find_roots(f, opts);
  for (const auto& z : cert.roots.roots)
    if (is_real_root(z, opts.imag_tolerance)) ++cert.numeric_real_count;
  cert.exact_real_count = f.degree() > 0 ? count_real_roots_with_multiplicity(f) : 0;

  if (cert.numeric_real_count != cert.exact_real_count) {
    std::ostringstream msg;
    msg << "numeric real count " << cert.numeric_real_count << " disagrees with exact Sturm count "
        << cert.exact_real_count;
    cert.diagnostic = msg.str();
    cert.verdict = NonrealVerdict::inconclusive;
    return cert;
  }
  if (cert.exact_real_count == cert.degree) {
    cert.verdict = NonrealVerdict::all_real;
    return cert;
  }
  const auto& roots = cert.roots.roots;
  for (std::size_t i = 0; i < roots.size() && !cert.witness; ++i) {
    const auto& z = roots[i];
    if (is_real_root(z, opts.imag_tolerance) || z.im.sign() <= 0) continue;
    ComplexD zc = conj(to_double(z));
    double scale = std::max(1.0, std::hypot(zc.re, zc.im));
    double match = std::max(opts.imag_tolerance, std::sqrt(opts.tolerance)) * scale;
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (j == i) continue;
      ComplexD w = to_double(roots[j]);
      if (std::hypot(w.re - zc.re, w.im - zc.im) <= match) {
        cert.witness = z;
        break;
      }
    }
  }
  if (cert.witness) {
    cert.verdict = NonrealVerdict::nonreal;
  } else {
    cert.verdict = NonrealVerdict::inconclusive;
    cert.diagnostic = "exact count shows nonreal roots but no conjugate-paired witness was found";
  }
  return cert;
}

NewtonCheck newton_inequality_check(const CForm& f, const GraphStats& stats) {
  const std::size_t n = f.order;
  if (n < 3) throw std::invalid_argument("newton_inequality_check: order must be at least 3");
  if (f.coeff(n) == 0) throw std::invalid_argument("newton_inequality_check: c_n = 0 (disconnected graph)");
  if (f.coeff(1) == 0) throw std::invalid_argument("newton_inequality_check: c_1 = 0");
  if (stats.order != n) throw std::invalid_argument("newton_inequality_check: stats order does not match");
  NewtonCheck out;
  out.lhs = make_rational(f.coeff(n - 1), f.coeff(n)) * make_rational(f.coeff(2), f.coeff(1));
  out.rhs = Rational(BigInt((n - 1) * (n - 1)));
  out.identity = make_rational(BigInt(static_cast<unsigned long>((n - stats.cut_nodes) * stats.size)),
                               BigInt(static_cast<unsigned long>(n)));
  out.violated = out.lhs < out.rhs;
  out.identity_holds = out.lhs == out.identity;
  return out;
}

int sign_at(const CForm& f, const Rational& p) { return sgn(cform_eval(f, p)); }

RationalInterval isolate_real_root(const CForm& f, Rational lo, Rational hi, const Rational& width) {
  if (!(lo < hi)) throw std::invalid_argument("isolate_real_root: need lo < hi");
  if (width <= 0) throw std::invalid_argument("isolate_real_root: width must be positive");
  int slo = sign_at(f, lo);
  int shi = sign_at(f, hi);
  const Rational span = hi - lo;
  for (int k = 4; slo == 0 && k < 200; ++k) {
    Rational cand = lo + span / Rational(BigInt(1) << k);
    if (int s = sign_at(f, cand); s != 0) {
      lo = cand;
      slo = s;
    }
  }
  for (int k = 4; shi == 0 && k < 200; ++k) {
    Rational cand = hi - span / Rational(BigInt(1) << k);
    if (int s = sign_at(f, cand); s != 0) {
      hi = cand;
      shi = s;
    }
  }
  if (slo == 0 || shi == 0 || slo == shi) {
    throw std::invalid_argument("isolate_real_root: endpoint signs do not differ");
  }
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    int s = sign_at(f, mid);
    if (s == 0) return {mid, mid};
    if (s == slo) lo = mid;
    else hi = mid;
  }
  return {lo, hi};
}

CycleRootCertificate cycle_root_certificate(std::size_t n) {
  if (n < 2) throw std::invalid_argument("cycle_root_certificate: n must be at least 2");
  CycleRootCertificate c;
  c.n = n;
  c.cycle_order = 2 * n + 1;
  CForm f = cycle_cform(c.cycle_order);
  BigInt two_n2 = BigInt(2) * BigInt(static_cast<unsigned long>(n)) * BigInt(static_cast<unsigned long>(n));
  c.lo = Rational(two_n2 - 1);
  c.hi = Rational(two_n2);
  c.value_lo = cform_eval(f, c.lo);
  c.value_hi = cform_eval(f, c.hi);
  if (!(c.value_lo < 0 && c.value_hi > 0)) {
    throw std::logic_error("cycle_root_certificate: endpoint signs are not (-, +)");
  }
  c.isolated = isolate_real_root(f, c.lo, c.hi, Rational(1, 1 << 20));
  return c;
}

}  // namespace relpoly
