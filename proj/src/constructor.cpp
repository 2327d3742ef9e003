#include "relpoly/constructor.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>

#include "relpoly/roots.hpp"

namespace relpoly {

namespace {

using Cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

struct ClosedFormRatio {
  Cd ratio;  // h'/h for h = C(P_n+v;w)/w
  double backward = 0;
  bool exact = false;
};

// f_n = T1 + T2 + T3 with T1 = w^(n+2), T2 = w (w-1)^2 (w+1)^n,
// T3 = -w^2 - n w (w-1); all scaled by exp(-s) to stay in range.
std::optional<ClosedFormRatio> pnv_ratio(std::size_t n, Cd w) {
  if (w == 0.0 || w == 1.0 || w == -1.0) return std::nullopt;
  const double nn = static_cast<double>(n);
  const Cd lw = std::log(w), lwm = std::log(w - 1.0), lwp = std::log(w + 1.0);
  const Cd l1 = (nn + 2.0) * lw;
  const Cd l2 = lw + 2.0 * lwm + nn * lwp;
  const Cd t3 = -w * w - nn * w * (w - 1.0);
  double s = std::max(l1.real(), l2.real());
  if (std::abs(t3) > 0) s = std::max(s, std::log(std::abs(t3)));
  const Cd e1 = std::exp(l1 - s), e2 = std::exp(l2 - s);
  const double scale = std::exp(-s);
  const Cd e3 = t3 * scale;
  const Cd d1 = e1 * (nn + 2.0) / w;
  const Cd d2 = e2 * (1.0 / w + 2.0 / (w - 1.0) + nn / (w + 1.0));
  const Cd d3 = (-2.0 * w - nn * (2.0 * w - 1.0)) * scale;
  const Cd f = e1 + e2 + e3;
  ClosedFormRatio out;
  const double mag = std::abs(e1) + std::abs(e2) + std::abs(e3);
  if (f == 0.0 || !(mag > 0)) {
    out.exact = f == 0.0;
    out.backward = 0;
    return out;
  }
  out.backward = std::abs(f) / mag;
  out.ratio = (d1 + d2 + d3) / f - 1.0 / w - 2.0 / (w - 1.0);
  return out;
}

std::vector<double> pnv_log2_coeffs(std::size_t n) {
  // h(w) = sum_{j=0}^{n} a_j w^j, a_j = (n-j) + binom(n, j) for j < n, a_n = 1.
  std::vector<double> out(n + 1);
  const double nn = static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double jj = static_cast<double>(j);
    const double lb = (std::lgamma(nn + 1) - std::lgamma(jj + 1) - std::lgamma(nn - jj + 1)) / std::log(2.0);
    const double extra = nn - jj;
    out[j] = lb + std::log2(1.0 + extra / std::exp2(lb));
  }
  out[n] = 0;
  return out;
}

bool aberth_pnv(std::size_t n, std::vector<Cd>& z, int max_sweeps) {
  std::vector<char> done(z.size(), 0);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    std::size_t open = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (done[i]) continue;
      const auto r = pnv_ratio(n, z[i]);
      if (!r) {
        z[i] += Cd(1e-7, 1e-7);
        ++open;
        continue;
      }
      if (r->exact) {
        done[i] = 1;
        continue;
      }
      Cd sum = 0;
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      const Cd step = 1.0 / (r->ratio - sum);
      const double scale = std::max(1.0, std::abs(z[i]));
      z[i] -= step;
      if ((r->backward <= 1e-11 && std::abs(step) <= 1e-10 * scale) || std::abs(step) <= 1e-15 * scale) {
        done[i] = 1;
      } else {
        ++open;
      }
    }
    if (open == 0) return true;
  }
  return false;
}

// Warm start from the roots for n-1 plus one point beyond the outermost root;
// cold start from the coefficient polygon when that fails.
std::vector<ComplexD> solve_pnv(std::size_t n, const std::vector<ComplexD>* previous) {
  std::vector<Cd> z;
  bool ok = false;
  if (previous && previous->size() + 1 == n) {
    Cd outer = 0;
    for (const auto& v : *previous) {
      z.emplace_back(v.re, v.im);
      if (std::abs(to_std(v)) > std::abs(outer)) outer = to_std(v);
    }
    z.push_back(outer == 0.0 ? Cd(-2.0, 0.1) : outer * Cd(1.05, 0.05));
    ok = aberth_pnv(n, z, 60);
  }
  if (!ok) {
    z.clear();
    for (const auto& s : initial_approximations(pnv_log2_coeffs(n))) z.emplace_back(s.re, s.im);
    aberth_pnv(n, z, 500);
  }
  std::vector<ComplexD> out;
  out.reserve(z.size());
  for (const auto& v : z) out.push_back(from_std(v));
  return out;
}

std::optional<Cd> newton_pnv(std::size_t n, Cd w) {
  for (int it = 0; it < 80; ++it) {
    const auto r = pnv_ratio(n, w);
    if (!r) return std::nullopt;
    if (r->exact) return w;
    const Cd step = 1.0 / r->ratio;
    w -= step;
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return std::nullopt;
    if (std::abs(step) <= 1e-13 * std::max(1.0, std::abs(w))) return w;
  }
  return std::nullopt;
}

double wrap_angle(double a) {
  a = std::remainder(a, 2 * pi);
  return a;
}

// Nearest branch of (w+1)^(1/m) to argument theta; ties go to the smaller
// argument in (-pi, pi].
struct Branch {
  unsigned k = 0;
  double phi = 0;
  double offset = 0;
};

Branch choose_branch(double arg_w1, std::size_t m, double theta) {
  const double md = static_cast<double>(m);
  const double t = (theta * md - arg_w1) / (2 * pi);
  const long k0 = static_cast<long>(std::floor(t));
  Branch best;
  bool have = false;
  for (long k = k0 - 1; k <= k0 + 2; ++k) {
    long kk = k % static_cast<long>(m);
    if (kk < 0) kk += static_cast<long>(m);
    double phi = wrap_angle((arg_w1 + 2 * pi * static_cast<double>(kk)) / md);
    if (phi <= -pi) phi += 2 * pi;
    const double off = std::abs(wrap_angle(phi - theta));
    if (!have || off < best.offset - 1e-15 || (std::abs(off - best.offset) <= 1e-15 && phi < best.phi)) {
      best = {static_cast<unsigned>(kk), phi, off};
      have = true;
    }
  }
  return best;
}

struct Candidate {
  std::size_t n = 0;
  std::size_t m = 0;
  double error = 0;
  ComplexD w;
  int phase = 1;
};

std::mutex cache_mutex;
std::map<std::size_t, std::vector<ComplexD>>& root_cache() {
  static std::map<std::size_t, std::vector<ComplexD>> cache;
  return cache;
}

std::string label_for(std::size_t n, std::size_t m) {
  return "(P" + std::to_string(n) + "+v)*K" + std::to_string(m);
}

ComplexR branch_root(const ComplexR& w, std::size_t m, unsigned k, long bits) {
  const ComplexR w1 = w + 1.0;
  const Real lr = log(abs(w1));
  const Real a = atan2(w1.im, w1.re);
  const Real twopi = Real::pi(bits) * 2.0;
  Real phi = (a + twopi * static_cast<double>(k)) / static_cast<double>(m);
  if (phi > Real::pi(bits)) phi -= twopi;
  const Real rho = exp(lr / static_cast<double>(m));
  return ComplexR(rho * cos(phi), rho * sin(phi)) - 1.0;
}

// Error model of a search: distance to the connected target x_t, or for
// node reliability targets |x/(1+x) - p_t| = |x - x_t| / (|1+x| |1+x_t|).
struct Goal {
  ComplexD x_target;
  ComplexD target;  // the caller's target
  double r = 0;
  double theta = 0;
  double eps = 0;
  bool nrel = false;

  double error(const ComplexD& x, double rho) const {
    const double d = abs(x - x_target);
    return nrel ? d / (rho * r) : d;
  }
  // Necessary condition on rho = |x+1| for error < limit.
  bool modulus_possible(double rho, double limit) const {
    return std::abs(rho - r) < (nrel ? limit * rho * r : limit);
  }
};

Goal make_goal(const ComplexD& x_target, const ComplexD& target, double eps, bool nrel) {
  Goal g;
  g.x_target = x_target;
  g.target = target;
  g.r = abs(x_target + 1.0);
  g.theta = std::atan2(x_target.im, x_target.re + 1.0);
  g.eps = eps;
  g.nrel = nrel;
  return g;
}

// Exact-parameter check of one candidate at multiprecision. Returns a filled
// certificate when the polished root still meets the eps window.
std::optional<RootCertificate> verify_candidate(const Candidate& c, const Goal& goal, const SearchLimits& limits) {
  const long bits = limits.precision_bits;
  const ComplexR w = polish_pnv_root(c.n, c.w, bits);
  const ComplexD wd = to_double(w);
  const Branch br = choose_branch(std::atan2(wd.im, wd.re + 1.0), c.m, goal.theta);
  const ComplexR x = branch_root(w, c.m, br.k, bits);
  RootCertificate cert;
  cert.achieved = x;
  if (goal.nrel) cert.achieved = x / ComplexR(x.re + 1.0, x.im);
  const double err = abs(to_double(cert.achieved) - goal.target);
  if (!(err < goal.eps)) return std::nullopt;
  const Real res = lex_pnv_residual(c.n, c.m, to_real(x, 2 * bits));
  if (!(res.to_double() <= 1e-9)) return std::nullopt;
  const ComplexD xd = to_double(x);
  cert.label = label_for(c.n, c.m);
  cert.n = c.n;
  cert.m = c.m;
  cert.target = goal.target;
  cert.connected_root = x;
  cert.w = w;
  cert.residual = res.with_precision(64);
  cert.error = err;
  cert.eps = goal.eps;
  cert.connected_eps = goal.eps;
  cert.arg_offset = std::abs(wrap_angle(std::atan2(xd.im, xd.re + 1.0) - goal.theta));
  cert.branch = br.k;
  cert.phase = c.phase;
  cert.nrel = goal.nrel;
  return cert;
}

void scan_roots(std::size_t n, const std::vector<ComplexD>& roots, const Goal& goal, std::size_t m_max,
                std::vector<Candidate>& hits, double& best_error) {
  for (const auto& w : roots) {
    const double lw = std::log(abs(w + 1.0));
    if (!std::isfinite(lw)) continue;
    const double aw = std::atan2(w.im, w.re + 1.0);
    for (std::size_t m = 1; m <= m_max; ++m) {
      const double rho = std::exp(lw / static_cast<double>(m));
      if (!goal.modulus_possible(rho, std::max(goal.eps, best_error))) continue;
      const Branch br = choose_branch(aw, m, goal.theta);
      const ComplexD x{rho * std::cos(br.phi) - 1.0, rho * std::sin(br.phi)};
      const double err = goal.error(x, rho);
      best_error = std::min(best_error, err);
      if (err < goal.eps) hits.push_back({n, m, err, w, 1});
    }
  }
}

void sort_hits(std::vector<Candidate>& hits) {
  std::sort(hits.begin(), hits.end(), [](const Candidate& a, const Candidate& b) {
    if (a.m != b.m) return a.m < b.m;
    if (a.error != b.error) return a.error < b.error;
    if (a.w.re != b.w.re) return a.w.re < b.w.re;
    return a.w.im < b.w.im;
  });
}

}  // namespace

std::vector<ComplexD> pnv_roots_double(std::size_t n) {
  if (n == 0) return {};
  constexpr std::size_t chain_limit = 1000;
  std::lock_guard lock(cache_mutex);
  auto& cache = root_cache();
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  if (n > chain_limit) return solve_pnv(n, nullptr);
  // Roots for n are always derived from those for n-1, so the result does not
  // depend on which sizes were requested before.
  std::size_t k = n;
  while (k > 1 && !cache.count(k - 1)) --k;
  for (; k <= n; ++k) {
    const auto prev = cache.find(k - 1);
    cache.emplace(k, solve_pnv(k, prev == cache.end() ? nullptr : &prev->second));
  }
  return cache.at(n);
}

ComplexR polish_pnv_root(std::size_t n, const ComplexD& w0, long bits) {
  ComplexR w = to_real(w0, bits);
  const double nn = static_cast<double>(n);
  const Real tol = ldexp(Real(1.0, bits), -(bits - 24));
  for (int it = 0; it < 100; ++it) {
    const ComplexR wm = w - 1.0;
    const ComplexR wp = w + 1.0;
    const ComplexR pn1 = ipow(w, n + 1);
    const ComplexR qn1 = ipow(wp, n - 1);
    const ComplexR qn = qn1 * wp;
    const ComplexR f = pn1 * w - w * w - w * wm * nn + w * wm * wm * qn;
    const ComplexR fp = pn1 * (nn + 2.0) - w * 2.0 - (w * 2.0 - 1.0) * nn +
                        qn1 * (wp * (wm * wm + w * wm * 2.0) + w * wm * wm * nn);
    if (f.re.is_zero() && f.im.is_zero()) break;
    const ComplexR one(Real(1.0, bits), Real(0.0, bits));
    const ComplexR ratio = fp / f - one / w - one / wm * 2.0;
    const ComplexR step = one / ratio;
    w -= step;
    Real scale = abs(w);
    if (scale < 1.0) scale = Real(1.0, bits);
    if (abs(step) <= tol * scale) break;
  }
  return w;
}

Real lex_pnv_residual(std::size_t n, std::size_t m, const ComplexR& x) {
  const long bits = x.re.precision();
  const ComplexR q = ipow(ComplexR(x.re + 1.0, x.im), m) - 1.0;
  Real qa = abs(x) + 1.0;
  Real Q = qa;
  for (std::size_t i = 1; i < m; ++i) Q *= qa;
  Q = Q - 1.0;
  // C(P_n+v;y) = sum_{k=1}^{n} (n-k+1) y^k + y (y+1)^n
  ComplexR acc(Real(1.0, bits), Real(0.0, bits));
  Real racc(1.0, bits);
  for (std::size_t k = n; k-- > 1;) {
    acc = acc * q + static_cast<double>(n - k + 1);
    racc = racc * Q + static_cast<double>(n - k + 1);
  }
  acc = acc * q + q * ipow(ComplexR(q.re + 1.0, q.im), n);
  Real qp = Q + 1.0;
  Real qpow(1.0, bits);
  for (std::size_t i = 0; i < n; ++i) qpow *= qp;
  racc = racc * Q + Q * qpow;
  if (n == 0) {
    acc = q;
    racc = Q;
  }
  if (racc.is_zero()) return Real(0.0, bits);
  return abs(acc) / racc;
}

namespace {

RootCertificate search(const Goal& goal, const SearchLimits& limits) {
  double best_error = std::numeric_limits<double>::infinity();
  std::size_t best_n = 0, best_m = 0;

  // Phase 1: exhaustive scan in ascending n.
  for (std::size_t n = 1; n <= limits.n_max; ++n) {
    std::vector<Candidate> hits;
    const double before = best_error;
    scan_roots(n, pnv_roots_double(n), goal, limits.m_max, hits, best_error);
    if (best_error < before) best_n = n;
    sort_hits(hits);
    for (const auto& c : hits) {
      if (auto cert = verify_candidate(c, goal, limits)) return *cert;
    }
  }

  // Phase 2: follow the root near (x_t+1)^m - 1 for larger n.
  for (std::size_t n = limits.n_max + 1; n <= limits.n_far; ++n) {
    std::vector<Candidate> hits;
    for (std::size_t m = 1; m <= limits.m_far_max; ++m) {
      const double md = static_cast<double>(m);
      const Cd wstar = std::polar(std::pow(goal.r, md), md * goal.theta) - 1.0;
      if (std::abs(wstar) > 2.0 * static_cast<double>(n)) continue;
      const auto w = newton_pnv(n, wstar);
      if (!w) continue;
      const ComplexD wd = from_std(*w);
      const double rho = std::exp(std::log(abs(wd + 1.0)) / md);
      const Branch br = choose_branch(std::atan2(wd.im, wd.re + 1.0), m, goal.theta);
      const ComplexD x{rho * std::cos(br.phi) - 1.0, rho * std::sin(br.phi)};
      const double err = goal.error(x, rho);
      if (err < best_error) {
        best_error = err;
        best_n = n;
        best_m = m;
      }
      if (err < goal.eps) hits.push_back({n, m, err, wd, 2});
    }
    sort_hits(hits);
    for (const auto& c : hits) {
      if (auto cert = verify_candidate(c, goal, limits)) return *cert;
    }
  }
  std::ostringstream msg;
  msg << "no root within " << goal.eps << " of the target for n <= " << limits.n_far;
  if (std::isfinite(best_error)) {
    msg << "; best error " << best_error << " at n=" << best_n;
    if (best_m) msg << ", m=" << best_m;
  }
  throw ConstructorError(msg.str());
}

}  // namespace

RootCertificate target_connected_root(const ComplexD& target, double eps, const SearchLimits& limits) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  const double r = abs(target + 1.0);
  if (r == 0) throw std::invalid_argument("target -1 is not reachable");
  if (!(eps < r)) throw std::invalid_argument("eps must be smaller than |target+1|");
  return search(make_goal(target, target, eps, false), limits);
}

RootCertificate target_nrel_root(const ComplexD& target, double eps, const SearchLimits& limits) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  if (target.re == 1.0 && target.im == 0.0) throw std::invalid_argument("target 1 is a pole of z/(1-z)");
  const long bits = limits.precision_bits;
  if (target.re == 0.0 && target.im == 0.0) {
    RootCertificate cert;
    cert.label = "K1";
    cert.n = 0;
    cert.m = 1;
    cert.target = target;
    cert.achieved = to_real(ComplexD{0, 0}, bits);
    cert.connected_root = cert.achieved;
    cert.w = cert.achieved;
    cert.residual = Real(0.0, 64);
    cert.eps = eps;
    cert.nrel = true;
    return cert;
  }
  const ComplexD one{1.0, 0.0};
  const ComplexD x = target / (one - target);
  const double s = abs(x + 1.0);
  // Lipschitz window of x -> x/(1+x) on the disc |x' - x| <= s/2.
  const double delta = std::min(eps * s * s / 2.0, s / 2.0);
  if (delta < 1e-12) throw std::invalid_argument("derived connected window underflows the search");
  RootCertificate cert = search(make_goal(x, target, eps, true), limits);
  cert.connected_eps = delta;
  return cert;
}

Graph materialize(const RootCertificate& cert) {
  if (cert.n == 0) return make_complete(cert.m).relabeled(cert.label);
  return lex_product(apex_join(make_path(cert.n)), make_complete(cert.m)).relabeled(cert.label);
}

RationalRoot rational_nrel_root(unsigned long a, unsigned long b) {
  if (b == 0 || a < b || a > 2 * b) throw std::invalid_argument("rational root requires 1 <= b <= a <= 2b");
  RationalRoot out;
  out.graph = disjoint_union(disjoint_copies(make_complete(2), a - b), disjoint_copies(make_complete(1), 2 * b - a));
  out.root = make_rational(BigInt(a), BigInt(b));
  out.nrel = nrel_cform(out.graph);
  out.exact_zero = cform_eval(out.nrel, out.root) == 0;
  return out;
}

RealRootedUnion real_rooted_disconnected(std::size_t k) {
  RealRootedUnion out;
  out.graph = disjoint_union(make_complete(3), disjoint_copies(make_complete(2), k));
  const PolyPart parts[] = {{complete_cpoly(3), 3}, {complete_cpoly(2), 2}};
  std::vector<PolyPart> all{parts[0]};
  for (std::size_t i = 0; i < k; ++i) all.push_back(parts[1]);
  out.cpoly = union_cpoly(all);
  const BigInt kk(static_cast<unsigned long>(k));
  out.discriminant = (3 + kk) * (3 + kk) - 4 * (3 + 2 * kk);
  out.all_real = out.discriminant >= 0;
  return out;
}

IntPoly path_union_complete_cpoly(std::size_t n) {
  const PolyPart parts[] = {{path_cpoly(n), n}, {complete_cpoly(n), n}};
  return union_cpoly(parts);
}

}  // namespace relpoly
