#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "relpoly/connected.hpp"
#include "relpoly/constructor.hpp"
#include "relpoly/limit_set.hpp"
#include "relpoly/poly.hpp"
#include "relpoly/roots.hpp"
#include "relpoly/verify.hpp"

using namespace relpoly;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Rational q(long a, long b = 1) { return make_rational(a, b); }

std::vector<Graph> small_graphs(std::size_t max_order) {
  std::vector<Graph> out;
  for (std::size_t n = 1; n <= max_order; ++n) {
    auto all = all_connected_labeled_graphs(n);
    out.insert(out.end(), all.begin(), all.end());
    if (n >= 2) out.push_back(make_empty(n));
  }
  out.push_back(disjoint_union(make_path(2), make_path(1)));
  return out;
}

Outcome oracle_equivalence() {
  std::vector<Graph> gs;
  for (std::size_t n = 1; n <= 10; ++n) {
    gs.push_back(make_path(n));
    gs.push_back(make_complete(n));
    gs.push_back(make_star(n - 1 == 0 ? 1 : n - 1));
    if (n >= 3) gs.push_back(make_cycle(n));
    if (n >= 2) gs.push_back(apex_join(make_path(n - 1)));
  }
  for (std::size_t a = 1; a <= 5; ++a)
    for (std::size_t b = a; a + b <= 10; ++b) gs.push_back(make_complete_bipartite(a, b));
  gs.push_back(make_petersen());
  for (std::size_t k = 0; k <= 3; ++k) gs.push_back(disjoint_union(make_complete(3), disjoint_copies(make_complete(2), k)));
  for (std::size_t n = 1; n <= 5; ++n) gs.push_back(disjoint_union(make_path(n), make_complete(n)));
  const double densities[] = {0.0, 0.1, 0.25, 0.5, 0.8};
  for (std::uint64_t s = 0; s < 300; ++s) gs.push_back(random_connected_graph(2 + s % 9, densities[s % 5], 1000 + s));

  std::size_t bad = 0;
  for (const auto& g : gs)
    if (connected_counts(g) != connected_counts_bruteforce(g)) ++bad;
  return {bad == 0, std::to_string(gs.size()) + " graphs, " + std::to_string(bad) + " mismatches"};
}

CorpusSpec connected_corpus() {
  CorpusSpec spec;
  spec.paths = {1, 10};
  spec.cycles = {3, 10};
  spec.stars = {1, 9};
  spec.complete = {1, 10};
  spec.bicliques = {1, 5};
  spec.exhaustive = {1, 5};
  spec.random = {200, {6, 8}, 0.3, 1};
  spec.petersen = true;
  return spec;
}

Outcome observation1() {
  const auto corpus = build_corpus(connected_corpus());
  std::size_t bad = 0;
  for (const auto& g : corpus)
    if (!check_observation1(g).all_hold()) ++bad;
  return {bad == 0, std::to_string(corpus.size()) + " graphs, " + std::to_string(bad) + " failures"};
}

Outcome theorem2() {
  CorpusSpec spec;
  spec.exhaustive = {3, 5};
  spec.random = {200, {6, 8}, 0.3, 1};
  const auto rep = corpus_theorem2(spec);
  std::string detail = std::to_string(rep.checked) + " graphs, " + std::to_string(rep.failures.size()) + " failures";
  if (!rep.failures.empty()) detail += " (first " + rep.failures.front().graph.label() + ")";
  return {rep.passed() && rep.checked == 4 + 38 + 728 + 200, detail};
}

// C_{2n+1} at p, c_k = 2n+1 for k < 2n+1 and 1 at the top, by plain integer sums
BigInt cycle_value(long N, long p) {
  BigInt total = 0;
  for (long k = 1; k <= N; ++k) {
    BigInt term = k == N ? 1 : N;
    for (long i = 0; i < k; ++i) term *= p;
    for (long i = k; i < N; ++i) term *= 1 - p;
    total += term;
  }
  return total;
}

Outcome theorem3() {
  bool ok = cycle_value(5, 7) == -1043 && cycle_value(5, 8) == 1128;
  std::ostringstream d;
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto c = cycle_root_certificate(n);
    const long N = static_cast<long>(2 * n + 1), lo = static_cast<long>(2 * n * n - 1);
    const bool here = c.value_lo < 0 && c.value_hi > 0 && c.value_lo == Rational(cycle_value(N, lo)) &&
                      c.value_hi == Rational(cycle_value(N, lo + 1)) && c.isolated.lo >= lo &&
                      c.isolated.hi <= lo + 1;
    ok = ok && here;
    if (n == 2) d << "n=2 values " << c.value_lo.get_str() << ", " << c.value_hi.get_str();
  }
  return {ok, d.str()};
}

Outcome formulas() {
  std::size_t checked = 0, bad = 0;
  auto expect = [&](bool b) {
    ++checked;
    if (!b) ++bad;
  };
  const auto graphs = small_graphs(4);
  std::vector<Graph> named;
  for (std::size_t n = 1; n <= 6; ++n) {
    named.push_back(make_path(n));
    named.push_back(make_complete(n));
    if (n >= 3) named.push_back(make_cycle(n));
    named.push_back(make_star(n));
  }
  std::vector<Graph> pool = graphs;
  pool.insert(pool.end(), named.begin(), named.end());

  for (const auto& g : pool) {
    const IntPoly cg = connected_set_polynomial(g);
    for (const auto& h : pool) {
      if (g.order() * h.order() <= 12)
        expect(lex_product_cpoly(cg, g.order(), connected_set_polynomial(h), h.order()) ==
               oracle::cpoly(lex_product(g, h)));
      if (g.order() + h.order() <= 12 && h.order() <= g.order()) {
        const std::vector<PolyPart> parts{{cg, g.order()}, {connected_set_polynomial(h), h.order()}};
        expect(union_cpoly(parts) == oracle::cpoly(disjoint_union(g, h)));
        const std::vector<CForm> forms{nrel_cform(g), nrel_cform(h)};
        expect(union_nrel(forms) == cpoly_to_nrel(oracle::cpoly(disjoint_union(g, h)), g.order() + h.order()));
      }
    }
  }
  auto joins = small_graphs(5);
  for (std::size_t n = 6; n <= 11; ++n) {
    joins.push_back(make_path(n));
    joins.push_back(make_cycle(n));
    joins.push_back(make_empty(n));
  }
  for (const auto& g : joins)
    expect(apex_join_cpoly(connected_set_polynomial(g), g.order()) == oracle::cpoly(apex_join(g)));
  for (std::size_t n = 1; n <= 12; ++n) expect(path_cpoly(n) == oracle::cpoly(make_path(n)));
  for (std::size_t n = 1; n <= 6; ++n)
    expect(nrel_to_cpoly(knn_nrel(n)) == oracle::cpoly(make_complete_bipartite(n, n)));
  for (std::size_t n = 1; n <= 100; ++n) expect(family_fn(n) == family_fn_decomposition(n));
  return {bad == 0, std::to_string(checked) + " identities, " + std::to_string(bad) + " failures"};
}

Outcome bkw() {
  const ExpFamily fam = pnv_family();
  std::size_t bad = 0;
  const std::pair<CurvePiece, std::vector<std::size_t>> pieces[] = {
      {CurvePiece::line, {0, 1}}, {CurvePiece::shifted_circle, {0, 2}}, {CurvePiece::unit_circle, {1, 2}}};
  for (const auto& [piece, pair] : pieces) {
    for (const auto& z : sample_curve_piece(piece, 200)) {
      auto v = bkw_classify(fam, z);
      std::sort(v.dominant.begin(), v.dominant.end());
      if (v.classification != LimitCase::case_i || v.dominant != pair) ++bad;
    }
  }
  for (const auto& z : sample_off_curve(200, 0.05))
    if (bkw_classify(fam, z).classification != LimitCase::not_a_limit) ++bad;
  const std::vector<std::size_t> ns{200};
  const auto rep = convergence_report(ns, Region::annulus({-1, 0}, 0.2, 3));
  const double dmax = rep.rows.empty() ? INFINITY : rep.rows.back().max_distance;
  std::ostringstream d;
  d << bad << " misclassified of 800, max distance at n=200 " << dmax;
  return {bad == 0 && dmax <= 0.08, d.str()};
}

Outcome density() {
  const ComplexD targets[] = {{-1, 2}, {3, 4}, {-5, 0}, {0.5, 0.5}};
  std::size_t bad = 0;
  std::ostringstream d;
  for (bool nrel : {false, true}) {
    for (const auto& t : targets) {
      try {
        const auto c = nrel ? target_nrel_root(t, 0.1) : target_connected_root(t, 0.1);
        const ComplexD a = to_double(c.achieved);
        const double err = std::hypot(a.re - t.re, a.im - t.im);
        if (!(err < 0.1 && c.residual.to_double() <= 1e-9)) ++bad;
        d << c.label << (nrel ? "[nrel] " : " ");
      } catch (const std::exception& e) {
        ++bad;
        d << "error(" << e.what() << ") ";
      }
    }
  }
  return {bad == 0, d.str()};
}

Outcome rational_roots() {
  std::size_t checked = 0;
  std::string missing;
  for (unsigned long b = 1; 2 * b <= 24; ++b) {
    for (unsigned long a = b; a <= 2 * b; ++a) {
      ++checked;
      const auto r = rational_nrel_root(a, b);
      if (cform_eval(r.nrel, r.root) != 0) missing += " (" + std::to_string(a) + "," + std::to_string(b) + ")";
    }
  }
  return {missing.empty(), std::to_string(checked) + " pairs" + (missing.empty() ? "" : ", no zero at" + missing)};
}

Outcome discriminant() {
  std::size_t bad = 0;
  for (long k = 0; k <= 10; ++k) {
    const auto u = real_rooted_disconnected(static_cast<std::size_t>(k));
    const bool expect = (k - 3) * (k + 1) >= 0;
    const RootSet rs = find_roots(u.cpoly);
    bool numeric = true;
    for (const auto& r : rs.roots) numeric = numeric && std::abs(r.im.to_double()) <= 1e-6;
    if (u.all_real != expect || numeric != expect || u.discriminant != (k - 3) * (k + 1)) ++bad;
  }
  return {bad == 0, "k=0..10, " + std::to_string(bad) + " mismatches"};
}

Outcome monte_carlo() {
  const std::vector<Graph> gs{make_complete(2), make_path(4), make_cycle(5), make_complete(4), make_petersen()};
  const Rational ps[] = {q(1, 5), q(1, 2), q(3, 4), q(9, 10)};
  std::size_t outliers = 0, configs = 0;
  double worst = 0;
  for (const auto& g : gs) {
    for (const auto& p : ps) {
      const auto rep = monte_carlo_nrel(g, p, 100000, 2024 + configs);
      ++configs;
      worst = std::max(worst, std::abs(rep.z_score));
      if (std::abs(rep.z_score) > 3) ++outliers;
    }
  }
  std::ostringstream d;
  d << configs << " configurations, " << outliers << " with |z| > 3, max |z| " << worst;
  return {outliers <= 1, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 oracle equivalence", oracle_equivalence},
      {"2 observation 1 identities", observation1},
      {"3 newton violation and nonreal roots", theorem2},
      {"4 odd cycle real roots", theorem3},
      {"5 formula identities", formulas},
      {"6 limit curve", bkw},
      {"7 density constructor", density},
      {"8 rational roots a/b", rational_roots},
      {"9 union discriminant", discriminant},
      {"10 monte carlo consistency", monte_carlo},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
