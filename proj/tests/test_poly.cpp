#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "relpoly/graph.hpp"
#include "relpoly/poly.hpp"
#include "relpoly/verify.hpp"

using namespace relpoly;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

IntPoly x_poly() { return IntPoly::monomial(1); }

}  // namespace

TEST_SUITE("poly") {

TEST_CASE("IntPoly arithmetic") {
  const IntPoly a{1, 2, 3};
  CHECK(a.degree() == 2);
  CHECK(IntPoly{0, 0}.is_zero());
  CHECK(IntPoly{1, 0, 0}.degree() == 0);
  CHECK((a - a).is_zero());
  CHECK(a * IntPoly{-1, 1} == IntPoly{-1, -1, -1, 3});
  CHECK(a.derivative() == IntPoly{2, 6});
  CHECK(IntPoly::binomial_power(3, -1) == IntPoly{-1, 3, -3, 1});
  CHECK(a.compose(IntPoly{1, 1}) == IntPoly{6, 8, 3});
  CHECK(IntPoly{0, 0, 4, 2}.strip_zero_roots() == std::pair{IntPoly{4, 2}, std::size_t{2}});
  CHECK(IntPoly{6, 4, 2}.content() == 2);
  CHECK(IntPoly{6, 4, 2}.exact_div(2) == IntPoly{3, 2, 1});
  CHECK_THROWS(IntPoly{6, 4, 3}.exact_div(2));
  CHECK(a.eval(BigInt(2)) == 17);
  CHECK(a.eval(q(1, 2)) == q(11, 4));
  CHECK(IntPoly{-1, 0, 1}.sign_at(q(1, 3)) == -1);
  CHECK(IntPoly{-1, 0, 1}.sign_at(q(-1)) == 0);
  CHECK(IntPoly{-1, 0, 1}.sign_at(q(3, 2)) == 1);
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(3, 5) == 0);
}

TEST_CASE("connected set polynomial examples") {
  CHECK(connected_set_polynomial(make_path(3)) == IntPoly{0, 3, 2, 1});
  for (std::size_t n = 1; n <= 8; ++n)
    CHECK(connected_set_polynomial(make_complete(n)) == IntPoly::binomial_power(n) - IntPoly{1});
  const Graph u = disjoint_union(make_complete(3), disjoint_copies(make_complete(2), 3));
  CHECK(connected_set_polynomial(u) == IntPoly{0, 9, 6, 1});
  CHECK(connected_set_polynomial(u) == x_poly() * IntPoly{3, 1} * IntPoly{3, 1});
}

TEST_CASE("C-forms") {
  CHECK(nrel_cform(make_complete(2)) == CForm(2, {2, 1}));
  CHECK(nrel_cform(make_cycle(5)) == CForm(5, {5, 5, 5, 5, 1}));
  CHECK(cform_expand(nrel_cform(make_complete(2))) == IntPoly{0, 2, -1});
  CHECK(cform_expand(nrel_cform(make_complete(3))) == IntPoly{0, 3, -3, 1});
  CHECK(cform_expand(knn_nrel(1)) == IntPoly{0, 2, -1});
  const Graph g32 = disjoint_union(make_complete(2), make_path(1));
  CHECK(cform_expand(nrel_cform(g32)) == IntPoly{0, 3, -5, 2});
  CHECK(cpoly_to_nrel(x_poly(), 1) == CForm(1, {1}));
  CHECK(cpoly_to_nrel(connected_set_polynomial(make_cycle(5)), 5) == nrel_cform(make_cycle(5)));
  CHECK_THROWS_AS(cpoly_to_nrel(IntPoly{1, 1}, 3), std::invalid_argument);
  CHECK_THROWS_AS(cpoly_to_nrel(IntPoly{0, 1, 1, 1}, 2), std::invalid_argument);
}

TEST_CASE("C5 at 7 and 8 by direct arithmetic") {
  // sum_k c_k p^k (1-p)^(5-k), c = (5,5,5,5,1)
  auto direct = [](long p) {
    const long c[] = {5, 5, 5, 5, 1};
    BigInt total = 0;
    for (int k = 1; k <= 5; ++k) {
      BigInt term = c[k - 1];
      for (int i = 0; i < k; ++i) term *= p;
      for (int i = k; i < 5; ++i) term *= 1 - p;
      total += term;
    }
    return total;
  };
  CHECK(direct(7) == -1043);
  CHECK(direct(8) == 1128);
  const CForm c5 = nrel_cform(make_cycle(5));
  CHECK(cform_eval(c5, q(7)) == q(direct(7).get_si()));
  CHECK(cform_eval(c5, q(8)) == q(direct(8).get_si()));
}

TEST_CASE("evaluation against subset oracle") {
  const std::vector<Graph> gs{make_petersen(), make_star(5), make_cycle(6), apex_join(make_path(5)),
                              disjoint_union(make_complete(2), make_path(3))};
  for (const auto& g : gs) {
    const CForm f = nrel_cform(g);
    for (const Rational& p : {q(1, 3), q(-2, 5), q(7, 2)}) CHECK(cform_eval(f, p) == oracle::nrel(g, p));
    CHECK(cform_eval(f, q(0)) == 0);
    CHECK(cform_eval(f, q(1)) == f.coeff(g.order()));
    CHECK(cform_expand(f).eval(q(3, 7)) == cform_eval(f, q(3, 7)));
  }
}

TEST_CASE("basis change round trip on random polynomials") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> coeff(-1000000, 1000000);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t deg = 1 + rng() % 40;
    std::vector<BigInt> c(deg + 1);
    for (std::size_t k = 1; k <= deg; ++k) c[k] = coeff(rng);
    if (c[deg] == 0) c[deg] = 1;
    const IntPoly cp(c);
    const std::size_t n = deg + rng() % 3;
    const CForm f = cpoly_to_nrel(cp, n);
    CHECK(nrel_to_cpoly(f) == cp);
    CHECK(power_nrel_to_cpoly(cform_expand(f), n) == cp);
  }
}

TEST_CASE("closed forms") {
  CHECK(path_cpoly(1) == x_poly());
  CHECK(path_cpoly(3) == IntPoly{0, 3, 2, 1});
  CHECK(IntPoly{1, -2, 1} * path_cpoly(3) == IntPoly{0, 3, -4, 0, 0, 1});
  CHECK(path_cpoly(30) == connected_set_polynomial(make_path(30)));
  for (std::size_t n = 1; n <= 100; ++n) {
    const IntPoly xn2 = IntPoly::monomial(n + 2);
    const IntPoly rest = xn2 - IntPoly::monomial(2) - IntPoly{0, -1, 1} * BigInt(static_cast<long>(n));
    CHECK(IntPoly{1, -2, 1} * path_cpoly(n) == rest);
  }
  CHECK(cycle_cform(3) == CForm(3, {3, 3, 1}));
  CHECK(cycle_cform(5) == CForm(5, {5, 5, 5, 5, 1}));
  CHECK(cycle_cform(7) == nrel_cform(make_cycle(7)));
  CHECK(knn_nrel(2) == CForm(4, {4, 4, 4, 1}));
  for (std::size_t n = 1; n <= 6; ++n) CHECK(knn_nrel(n) == cpoly_to_nrel(oracle::cpoly(make_complete_bipartite(n, n)), 2 * n));
  CHECK(complete_cpoly(4) == IntPoly{0, 4, 6, 4, 1});
}

TEST_CASE("product, join and union formulas") {
  const IntPoly k2 = complete_cpoly(2);
  CHECK(lex_product_cpoly(k2, 2, k2, 2) == complete_cpoly(4));
  CHECK(lex_product_cpoly(path_cpoly(4), 4, x_poly(), 1) == path_cpoly(4));
  CHECK(lex_product_cpoly(path_cpoly(3), 3, k2, 2) == oracle::cpoly(lex_product(make_path(3), make_complete(2))));

  CHECK(apex_join_cpoly(path_cpoly(2), 2) == complete_cpoly(3));
  CHECK(apex_join_cpoly(IntPoly{}, 0) == x_poly());
  CHECK(apex_join_cpoly(path_cpoly(20), 20) == connected_set_polynomial(apex_join(make_path(20))));

  const std::vector<PolyPart> parts{{complete_cpoly(3), 3}, {k2, 2}, {k2, 2}, {k2, 2}};
  CHECK(union_cpoly(parts) == IntPoly{0, 9, 6, 1});
  const std::vector<PolyPart> one{{path_cpoly(4), 4}};
  CHECK(union_cpoly(one) == path_cpoly(4));
  const std::vector<CForm> g32{nrel_cform(make_complete(2)), nrel_cform(make_path(1))};
  const IntPoly e = cform_expand(union_nrel(g32));
  CHECK(e == IntPoly{0, 3, -5, 2});
  CHECK(e.eval(q(3, 2)) == 0);
  CHECK(e.eval(q(1)) == 0);
}

TEST_CASE("formulas match enumeration up to total order 12") {
  const std::vector<Graph> small{make_path(1), make_path(2), make_path(3), make_cycle(3), make_star(2),
                                 make_cycle(4), make_empty(2), make_complete_bipartite(1, 3),
                                 make_path(4), make_complete(4), make_cycle(5), make_empty(3)};
  for (const auto& g : small) {
    const IntPoly cg = oracle::cpoly(g);
    if (g.order() + 1 <= 12) CHECK(apex_join_cpoly(cg, g.order()) == oracle::cpoly(apex_join(g)));
    for (const auto& h : small) {
      if (g.order() * h.order() > 12) continue;
      const IntPoly expect = oracle::cpoly(lex_product(g, h));
      CHECK(lex_product_cpoly(cg, g.order(), oracle::cpoly(h), h.order()) == expect);
    }
    for (const auto& h : small) {
      if (g.order() + h.order() > 12) continue;
      const std::vector<PolyPart> parts{{cg, g.order()}, {oracle::cpoly(h), h.order()}};
      CHECK(union_cpoly(parts) == oracle::cpoly(disjoint_union(g, h)));
    }
  }
}

TEST_CASE("family decomposition") {
  CHECK(family_fn(1) == IntPoly{0, 2, -3, 0, 1});
  CHECK(family_fn_decomposition(1) == IntPoly{0, 2, -3, 0, 1});
  for (std::size_t n = 1; n <= 100; ++n) CHECK(family_fn(n) == family_fn_decomposition(n));
  for (std::size_t n = 1; n <= 9; ++n)
    CHECK(family_fn(n) == IntPoly{1, -2, 1} * oracle::cpoly(apex_join(make_path(n))));
}

TEST_CASE("positivity on the unit interval") {
  for (std::uint64_t s = 1; s <= 30; ++s) {
    const CForm f = nrel_cform(random_connected_graph(2 + s % 8, 0.3, s));
    for (long i = 1; i <= 9; ++i) CHECK(cform_eval(f, q(i, 10)) > 0);
  }
  CHECK(cform_eval(nrel_cform(make_path(1)), q(1, 2)) == q(1, 2));
  CHECK(cform_eval(nrel_cform(make_empty(2)), q(1, 2)) == q(1, 2));
}

}
