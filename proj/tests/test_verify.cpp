#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "relpoly/connected.hpp"
#include "relpoly/verify.hpp"

using namespace relpoly;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("labeled graph enumeration") {
  // connected labeled graphs on n nodes: 1, 1, 4, 38, 728
  const std::size_t expect[] = {1, 1, 4, 38, 728};
  for (std::size_t n = 1; n <= 5; ++n) CHECK(all_connected_labeled_graphs(n).size() == expect[n - 1]);
  for (const auto& g : all_connected_labeled_graphs(4)) CHECK(is_connected(g));
  CHECK_THROWS_AS(all_connected_labeled_graphs(8), std::invalid_argument);
}

TEST_CASE("corpus is deterministic and connected") {
  CorpusSpec spec;
  spec.paths = {1, 6};
  spec.cycles = {1, 6};
  spec.bicliques = {1, 3};
  spec.random = {25, {6, 8}, 0.3, 11};
  spec.petersen = true;
  const auto a = build_corpus(spec), b = build_corpus(spec);
  REQUIRE(a.size() == 6 + 4 + 6 + 25 + 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[i]);
    CHECK(a[i].label() == b[i].label());
    CHECK(is_connected(a[i]));
  }
  CHECK(random_connected_graph(7, 0.5, 3) == random_connected_graph(7, 0.5, 3));
  CHECK(random_connected_graph(7, 0.0, 3).size() == 6);
  CHECK(random_connected_graph(7, 1.0, 3) == make_complete(7));
}

TEST_CASE("observation 1 identities") {
  const auto c5 = check_observation1(make_cycle(5));
  CHECK(c5.all_hold());
  CHECK(c5.checks.size() == 5);
  CHECK(c5.checks[2].actual == 5);

  const auto p4 = check_observation1(make_path(4));
  CHECK(p4.all_hold());
  CHECK(p4.checks[2].expected == 2);

  const auto pet = check_observation1(make_petersen());
  CHECK(pet.all_hold());
  CHECK(pet.checks[1].actual == 15);
  CHECK(pet.checks[2].actual == 30);
  CHECK(pet.checks[3].actual == 10);
  CHECK(oracle::connected_sets(make_petersen())[3] == 30);

  CHECK_FALSE(check_observation1(make_path(1)).checks[3].applicable);
  CHECK(check_observation1(make_path(1)).all_hold());
  CHECK_THROWS_AS(check_observation1(make_empty(2)), std::invalid_argument);

  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& g : all_connected_labeled_graphs(n)) CHECK(check_observation1(g).all_hold());
}

TEST_CASE("positivity") {
  for (const Graph& g : {make_petersen(), make_star(6), make_complete(5), make_empty(2)})
    CHECK(check_positivity_01(g, 9).all_positive);
  const auto k1 = check_positivity_01(make_path(1), 1);
  CHECK(k1.values.front() == q(1, 2));
  CHECK(check_positivity_01(make_empty(2), 1).values.front() == q(1, 2));
  CHECK_THROWS(check_positivity_01(Graph{}, 3));
}

TEST_CASE("theorem 2 on small corpora") {
  CorpusSpec spec;
  spec.exhaustive = {1, 5};
  const auto rep = corpus_theorem2(spec);
  CHECK(rep.passed());
  CHECK(rep.skipped == 2);
  CHECK(rep.checked == 4 + 38 + 728);

  const std::vector<Graph> k2{make_complete(2)};
  CHECK(corpus_theorem2(k2).skipped == 1);

  const std::vector<Graph> bad{disjoint_union(make_path(2), make_path(2))};
  const auto fail = corpus_theorem2(bad);
  CHECK_FALSE(fail.passed());
  CHECK(fail.failures.size() == 1);
}

TEST_CASE("monte carlo") {
  const auto k2 = monte_carlo_nrel(make_complete(2), q(1, 2), 100000, 2024);
  CHECK(k2.exact == q(3, 4));
  CHECK(std::abs(k2.z_score) <= 4);
  CHECK(k2.standard_error == doctest::Approx(std::sqrt(k2.estimate * (1 - k2.estimate) / 100000.0)));
  CHECK(k2.generator == std::string(mc_generator_name));

  const auto one = monte_carlo_nrel(make_petersen(), q(1), 1000, 5);
  CHECK(one.estimate == 1.0);
  CHECK(one.z_score == 0);
  const auto zero = monte_carlo_nrel(make_petersen(), q(0), 1000, 5);
  CHECK(zero.estimate == 0.0);
  CHECK(zero.z_score == 0);

  const auto s1 = monte_carlo_nrel(make_cycle(6), q(2, 3), 20000, 9, 3);
  const auto s2 = monte_carlo_nrel(make_cycle(6), q(2, 3), 20000, 9, 3);
  CHECK(s1.successes == s2.successes);
  CHECK(std::abs(s1.z_score) <= 5);

  CHECK_THROWS_AS(monte_carlo_nrel(make_path(2), q(3, 2), 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(monte_carlo_nrel(make_path(2), q(-1, 2), 10, 1), std::invalid_argument);
}

}
