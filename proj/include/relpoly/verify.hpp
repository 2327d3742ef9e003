#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relpoly/graph.hpp"
#include "relpoly/poly.hpp"
#include "relpoly/roots.hpp"

namespace relpoly {

struct SizeRange {
  std::size_t min = 1;
  std::size_t max = 0;  // empty when max < min

  bool empty() const { return max < min; }
};

struct RandomFamily {
  std::size_t count = 0;
  SizeRange orders{6, 8};
  double density = 0.3;  // probability of each non-tree edge
  std::uint64_t seed = 1;
};

/// Graph families to verify against. Every generated graph is connected.
struct CorpusSpec {
  SizeRange paths{1, 0};
  SizeRange cycles{1, 0};
  SizeRange stars{1, 0};  // number of leaves
  SizeRange complete{1, 0};
  SizeRange bicliques{1, 0};  // K_{a,b} for all a <= b in range
  /// All connected labeled graphs on these orders.
  SizeRange exhaustive{1, 0};
  RandomFamily random;
  bool petersen = false;
};

/// Deterministic: same spec, same graphs in the same order.
std::vector<Graph> build_corpus(const CorpusSpec& spec);

/// Every connected graph on nodes 0..n-1, by edge subset in increasing mask order.
std::vector<Graph> all_connected_labeled_graphs(std::size_t n);

/// Spanning tree by uniform random attachment plus each remaining edge with
/// probability `density`.
Graph random_connected_graph(std::size_t n, double density, std::uint64_t seed);

struct IdentityCheck {
  std::string name;
  BigInt expected;  // from graph statistics
  BigInt actual;    // connected set count
  bool applicable = true;
  bool holds = false;
};

struct Observation1Report {
  std::string label;
  std::vector<IdentityCheck> checks;  // (i) c1 = n, (ii) c2 = m, (iii) c3, (iv) c_{n-1} = n - t, (v) c_n = 1
  bool all_hold() const;
};

/// Throws std::invalid_argument for disconnected input.
Observation1Report check_observation1(const Graph& g);

struct PositivityReport {
  std::string label;
  std::vector<Rational> points;
  std::vector<Rational> values;
  bool all_positive = false;
};

/// cform_eval at p = i/(grid+1), i = 1..grid. Throws on order 0.
PositivityReport check_positivity_01(const Graph& g, std::size_t grid);

struct Theorem2Item {
  Graph graph;
  NewtonCheck newton;
  NonrealVerdict cpoly_verdict = NonrealVerdict::inconclusive;
  NonrealVerdict nrel_verdict = NonrealVerdict::inconclusive;
  std::string diagnostic;
  bool passed = false;
};

struct Theorem2Report {
  std::size_t checked = 0;
  std::size_t skipped = 0;  // order < 3
  std::vector<Theorem2Item> failures;
  bool passed() const { return failures.empty(); }
};

Theorem2Report corpus_theorem2(const std::vector<Graph>& corpus, const RootOptions& opts = {});
Theorem2Report corpus_theorem2(const CorpusSpec& spec, const RootOptions& opts = {});

struct McReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  unsigned shards = 1;
  std::string generator;
  std::uint64_t successes = 0;
  double estimate = 0;
  double standard_error = 0;
  Rational exact;
  double z_score = 0;
};

inline constexpr const char* mc_generator_name = "mt19937_64 seeded by seed_seq{seed_lo, seed_hi, shard}";

/// Throws std::invalid_argument unless 0 <= p <= 1. Shard s runs its share of
/// the trials on its own stream, so results depend on (seed, shards) only.
McReport monte_carlo_nrel(const Graph& g, const Rational& p, std::uint64_t trials, std::uint64_t seed,
                          unsigned shards = 1);

}  // namespace relpoly
