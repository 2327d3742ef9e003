#include "relpoly/verify.hpp"

#include <bit>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "relpoly/connected.hpp"

namespace relpoly {

namespace {

void append_range(std::vector<Graph>& out, const SizeRange& r, Graph (*make)(std::size_t)) {
  if (r.empty()) return;
  for (std::size_t n = r.min; n <= r.max; ++n) out.push_back(make(n));
}

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

std::vector<Graph> all_connected_labeled_graphs(std::size_t n) {
  if (n > 7) throw std::invalid_argument("exhaustive enumeration is limited to order 7");
  std::vector<Edge> slots;
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v) slots.emplace_back(u, v);
  std::vector<Graph> out;
  const std::uint64_t total = std::uint64_t{1} << slots.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (n > 1 && static_cast<std::size_t>(std::popcount(mask)) < n - 1) continue;
    std::vector<Edge> edges;
    UnionFind uf(n);
    std::size_t parts = n;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (mask >> i & 1) {
        edges.push_back(slots[i]);
        if (uf.unite(slots[i].first, slots[i].second)) --parts;
      }
    }
    if (parts != 1) continue;
    out.emplace_back(n, edges, "L" + std::to_string(n) + "#" + std::to_string(mask));
  }
  return out;
}

Graph random_connected_graph(std::size_t n, double density, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("random graph of order 0");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  for (Node v = 1; v < n; ++v) {
    const auto u = static_cast<Node>(std::uniform_int_distribution<std::size_t>(0, v - 1)(rng));
    edges.emplace_back(u, v);
    used[u][v] = true;
  }
  std::bernoulli_distribution extra(density);
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v)
      if (!used[u][v] && extra(rng)) edges.emplace_back(u, v);
  return Graph(n, edges, "R" + std::to_string(n) + "@" + std::to_string(seed));
}

std::vector<Graph> build_corpus(const CorpusSpec& spec) {
  std::vector<Graph> out;
  append_range(out, spec.paths, make_path);
  append_range(out, {std::max<std::size_t>(spec.cycles.min, 3), spec.cycles.max}, make_cycle);
  append_range(out, spec.stars, make_star);
  append_range(out, spec.complete, make_complete);
  if (!spec.bicliques.empty()) {
    for (std::size_t a = spec.bicliques.min; a <= spec.bicliques.max; ++a)
      for (std::size_t b = a; b <= spec.bicliques.max; ++b) out.push_back(make_complete_bipartite(a, b));
  }
  if (!spec.exhaustive.empty()) {
    for (std::size_t n = spec.exhaustive.min; n <= spec.exhaustive.max; ++n) {
      auto all = all_connected_labeled_graphs(n);
      out.insert(out.end(), std::make_move_iterator(all.begin()), std::make_move_iterator(all.end()));
    }
  }
  const auto& r = spec.random;
  if (r.count > 0 && !r.orders.empty()) {
    std::mt19937_64 rng(r.seed);
    std::uniform_int_distribution<std::size_t> order(r.orders.min, r.orders.max);
    for (std::size_t i = 0; i < r.count; ++i) {
      const std::size_t n = order(rng);
      out.push_back(random_connected_graph(n, r.density, rng()));
    }
  }
  if (spec.petersen) out.push_back(make_petersen());
  return out;
}

bool Observation1Report::all_hold() const {
  for (const auto& c : checks)
    if (c.applicable && !c.holds) return false;
  return true;
}

Observation1Report check_observation1(const Graph& g) {
  if (g.order() == 0 || !is_connected(g)) throw std::invalid_argument("observation 1 requires a connected graph");
  const auto counts = connected_counts(g);
  const auto st = stats(g);
  const std::size_t n = g.order();
  auto c = [&](std::size_t k) -> BigInt { return k >= 1 && k <= n ? counts.counts[k - 1] : BigInt(0); };
  BigInt pairs = 0;
  for (auto d : st.degrees) pairs += BigInt(static_cast<unsigned long>(d)) * (d == 0 ? 0 : d - 1) / 2;
  const auto ul = [](std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); };

  Observation1Report rep;
  rep.label = g.label();
  auto add = [&](std::string name, BigInt expected, BigInt actual, bool applicable) {
    const bool holds = expected == actual;
    rep.checks.push_back({std::move(name), std::move(expected), std::move(actual), applicable, holds});
  };
  add("c1 = n", ul(n), c(1), true);
  add("c2 = m", ul(st.size), c(2), true);
  add("c3 = sum binom(deg,2) - 2 triangles", pairs - 2 * ul(st.triangles), c(3), true);
  add("c_{n-1} = n - cut nodes", ul(n) - ul(st.cut_nodes), c(n - 1), n >= 2);
  add("c_n = 1", BigInt(1), c(n), true);
  return rep;
}

PositivityReport check_positivity_01(const Graph& g, std::size_t grid) {
  if (g.order() == 0) throw std::invalid_argument("positivity check on the empty graph");
  const CForm f = nrel_cform(g);
  PositivityReport rep;
  rep.label = g.label();
  rep.all_positive = true;
  for (std::size_t i = 1; i <= grid; ++i) {
    Rational p = make_rational(BigInt(static_cast<unsigned long>(i)), BigInt(static_cast<unsigned long>(grid + 1)));
    Rational v = cform_eval(f, p);
    if (v <= 0) rep.all_positive = false;
    rep.points.push_back(std::move(p));
    rep.values.push_back(std::move(v));
  }
  return rep;
}

Theorem2Report corpus_theorem2(const std::vector<Graph>& corpus, const RootOptions& opts) {
  Theorem2Report rep;
  for (const auto& g : corpus) {
    if (g.order() < 3) {
      ++rep.skipped;
      continue;
    }
    ++rep.checked;
    Theorem2Item item;
    item.graph = g;
    try {
      if (!is_connected(g)) throw std::invalid_argument("disconnected graph in corpus");
      const CForm f = nrel_cform(g);
      item.newton = newton_inequality_check(f, stats(g));
      const auto cc = has_nonreal_root(nrel_to_cpoly(f), opts);
      const auto nr = has_nonreal_root(cform_expand(f), opts);
      item.cpoly_verdict = cc.verdict;
      item.nrel_verdict = nr.verdict;
      if (!cc.diagnostic.empty()) item.diagnostic = "C: " + cc.diagnostic;
      if (!nr.diagnostic.empty()) item.diagnostic += (item.diagnostic.empty() ? "" : "; ") + ("NRel: " + nr.diagnostic);
      item.passed = item.newton.violated && item.newton.identity_holds && cc.has_nonreal() && nr.has_nonreal();
    } catch (const std::exception& e) {
      item.diagnostic = e.what();
      item.passed = false;
    }
    if (!item.passed) rep.failures.push_back(std::move(item));
  }
  return rep;
}

Theorem2Report corpus_theorem2(const CorpusSpec& spec, const RootOptions& opts) {
  return corpus_theorem2(build_corpus(spec), opts);
}

McReport monte_carlo_nrel(const Graph& g, const Rational& p, std::uint64_t trials, std::uint64_t seed,
                          unsigned shards) {
  if (p < 0 || p > 1) throw std::invalid_argument("p must lie in [0, 1]");
  if (shards == 0) shards = 1;
  // Node is up iff a uniform 64-bit draw is below floor(p 2^64).
  const BigInt scaled = (p.get_num() << 64) / p.get_den();
  const bool always = scaled >> 64 != 0;
  static_assert(sizeof(unsigned long) == 8);
  const std::uint64_t threshold = always ? 0 : scaled.get_ui();
  const std::size_t n = g.order();
  const auto edges = g.edges();

  auto run_shard = [&](unsigned s, std::uint64_t count) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), s};
    std::mt19937_64 rng(seq);
    std::vector<char> up(n);
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < count; ++t) {
      std::size_t alive = 0;
      for (std::size_t v = 0; v < n; ++v) {
        up[v] = always || rng() < threshold;
        alive += static_cast<std::size_t>(up[v]);
      }
      if (alive == 0) continue;
      UnionFind uf(n);
      std::size_t parts = alive;
      for (const auto& [a, b] : edges)
        if (up[a] && up[b] && uf.unite(a, b)) --parts;
      if (parts == 1) ++hits;
    }
    return hits;
  };

  std::vector<std::future<std::uint64_t>> jobs;
  std::uint64_t total = 0;
  for (unsigned s = 0; s < shards; ++s) {
    const std::uint64_t count = trials / shards + (s < trials % shards ? 1 : 0);
    if (shards == 1) {
      total += run_shard(s, count);
    } else {
      jobs.push_back(std::async(std::launch::async, run_shard, s, count));
    }
  }
  for (auto& j : jobs) total += j.get();

  McReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.shards = shards;
  rep.generator = mc_generator_name;
  rep.successes = total;
  rep.exact = cform_eval(nrel_cform(g), p);
  rep.estimate = trials ? static_cast<double>(total) / static_cast<double>(trials) : 0.0;
  rep.standard_error = trials ? std::sqrt(rep.estimate * (1 - rep.estimate) / static_cast<double>(trials)) : 0.0;
  const double diff = rep.estimate - rep.exact.get_d();
  if (rep.standard_error > 0) {
    rep.z_score = diff / rep.standard_error;
  } else if (trials == 0 || make_rational(BigInt(total), BigInt(trials)) == rep.exact) {
    rep.z_score = 0;
  } else {
    rep.z_score = diff > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  }
  return rep;
}

}  // namespace relpoly
