#include "relpoly/connected.hpp"

#include <atomic>
#include <bit>
#include <thread>

#include "relpoly/graph.hpp"

namespace relpoly {

namespace {

// Node set as a bit vector; one word covers graphs up to 64 nodes.
class NodeSet {
 public:
  explicit NodeSet(std::size_t words = 0) : words_(words, 0) {}

  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  std::size_t lowest() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return (i << 6) + static_cast<std::size_t>(std::countr_zero(words_[i]));
    return static_cast<std::size_t>(-1);
  }

  // this | (other & ~mask)
  NodeSet with_new(const NodeSet& other, const NodeSet& mask) const {
    NodeSet out = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] |= other.words_[i] & ~mask.words_[i];
    return out;
  }

 private:
  std::vector<std::uint64_t> words_;
};

class Enumerator {
 public:
  Enumerator(const Graph& g, std::atomic<std::uint64_t>& generated, std::uint64_t budget)
      : n_(g.order()),
        words_((g.order() + 63) / 64),
        neighbors_(g.order(), NodeSet(words_)),
        local_(g.order() + 1, 0),
        generated_(generated),
        budget_(budget) {
    for (Node v = 0; v < n_; ++v)
      for (Node w : g.neighbors(v)) neighbors_[v].set(w);
  }

  void run_anchor(std::size_t v) {
    NodeSet forbidden(words_);
    for (std::size_t i = 0; i <= v; ++i) forbidden.set(i);
    NodeSet candidates = NodeSet(words_).with_new(neighbors_[v], forbidden);
    grow(1, std::move(candidates), std::move(forbidden));
  }

  void flush() {
    if (pending_ == 0) return;
    auto total = generated_.fetch_add(pending_) + pending_;
    pending_ = 0;
    if (total > budget_) {
      throw BudgetExceeded("connected set enumeration exceeded the budget of " +
                           std::to_string(budget_) + " sets");
    }
  }

  const std::vector<std::uint64_t>& counts() const { return local_; }

 private:
  // `blocked` holds the current set, nodes below the anchor, and every node
  // that an earlier sibling branch chose to exclude.
  void grow(std::size_t size, NodeSet candidates, NodeSet blocked) {
    ++local_[size];
    if (++pending_ >= 4096) flush();
    while (!candidates.empty()) {
      const std::size_t u = candidates.lowest();
      candidates.reset(u);
      blocked.set(u);
      NodeSet next = candidates.with_new(neighbors_[u], blocked);
      grow(size + 1, std::move(next), blocked);
    }
  }

  std::size_t n_;
  std::size_t words_;
  std::vector<NodeSet> neighbors_;
  std::vector<std::uint64_t> local_;
  std::atomic<std::uint64_t>& generated_;
  std::uint64_t budget_;
  std::uint64_t pending_ = 0;
};

}  // namespace

ConnectedCounts connected_counts(const Graph& g, const EnumerationOptions& options) {
  const std::size_t n = g.order();
  ConnectedCounts result{n, std::vector<BigInt>(n)};
  if (n == 0) return result;

  std::atomic<std::uint64_t> generated{0};
  const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(n)));
  std::vector<std::vector<std::uint64_t>> partial(workers);
  std::vector<std::exception_ptr> errors(workers);

  auto work = [&](unsigned id) {
    try {
      Enumerator e(g, generated, options.budget);
      for (std::size_t v = id; v < n; v += workers) e.run_anchor(v);
      e.flush();
      partial[id] = e.counts();
    } catch (...) {
      errors[id] = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
    for (auto& t : pool) t.join();
  }
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);

  for (const auto& part : partial)
    for (std::size_t k = 1; k <= n; ++k) result.counts[k - 1] += static_cast<unsigned long>(part[k]);
  return result;
}

ConnectedCounts connected_counts_bruteforce(const Graph& g) {
  const std::size_t n = g.order();
  if (n > bruteforce_max_order) {
    throw std::invalid_argument("brute-force oracle supports at most " +
                                std::to_string(bruteforce_max_order) + " nodes");
  }
  std::vector<std::uint32_t> adj(n, 0);
  for (Node v = 0; v < n; ++v)
    for (Node w : g.neighbors(v)) adj[v] |= 1u << w;

  std::vector<std::uint64_t> tally(n + 1, 0);
  const std::uint32_t full = n == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
  for (std::uint32_t subset = 1; subset <= full && subset != 0; ++subset) {
    // Flood fill from the lowest member, restricted to the subset.
    std::uint32_t reached = subset & (~subset + 1);
    std::uint32_t frontier = reached;
    while (frontier) {
      const int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      const std::uint32_t fresh = adj[static_cast<std::size_t>(v)] & subset & ~reached;
      reached |= fresh;
      frontier |= fresh;
    }
    if (reached == subset) ++tally[static_cast<std::size_t>(std::popcount(subset))];
  }
  ConnectedCounts result{n, std::vector<BigInt>(n)};
  for (std::size_t k = 1; k <= n; ++k) result.counts[k - 1] = static_cast<unsigned long>(tally[k]);
  return result;
}

}  // namespace relpoly
