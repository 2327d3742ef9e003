#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "relpoly/poly.hpp"

namespace relpoly {

class Graph;

/// counts[k-1] = number of k-node subsets that induce a connected subgraph.
struct ConnectedCounts {
  std::size_t order = 0;
  std::vector<BigInt> counts;
  friend bool operator==(const ConnectedCounts&, const ConnectedCounts&) = default;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumerationOptions {
  /// Abort once this many connected sets have been generated.
  std::uint64_t budget = 1'000'000'000;
  /// Worker threads; anchors are dealt round-robin and results summed.
  unsigned threads = 1;
};

/// Counts connected sets by size by growing every set from its minimum-index
/// node. Each branch either adds the next boundary node or forbids it for the
/// rest of the branch, so every connected set is produced exactly once.
ConnectedCounts connected_counts(const Graph& g, const EnumerationOptions& options = {});

inline constexpr std::size_t bruteforce_max_order = 25;

/// Reference counter: all 2^n subsets, each checked for connectivity.
ConnectedCounts connected_counts_bruteforce(const Graph& g);

}  // namespace relpoly
