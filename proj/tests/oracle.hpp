#pragma once

// Reference computations straight from the definitions.

#include <cstdint>
#include <vector>

#include "relpoly/graph.hpp"
#include "relpoly/poly.hpp"

namespace oracle {

using relpoly::BigInt;
using relpoly::Rational;

inline bool induces_connected(const relpoly::Graph& g, std::uint64_t set) {
  if (set == 0) return false;
  const auto n = g.order();
  std::vector<int> stack;
  std::uint64_t seen = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (set >> v & 1) {
      stack.push_back(static_cast<int>(v));
      seen = std::uint64_t{1} << v;
      break;
    }
  }
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (std::size_t w = 0; w < n; ++w) {
      const std::uint64_t bit = std::uint64_t{1} << w;
      if ((set & bit) && !(seen & bit) && g.adjacent(static_cast<relpoly::Node>(v), static_cast<relpoly::Node>(w))) {
        seen |= bit;
        stack.push_back(static_cast<int>(w));
      }
    }
  }
  return seen == set;
}

/// counts[k] = number of connected k-sets, counts[0] = 0.
inline std::vector<BigInt> connected_sets(const relpoly::Graph& g) {
  const auto n = g.order();
  std::vector<BigInt> out(n + 1, 0);
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s)
    if (induces_connected(g, s)) out[static_cast<std::size_t>(__builtin_popcountll(s))] += 1;
  return out;
}

inline relpoly::IntPoly cpoly(const relpoly::Graph& g) { return relpoly::IntPoly(connected_sets(g)); }

/// Probability that the up-set is nonempty and connected, summed over subsets.
inline Rational nrel(const relpoly::Graph& g, const Rational& p) {
  const auto n = g.order();
  Rational total = 0;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    if (!induces_connected(g, s)) continue;
    Rational term = 1;
    for (std::size_t v = 0; v < n; ++v) term *= (s >> v & 1) ? p : Rational(1 - p);
    total += term;
  }
  return total;
}

inline BigInt choose(long n, long k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace oracle
