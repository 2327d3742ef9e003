#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace relpoly {

using Node = std::uint32_t;
using Edge = std::pair<Node, Node>;

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Labeled simple undirected graph on nodes 0..order()-1.
///
/// Neighbor lists are kept sorted, which makes adjacency queries a binary
/// search and lets set intersections run as merges. Instances are immutable
/// once built; every operation below returns a new graph.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list. Throws GraphError on self-loops,
  /// out-of-range endpoints, or repeated edges (in either orientation).
  Graph(std::size_t order, std::span<const Edge> edges, std::string label = {});

  std::size_t order() const { return adjacency_.size(); }
  std::size_t size() const { return size_; }
  const std::string& label() const { return label_; }

  const std::vector<Node>& neighbors(Node v) const { return adjacency_.at(v); }
  std::size_t degree(Node v) const { return adjacency_.at(v).size(); }
  bool adjacent(Node u, Node v) const;

  /// Edges with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  Graph relabeled(std::string label) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adjacency_ == b.adjacency_;
  }

 private:
  std::vector<std::vector<Node>> adjacency_;
  std::size_t size_ = 0;
  std::string label_;
};

struct GraphStats {
  std::size_t order = 0;
  std::size_t size = 0;
  std::uint64_t triangles = 0;
  std::size_t cut_nodes = 0;
  std::vector<std::size_t> degrees;
};

Graph make_empty(std::size_t n);
Graph make_path(std::size_t n);
Graph make_cycle(std::size_t n);
Graph make_complete(std::size_t n);
Graph make_complete_bipartite(std::size_t a, std::size_t b);
Graph make_star(std::size_t leaves);
Graph make_petersen();

/// G + v: a new node (index order(G)) adjacent to every node of G.
Graph apex_join(const Graph& g);

/// G·H; node (u, x) gets index u * order(H) + x.
Graph lex_product(const Graph& g, const Graph& h);

/// G ∪ H with H's nodes shifted by order(G).
Graph disjoint_union(const Graph& g, const Graph& h);

/// k disjoint copies of g (k = 0 gives the empty graph on 0 nodes).
Graph disjoint_copies(const Graph& g, std::size_t k);

bool is_connected(const Graph& g);

GraphStats stats(const Graph& g);

// Edge-list text format ------------------------------------------------------

enum class ParseErrorKind {
  malformed_header,
  malformed_edge,
  edge_count_mismatch,
  endpoint_out_of_range,
  duplicate_edge,
  self_loop,
};

std::string_view to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail);
  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

/// Parses "n m" followed by m lines "u v". Blank lines and text after '#'
/// are ignored.
Graph parse_graph(std::string_view text, std::string label = {});

/// Canonical text: header, then edges with u < v in sorted order.
std::string serialize_graph(const Graph& g);

}  // namespace relpoly
