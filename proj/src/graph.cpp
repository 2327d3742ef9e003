#include "relpoly/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace relpoly {

Graph::Graph(std::size_t order, std::span<const Edge> edges, std::string label)
    : adjacency_(order), size_(edges.size()), label_(std::move(label)) {
  for (auto [u, v] : edges) {
    if (u >= order || v >= order) {
      throw GraphError("edge {" + std::to_string(u) + "," + std::to_string(v) +
                       "} has an endpoint outside 0.." + std::to_string(order));
    }
    if (u == v) throw GraphError("self-loop at node " + std::to_string(u));
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (Node v = 0; v < order; ++v) {
    auto& nb = adjacency_[v];
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) {
      throw GraphError("duplicate edge at node " + std::to_string(v));
    }
  }
}

bool Graph::adjacent(Node u, Node v) const {
  const auto& nb = adjacency_.at(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(size_);
  for (Node u = 0; u < order(); ++u) {
    for (Node v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::relabeled(std::string label) const {
  Graph g = *this;
  g.label_ = std::move(label);
  return g;
}

Graph make_empty(std::size_t n) {
  return Graph(n, {}, n == 1 ? "K1" : std::to_string(n) + "K1");
}

Graph make_path(std::size_t n) {
  if (n == 0) throw GraphError("path needs at least one node");
  std::vector<Edge> e;
  for (Node i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e, "P" + std::to_string(n));
}

Graph make_cycle(std::size_t n) {
  if (n < 3) throw GraphError("cycle needs at least three nodes");
  std::vector<Edge> e;
  for (Node i = 0; i < n; ++i) e.emplace_back(i, static_cast<Node>((i + 1) % n));
  return Graph(n, e, "C" + std::to_string(n));
}

Graph make_complete(std::size_t n) {
  if (n == 0) throw GraphError("complete graph needs at least one node");
  std::vector<Edge> e;
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, e, "K" + std::to_string(n));
}

Graph make_complete_bipartite(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) throw GraphError("complete bipartite sides must be nonempty");
  std::vector<Edge> e;
  for (Node u = 0; u < a; ++u)
    for (Node v = 0; v < b; ++v) e.emplace_back(u, static_cast<Node>(a + v));
  return Graph(a + b, e, "K" + std::to_string(a) + "," + std::to_string(b));
}

Graph make_star(std::size_t leaves) {
  return apex_join(make_empty(leaves)).relabeled("K1," + std::to_string(leaves));
}

Graph make_petersen() {
  std::vector<Edge> e;
  for (Node i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);          // outer cycle
    e.emplace_back(i, i + 5);                // spokes
    e.emplace_back(i + 5, (i + 2) % 5 + 5);  // inner pentagram
  }
  return Graph(10, e, "Petersen");
}

Graph apex_join(const Graph& g) {
  auto e = g.edges();
  const auto apex = static_cast<Node>(g.order());
  for (Node v = 0; v < apex; ++v) e.emplace_back(v, apex);
  std::string label = g.label().empty() ? "G" : g.label();
  return Graph(g.order() + 1, e, "(" + label + "+v)");
}

Graph lex_product(const Graph& g, const Graph& h) {
  if (g.order() == 0 || h.order() == 0) {
    throw GraphError("lexicographic product factors must be nonempty");
  }
  const std::size_t nh = h.order();
  auto id = [nh](Node u, Node x) { return static_cast<Node>(u * nh + x); };
  std::vector<Edge> e;
  e.reserve(g.size() * nh * nh + g.order() * h.size());
  for (auto [u, v] : g.edges())
    for (Node x = 0; x < nh; ++x)
      for (Node y = 0; y < nh; ++y) e.emplace_back(id(u, x), id(v, y));
  for (Node u = 0; u < g.order(); ++u)
    for (auto [x, y] : h.edges()) e.emplace_back(id(u, x), id(u, y));
  return Graph(g.order() * nh, e, g.label() + "*" + h.label());
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  auto e = g.edges();
  const auto shift = static_cast<Node>(g.order());
  for (auto [u, v] : h.edges()) e.emplace_back(u + shift, v + shift);
  std::string label;
  if (g.order() == 0) {
    label = h.label();
  } else if (h.order() == 0) {
    label = g.label();
  } else {
    label = g.label() + "|" + h.label();
  }
  return Graph(g.order() + h.order(), e, label);
}

Graph disjoint_copies(const Graph& g, std::size_t k) {
  Graph out;
  for (std::size_t i = 0; i < k; ++i) out = disjoint_union(out, g);
  if (k > 1) out = out.relabeled(std::to_string(k) + g.label());
  return out;
}

bool is_connected(const Graph& g) {
  if (g.order() == 0) return false;
  std::vector<char> seen(g.order(), 0);
  std::vector<Node> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Node v = stack.back();
    stack.pop_back();
    for (Node w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == g.order();
}

namespace {

std::uint64_t count_triangles(const Graph& g) {
  std::uint64_t count = 0;
  for (auto [u, v] : g.edges()) {
    const auto& a = g.neighbors(u);
    const auto& b = g.neighbors(v);
    // Count common neighbours w > v so each triangle u < v < w is seen once.
    auto i = std::upper_bound(a.begin(), a.end(), v);
    auto j = std::upper_bound(b.begin(), b.end(), v);
    while (i != a.end() && j != b.end()) {
      if (*i < *j) {
        ++i;
      } else if (*j < *i) {
        ++j;
      } else {
        ++count;
        ++i;
        ++j;
      }
    }
  }
  return count;
}

// Iterative Hopcroft-Tarjan articulation points.
std::size_t count_cut_nodes(const Graph& g) {
  const std::size_t n = g.order();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> disc(n, unvisited), low(n, 0), parent(n, unvisited);
  std::vector<std::size_t> next_child(n, 0), root_children(n, 0);
  std::vector<char> is_cut(n, 0);
  std::size_t time = 0;

  for (Node root = 0; root < n; ++root) {
    if (disc[root] != unvisited) continue;
    std::vector<Node> stack{root};
    disc[root] = low[root] = time++;
    while (!stack.empty()) {
      Node v = stack.back();
      const auto& nb = g.neighbors(v);
      if (next_child[v] < nb.size()) {
        Node w = nb[next_child[v]++];
        if (disc[w] == unvisited) {
          parent[w] = v;
          disc[w] = low[w] = time++;
          if (v == root) ++root_children[root];
          stack.push_back(w);
        } else if (w != parent[v]) {
          low[v] = std::min(low[v], disc[w]);
        }
      } else {
        stack.pop_back();
        if (parent[v] != unvisited) {
          Node p = static_cast<Node>(parent[v]);
          low[p] = std::min(low[p], low[v]);
          if (p != root && low[v] >= disc[p]) is_cut[p] = 1;
        }
      }
    }
    if (root_children[root] > 1) is_cut[root] = 1;
  }
  return static_cast<std::size_t>(std::count(is_cut.begin(), is_cut.end(), 1));
}

}  // namespace

GraphStats stats(const Graph& g) {
  GraphStats s;
  s.order = g.order();
  s.size = g.size();
  s.triangles = count_triangles(g);
  s.cut_nodes = count_cut_nodes(g);
  s.degrees.reserve(g.order());
  for (Node v = 0; v < g.order(); ++v) s.degrees.push_back(g.degree(v));
  return s;
}

// Text format ----------------------------------------------------------------

std::string_view to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::malformed_header: return "malformed header";
    case ParseErrorKind::malformed_edge: return "malformed edge line";
    case ParseErrorKind::edge_count_mismatch: return "edge count mismatch";
    case ParseErrorKind::endpoint_out_of_range: return "endpoint out of range";
    case ParseErrorKind::duplicate_edge: return "duplicate edge";
    case ParseErrorKind::self_loop: return "self-loop";
  }
  return "unknown";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail)
    : std::runtime_error("line " + std::to_string(line) + ": " +
                         std::string(to_string(kind)) +
                         (detail.empty() ? "" : " (" + detail + ")")),
      kind_(kind),
      line_(line) {}

namespace {

// Splits a line (comment already stripped) into unsigned integers; returns
// false if any token is not a nonnegative integer.
bool read_numbers(std::string_view line, std::vector<std::uint64_t>& out) {
  out.clear();
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i == line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
    if (ec != std::errc() || ptr != line.data() + j) return false;
    out.push_back(value);
    i = j;
  }
  return true;
}

}  // namespace

Graph parse_graph(std::string_view text, std::string label) {
  std::vector<std::uint64_t> nums;
  bool have_header = false;
  std::uint64_t n = 0, m = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<Node>> seen;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    if (!read_numbers(line, nums)) {
      throw ParseError(have_header ? ParseErrorKind::malformed_edge
                                   : ParseErrorKind::malformed_header,
                       line_no, std::string(line));
    }
    if (nums.empty()) continue;

    if (!have_header) {
      if (nums.size() != 2 || nums[0] > (1u << 30)) {
        throw ParseError(ParseErrorKind::malformed_header, line_no, "expected \"n m\"");
      }
      n = nums[0];
      m = nums[1];
      seen.resize(n);
      have_header = true;
      continue;
    }
    if (nums.size() != 2) {
      throw ParseError(ParseErrorKind::malformed_edge, line_no, "expected \"u v\"");
    }
    auto u = nums[0], v = nums[1];
    if (u >= n || v >= n) {
      throw ParseError(ParseErrorKind::endpoint_out_of_range, line_no,
                       std::to_string(u) + " " + std::to_string(v) + " with n=" +
                           std::to_string(n));
    }
    if (u == v) throw ParseError(ParseErrorKind::self_loop, line_no, std::to_string(u));
    if (u > v) std::swap(u, v);
    auto& row = seen[u];
    if (std::find(row.begin(), row.end(), v) != row.end()) {
      throw ParseError(ParseErrorKind::duplicate_edge, line_no,
                       std::to_string(u) + " " + std::to_string(v));
    }
    row.push_back(static_cast<Node>(v));
    edges.emplace_back(static_cast<Node>(u), static_cast<Node>(v));
  }
  if (!have_header) throw ParseError(ParseErrorKind::malformed_header, line_no, "empty input");
  if (edges.size() != m) {
    throw ParseError(ParseErrorKind::edge_count_mismatch, line_no,
                     "header says " + std::to_string(m) + ", found " +
                         std::to_string(edges.size()));
  }
  return Graph(n, edges, std::move(label));
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << g.order() << ' ' << g.size() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

}  // namespace relpoly
