#include <doctest.h>

#include <set>

#include "relpoly/graph.hpp"

using namespace relpoly;

TEST_SUITE("graph") {

TEST_CASE("named families") {
  const Graph p3 = make_path(3);
  CHECK(p3.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(p3.label() == "P3");
  CHECK(make_path(1).size() == 0);
  CHECK_THROWS_AS(make_path(0), GraphError);
  CHECK_THROWS_AS(make_cycle(2), GraphError);
  CHECK_THROWS_AS(make_complete(0), GraphError);
  CHECK_THROWS_AS(make_complete_bipartite(0, 3), GraphError);

  CHECK(make_complete(6).size() == 15);
  CHECK(make_complete_bipartite(3, 4).size() == 12);
  CHECK(make_star(5).order() == 6);
  CHECK(make_star(5).degree(5) == 5);
}

TEST_CASE("stats") {
  auto c5 = stats(make_cycle(5));
  CHECK(c5.order == 5);
  CHECK(c5.size == 5);
  CHECK(c5.triangles == 0);
  CHECK(c5.cut_nodes == 0);

  auto p4 = stats(make_path(4));
  CHECK(p4.cut_nodes == 2);
  CHECK(p4.degrees == std::vector<std::size_t>{1, 2, 2, 1});

  auto pet = stats(make_petersen());
  CHECK(pet.order == 10);
  CHECK(pet.size == 15);
  CHECK(pet.triangles == 0);
  CHECK(pet.cut_nodes == 0);
  for (auto d : pet.degrees) CHECK(d == 3);

  CHECK(stats(make_complete(5)).triangles == 10);
  CHECK(stats(make_star(4)).cut_nodes == 1);
  CHECK(stats(make_path(2)).cut_nodes == 0);
}

TEST_CASE("petersen has girth 5") {
  const Graph g = make_petersen();
  // no 4-cycles: any two nodes share at most one neighbor
  for (Node u = 0; u < 10; ++u) {
    for (Node v = u + 1; v < 10; ++v) {
      int common = 0;
      for (Node w = 0; w < 10; ++w) common += g.adjacent(u, w) && g.adjacent(v, w);
      CHECK(common <= 1);
      if (!g.adjacent(u, v)) CHECK(common == 1);
    }
  }
}

TEST_CASE("apex join") {
  const Graph g = apex_join(make_path(4));
  CHECK(g.order() == 5);
  CHECK(g.size() == 3 + 4);
  CHECK(g.degree(4) == 4);
  CHECK(g.label() == "(P4+v)");
}

TEST_CASE("lexicographic product") {
  CHECK(lex_product(make_complete(2), make_complete(2)) == make_complete(4));
  const Graph octahedron = lex_product(make_complete(3), make_empty(2));
  CHECK(octahedron.size() == 12);
  for (Node v = 0; v < 6; ++v) CHECK(octahedron.degree(v) == 4);
  CHECK(lex_product(make_path(3), make_complete(2)).label() == "P3*K2");

  // size(G*H) = m_G n_H^2 + n_G m_H and the adjacency rule, checked pairwise
  const std::vector<Graph> gs{make_path(3), make_cycle(4), make_star(3), make_complete(3)};
  const std::vector<Graph> hs{make_path(2), make_empty(3), make_cycle(3), make_path(4)};
  for (const auto& g : gs) {
    for (const auto& h : hs) {
      const Graph p = lex_product(g, h);
      const std::size_t nh = h.order();
      CHECK(p.order() == g.order() * nh);
      CHECK(p.size() == g.size() * nh * nh + g.order() * h.size());
      for (Node a = 0; a < p.order(); ++a) {
        for (Node b = a + 1; b < p.order(); ++b) {
          const Node u = a / nh, x = a % nh, v = b / nh, y = b % nh;
          const bool expect = g.adjacent(u, v) || (u == v && h.adjacent(x, y));
          CHECK(p.adjacent(a, b) == expect);
        }
      }
    }
  }
}

TEST_CASE("unions and connectivity") {
  const Graph u = disjoint_union(make_complete(3), make_path(2));
  CHECK(u.order() == 5);
  CHECK(u.size() == 4);
  CHECK(u.adjacent(3, 4));
  CHECK_FALSE(is_connected(u));
  CHECK(disjoint_copies(make_complete(2), 3).size() == 3);
  CHECK(disjoint_copies(make_complete(2), 0).order() == 0);
  CHECK_FALSE(is_connected(Graph{}));
  CHECK(is_connected(make_path(1)));
  CHECK(is_connected(make_petersen()));
}

TEST_CASE("constructor rejects bad edges") {
  const std::vector<Edge> loop{{1, 1}};
  const std::vector<Edge> dup{{0, 1}, {1, 0}};
  const std::vector<Edge> range{{0, 3}};
  CHECK_THROWS_AS(Graph(2, loop), GraphError);
  CHECK_THROWS_AS(Graph(2, dup), GraphError);
  CHECK_THROWS_AS(Graph(3, range), GraphError);
}

TEST_CASE("edge list parsing") {
  const Graph g = parse_graph("# triangle\n3 3\n0 1\n1 2\n\n2 0  # closing edge\n");
  CHECK(g == make_complete(3));
  CHECK(serialize_graph(g) == "3 3\n0 1\n0 2\n1 2\n");
  CHECK(parse_graph(serialize_graph(make_petersen())) == make_petersen());

  auto kind_of = [](std::string_view text) {
    try {
      parse_graph(text);
    } catch (const ParseError& e) {
      return e.kind();
    }
    FAIL("no error");
    return ParseErrorKind::malformed_header;
  };
  CHECK(kind_of("2 1\n0 0\n") == ParseErrorKind::self_loop);
  CHECK(kind_of("2 2\n0 1\n1 0\n") == ParseErrorKind::duplicate_edge);
  CHECK(kind_of("2 1\n0 2\n") == ParseErrorKind::endpoint_out_of_range);
  CHECK(kind_of("3 2\n0 1\n") == ParseErrorKind::edge_count_mismatch);
  CHECK(kind_of("3 1\n0 x\n") == ParseErrorKind::malformed_edge);
  CHECK(kind_of("three\n") == ParseErrorKind::malformed_header);
  CHECK(kind_of("") == ParseErrorKind::malformed_header);
  try {
    parse_graph("3 2\n0 1\n1 1\n");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

}
