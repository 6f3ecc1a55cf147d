#include "halllab/errors.hpp"
#include "halllab/graph.hpp"
#include "halllab/graph_io.hpp"
#include "halllab/rational.hpp"
#include "halllab/vertex_set.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace halllab;

namespace {

std::size_t parse_error_line(std::string_view text) {
  try {
    parse_edge_list(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("build_graph deduplicates and keeps adjacency symmetric") {
  const std::vector<Edge> e{{0, 1}, {1, 2}, {0, 1}};
  auto g = build_graph(3, e);
  CHECK(g.order() == 3);
  CHECK(g.size() == 2);
  CHECK(check_graph_invariants(g));
  CHECK(g.adjacent(1, 0));
  CHECK_FALSE(g.adjacent(0, 2));

  auto single = build_graph(1, std::vector<Edge>{});
  CHECK(single.order() == 1);
  CHECK(single.size() == 0);

  auto c5 = oracle::cycle(5);
  for (Vertex v = 0; v < 5; ++v) CHECK(c5.degree(v) == 2);
}

TEST_CASE("build_graph rejects loops and bad ids naming the pair") {
  const std::vector<Edge> loop{{1, 1}};
  CHECK_THROWS_AS(build_graph(3, loop), GraphError);
  const std::vector<Edge> bad{{0, 3}};
  try {
    build_graph(3, bad);
    FAIL("no error");
  } catch (const GraphError& e) {
    CHECK(std::string(e.what()).find("(0,3)") != std::string::npos);
  }
}

TEST_CASE("induced subgraphs") {
  auto c5 = oracle::cycle(5);
  const std::vector<Vertex> three{1, 2, 3};
  auto p = induced_subgraph(c5, three);
  CHECK(p.graph == oracle::path(3));
  CHECK(p.to_parent == three);

  const std::vector<Vertex> two{0, 3};
  CHECK(induced_subgraph(oracle::complete(4), two).graph.size() == 1);

  // an independent set of size alpha(Petersen) = 4 from the brute-force oracle
  auto pet = oracle::petersen();
  REQUIRE(oracle::alpha(pet) == 4);
  const auto adj = oracle::masks(pet);
  std::vector<Vertex> ind;
  for (std::uint32_t s = 0; s < 1024 && ind.empty(); ++s)
    if (__builtin_popcount(s) == 4 && oracle::independent(adj, s))
      for (Vertex v = 0; v < 10; ++v)
        if (s >> v & 1) ind.push_back(v);
  auto sub = induced_subgraph(pet, ind);
  CHECK(sub.graph.order() == 4);
  CHECK(sub.graph.size() == 0);

  const std::vector<Vertex> out_of_range{0, 5};
  CHECK_THROWS(induced_subgraph(c5, out_of_range));
}

TEST_CASE("induced subgraphs never gain edges or degree") {
  std::mt19937 rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    auto g = oracle::random_graph(1 + rng() % 12, 40, rng);
    std::vector<Vertex> s;
    for (Vertex v = 0; v < g.order(); ++v)
      if (rng() % 2) s.push_back(v);
    auto sub = induced_subgraph(g, s);
    CHECK(check_graph_invariants(sub.graph));
    CHECK(sub.graph.size() <= g.size());
    for (Vertex i = 0; i < sub.graph.order(); ++i) {
      CHECK(sub.graph.degree(i) <= g.degree(sub.to_parent[i]));
      for (Vertex j = 0; j < sub.graph.order(); ++j)
        if (i != j) CHECK(sub.graph.adjacent(i, j) == g.adjacent(sub.to_parent[i], sub.to_parent[j]));
    }
  }
}

TEST_CASE("degree sums and average degree") {
  auto c5 = oracle::cycle(5);
  const std::vector<Vertex> all{0, 1, 2, 3, 4};
  CHECK(degree_sum(c5, all) == 10);
  const std::vector<Vertex> two{0, 1};
  CHECK(degree_sum(oracle::complete(4), two) == 6);
  CHECK(degree_sum(c5, std::vector<Vertex>{}) == 0);
  const std::vector<Vertex> bad{7};
  CHECK_THROWS(degree_sum(c5, bad));

  CHECK(average_degree(oracle::complete(4)) == 3);
  CHECK(average_degree(c5) == 2);
  CHECK(average_degree(oracle::complete_bipartite(1, 9)) == Rational(9, 5));
  CHECK_THROWS_AS(average_degree(Graph{}), PreconditionError);

  std::mt19937 rng(3);
  for (int iter = 0; iter < 50; ++iter) {
    auto g = oracle::random_graph(1 + rng() % 15, 50, rng);
    std::vector<Vertex> v(g.order());
    for (Vertex i = 0; i < g.order(); ++i) v[i] = i;
    CHECK(degree_sum(g, v) == 2 * g.size());
  }
}

TEST_CASE("edge-list codec") {
  auto p3 = parse_edge_list("3 2\n0 1\n1 2\n");
  CHECK(p3 == oracle::path(3));

  auto c5 = oracle::cycle(5);
  CHECK(parse_edge_list(emit_edge_list(c5)) == c5);
  CHECK(emit_edge_list(c5) == "5 5\n0 1\n0 4\n1 2\n2 3\n3 4\n");

  // canonicalization: unsorted input emits sorted
  CHECK(emit_edge_list(parse_edge_list("3 2\n2 1\n1 0\n")) == "3 2\n0 1\n1 2\n");
  // trailing blank lines and CRLF are accepted
  CHECK(parse_edge_list("2 1\r\n1 0\r\n\n\n").size() == 1);

  CHECK(parse_error_line("2 1\n0 0\n") == 2);
  CHECK(parse_error_line("3 2\n0 1\n1 0\n") == 3);
  CHECK(parse_error_line("3 2\n0 1\n") == 3);
  CHECK(parse_error_line("3 1\n0 1\n1 2\n") == 3);
  CHECK(parse_error_line("3 1\n0 x\n") == 2);
  CHECK(parse_error_line("3 1\n0 5\n") == 2);
  CHECK(parse_error_line("3\n") == 1);
  CHECK(parse_error_line("") == 1);
  CHECK(parse_error_line("3 1\n0 1 2\n") == 2);
}

TEST_CASE("edge-list round trip on random graphs") {
  std::mt19937 rng(5);
  for (int iter = 0; iter < 100; ++iter) {
    auto g = oracle::random_graph(rng() % 20, 30, rng);
    const auto text = emit_edge_list(g);
    CHECK(parse_edge_list(text) == g);
    CHECK(emit_edge_list(parse_edge_list(text)) == text);
    CHECK(graph_hash(parse_edge_list(text)) == graph_hash(g));
  }
}

TEST_CASE("DIMACS reader") {
  const char* text =
      "c a triangle plus a pendant\n"
      "p edge 4 5\n"
      "e 1 2\ne 2 3\ne 3 1\ne 3 4\ne 2 1\n";
  auto g = parse_dimacs(text);
  CHECK(g.order() == 4);
  CHECK(g.size() == 4);
  CHECK(g.adjacent(2, 3));
  CHECK(parse_graph_auto(text) == g);
  CHECK(parse_graph_auto("2 1\n0 1\n").size() == 1);
  CHECK_THROWS_AS(parse_dimacs("p edge 2 1\ne 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("e 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p edge 2 1\nx 1 2\n"), ParseError);
}

TEST_CASE("complement, bipartitions and weights") {
  auto c5 = oracle::cycle(5);
  auto cc = complement(c5);
  CHECK(cc.size() == 5);
  CHECK(complement(cc) == c5);

  auto k23 = oracle::complete_bipartite(2, 3);
  CHECK(is_valid_bipartition(k23, Bipartition{{0, 1}, {2, 3, 4}}));
  CHECK_FALSE(is_valid_bipartition(k23, Bipartition{{0, 2}, {1, 3, 4}}));
  CHECK_FALSE(is_valid_bipartition(k23, Bipartition{{0, 1}, {2, 3}}));

  CHECK_THROWS_AS(WeightAssignment(std::vector<Rational>{0, 0}), PreconditionError);
  CHECK_THROWS_AS(WeightAssignment(std::vector<Rational>{1, -1}), PreconditionError);
  WeightAssignment w(std::vector<Rational>{Rational(1, 2), 0, 3});
  CHECK(w.total() == Rational(7, 2));
  CHECK(WeightAssignment::degrees(c5).total() == 10);
}

TEST_CASE("rationals are canonical") {
  CHECK(to_string(parse_rational("10/4")) == "5/2");
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("3") == 3);
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK(make_rational(6, 4).get_den() == 2);
}

TEST_CASE("vertex sets") {
  VertexSet s(70);
  s.insert(3);
  s.insert(69);
  CHECK(s.count() == 2);
  CHECK(s.contains(69));
  CHECK(s.to_vector() == std::vector<Vertex>{3, 69});
  s.erase(3);
  CHECK(s.first() == 69);
  CHECK(VertexSet::full(70).count() == 70);
}
