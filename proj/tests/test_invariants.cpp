#include "halllab/errors.hpp"
#include "halllab/generators.hpp"
#include "halllab/hall_ratio.hpp"
#include "halllab/independence.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace halllab;

namespace {

bool is_max_independent(const Graph& g, const std::vector<Vertex>& s, std::size_t expected) {
  return s.size() == expected && is_independent(g, s);
}

Graph edgeless(std::size_t n) { return Graph(n); }

}  // namespace

TEST_CASE("alpha_exact on named graphs") {
  CHECK(alpha_exact(oracle::complete(5)).size == 1);
  CHECK(alpha_exact(oracle::cycle(5)).size == 2);
  auto pet = alpha_exact(oracle::petersen());
  CHECK(pet.size == oracle::alpha(oracle::petersen()));
  CHECK(is_max_independent(oracle::petersen(), pet.vertices, 4));
  CHECK_THROWS_AS(alpha_exact(Graph{}), PreconditionError);
}

TEST_CASE("alpha_exact matches the subset oracle and the table on 500 random graphs") {
  std::mt19937 rng(101);
  for (int iter = 0; iter < 500; ++iter) {
    auto g = oracle::random_graph(1 + rng() % 16, 10 + rng() % 70, rng);
    auto r = alpha_exact(g);
    const auto expected = oracle::alpha(g);
    CHECK(r.size == expected);
    CHECK(is_max_independent(g, r.vertices, expected));
    AlphaTable t(g);
    CHECK(t[t.full_mask()] == expected);
    CHECK(alpha_weighted(g, WeightAssignment::uniform(g.order())).weight == Rational(static_cast<long>(expected)));
  }
}

TEST_CASE("alpha_exact budget is an explicit failure") {
  std::mt19937 rng(4);
  auto g = oracle::random_graph(60, 10, rng);
  CHECK_THROWS_AS(alpha_exact(g, SearchLimits{3}), BudgetExceeded);
}

TEST_CASE("alpha_weighted") {
  auto r = alpha_weighted(oracle::complete(3), WeightAssignment(std::vector<Rational>{1, 2, 3}));
  CHECK(r.weight == 3);
  CHECK(r.vertices == std::vector<Vertex>{2});

  WeightAssignment w(std::vector<Rational>{Rational(1, 3), 2, Rational(5, 7), 1});
  CHECK(alpha_weighted(edgeless(4), w).weight == w.total());

  CHECK(alpha_weighted(oracle::cycle(5), WeightAssignment::degrees(oracle::cycle(5))).weight == 4);
}

TEST_CASE("alpha_weighted matches brute force with rational weights") {
  std::mt19937 rng(202);
  for (int iter = 0; iter < 300; ++iter) {
    auto g = oracle::random_graph(1 + rng() % 13, 20 + rng() % 60, rng);
    std::vector<Rational> w(g.order());
    for (auto& x : w) {
      x = Rational(static_cast<long>(rng() % 9), static_cast<long>(1 + rng() % 6));
      x.canonicalize();
    }
    w[0] += 1;
    auto r = alpha_weighted(g, WeightAssignment(w));
    CHECK(r.weight == oracle::alpha_weighted(g, w));
    CHECK(is_independent(g, r.vertices));
    Rational sum(0);
    for (Vertex v : r.vertices) sum += w[v];
    CHECK(sum == r.weight);
  }
}

TEST_CASE("integer MWIS handles weights beyond 64-bit sums") {
  // large weights route through the arbitrary-precision path
  auto g = oracle::cycle(7);
  std::vector<Rational> w(7, Rational(Integer("100000000000000000000"), 1));
  w[3] = 1;
  auto r = alpha_weighted(g, WeightAssignment(w));
  CHECK(r.weight == oracle::alpha_weighted(g, w));
}

TEST_CASE("AlphaTable") {
  AlphaTable c5(oracle::cycle(5));
  CHECK(c5[c5.full_mask()] == 2);
  CHECK(c5[0] == 0);
  AlphaTable k4(oracle::complete(4));
  for (std::uint32_t s : {0b0111u, 0b1011u, 0b1101u, 0b1110u}) CHECK(k4[s] == 1);
  AlphaTable pet(oracle::petersen());
  CHECK(pet[pet.full_mask()] == alpha_exact(oracle::petersen()).size);
  CHECK_THROWS_AS(AlphaTable(Graph(25)), PreconditionError);

  std::mt19937 rng(7);
  auto g = oracle::random_graph(12, 35, rng);
  AlphaTable t(g);
  for (std::uint32_t s = 0; s <= t.full_mask(); ++s) {
    CHECK(t[s] <= __builtin_popcount(s));
    for (std::uint32_t r = s; r; r &= r - 1) CHECK(t[s & ~(r & -r)] <= t[s]);
  }
  for (std::uint32_t s = 0; s <= t.full_mask(); s += 37) CHECK(t[s] == oracle::alpha(g, s));
}

TEST_CASE("hall_ratio on named graphs") {
  for (std::size_t n = 1; n <= 6; ++n) CHECK(hall_ratio(oracle::complete(n)).value == static_cast<long>(n));
  auto c5 = hall_ratio(oracle::cycle(5));
  CHECK(c5.value == Rational(5, 2));
  CHECK(c5.witness == std::vector<Vertex>{0, 1, 2, 3, 4});
  CHECK(c5.exact);
  CHECK(hall_ratio(oracle::petersen()).value == Rational(5, 2));
  CHECK(hall_ratio(Graph(3)).value == 1);
  CHECK_THROWS_AS(hall_ratio(Graph(25)), PreconditionError);
}

TEST_CASE("hall_ratio ties prefer fewer vertices then the smaller mask") {
  // K_6 minus a perfect matching: 3 vertices of a triangle reach 3 = 6/2
  std::vector<Edge> e;
  for (Vertex i = 0; i < 6; ++i)
    for (Vertex j = i + 1; j < 6; ++j)
      if (j != i + 3) e.emplace_back(i, j);
  auto r = hall_ratio(build_graph(6, e));
  CHECK(r.value == 3);
  CHECK(r.witness == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("hall_ratio equals the full-subset oracle, with and without connectivity pruning") {
  std::mt19937 rng(303);
  for (int iter = 0; iter < 300; ++iter) {
    auto g = oracle::random_graph(1 + rng() % 12, 15 + rng() % 60, rng);
    const auto expected = oracle::hall_ratio(g);
    HallRatioOptions pruned, full;
    full.connected_only = false;
    auto a = hall_ratio(g, pruned), b = hall_ratio(g, full);
    CHECK(a.value == expected);
    CHECK(b.value == expected);
    // value is attained by the witness
    auto sub = induced_subgraph(g, a.witness);
    CHECK(make_rational(static_cast<long>(a.witness.size()), static_cast<long>(oracle::alpha(sub.graph))) == a.value);
    CHECK(a.value >= make_rational(static_cast<long>(g.order()), static_cast<long>(oracle::alpha(g))));
    CHECK(a.value >= static_cast<long>(clique_number(g)));
  }
}

TEST_CASE("bipartite graphs with an edge have Hall ratio 2") {
  std::mt19937 rng(9);
  for (int iter = 0; iter < 60; ++iter) {
    const std::size_t a = 1 + rng() % 6, b = 1 + rng() % 6;
    std::vector<Edge> e{{0, static_cast<Vertex>(a)}};
    for (Vertex i = 0; i < a; ++i)
      for (Vertex j = 0; j < b; ++j)
        if (rng() % 2) e.emplace_back(i, static_cast<Vertex>(a + j));
    CHECK(hall_ratio(build_graph(a + b, e)).value == 2);
  }
}

TEST_CASE("hall_ratio lower-bound mode on large graphs") {
  auto g = kneser(8, 3);  // 56 vertices
  HallRatioOptions o;
  o.mode = HallRatioOptions::Mode::Auto;
  auto r = hall_ratio(g, o);
  CHECK_FALSE(r.exact);
  CHECK(r.value >= make_rational(56, 21));
  auto sub = induced_subgraph(g, r.witness);
  CHECK(r.value == make_rational(static_cast<long>(r.witness.size()), static_cast<long>(alpha_exact(sub.graph).size)));
  CHECK(r.value <= Rational(8, 3));
}

TEST_CASE("clique number") {
  CHECK(clique_number(oracle::complete(5)) == 5);
  CHECK(clique_number(oracle::cycle(5)) == 2);
  CHECK(clique_number(oracle::petersen()) == oracle::clique(oracle::petersen()));
  std::mt19937 rng(17);
  for (int iter = 0; iter < 100; ++iter) {
    auto g = oracle::random_graph(1 + rng() % 14, 50, rng);
    CHECK(clique_number(g) == oracle::clique(g));
  }
}

TEST_CASE("Turan bound") {
  for (std::size_t n = 1; n <= 7; ++n) {
    CHECK(turan_bound(oracle::complete(n)) == static_cast<long>(n - 1));
    CHECK(turan_bound(oracle::complete(n)) == average_degree(oracle::complete(n)));
  }
  CHECK(turan_bound(Graph(6)) == 0);
  CHECK(turan_bound(oracle::cycle(5)) == Rational(3, 2));
  std::mt19937 rng(23);
  for (int iter = 0; iter < 300; ++iter) {
    auto g = oracle::random_graph(1 + rng() % 14, rng() % 100, rng);
    CHECK(average_degree(g) >= turan_bound(g));
  }
}

TEST_CASE("greedy cover coloring") {
  auto k5 = greedy_cover_coloring(oracle::complete(5));
  CHECK(k5.size() == 5);
  for (const auto& c : k5) CHECK(c.size() == 1);
  CHECK(greedy_cover_coloring(Graph(4)).size() == 1);
  auto c5 = greedy_cover_coloring(oracle::cycle(5));
  REQUIRE(c5.size() == 3);
  CHECK(c5[0].size() == 2);
  CHECK(c5[1].size() == 2);
  CHECK(c5[2].size() == 1);

  std::mt19937 rng(29);
  for (int iter = 0; iter < 150; ++iter) {
    auto g = oracle::random_graph(2 + rng() % 12, rng() % 90, rng);
    auto classes = greedy_cover_coloring(g);
    std::vector<int> seen(g.order(), 0);
    std::vector<bool> removed(g.order(), false);
    for (const auto& c : classes) {
      CHECK(is_independent(g, c));
      // each class is a maximum independent set of what was left
      std::uint32_t rest = 0;
      for (Vertex v = 0; v < g.order(); ++v)
        if (!removed[v]) rest |= 1u << v;
      CHECK(c.size() == oracle::alpha(g, rest));
      for (Vertex v : c) {
        ++seen[v];
        removed[v] = true;
      }
    }
    for (int s : seen) CHECK(s == 1);
    const double rho = to_double(hall_ratio(g).value);
    CHECK(static_cast<double>(classes.size()) <= std::ceil(rho * std::log(double(g.order()))) + 1);
  }
}
