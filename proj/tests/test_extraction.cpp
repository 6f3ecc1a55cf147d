#include "halllab/errors.hpp"
#include "halllab/extraction.hpp"
#include "halllab/fractional.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace halllab;

TEST_CASE("max-cut bipartization") {
  CHECK(max_cut_bipartize(oracle::complete(2)).graph.size() == 1);
  CHECK(max_cut_bipartize(oracle::cycle(4)).graph.size() == 4);
  CHECK(max_cut_bipartize(oracle::complete(4)).graph.size() == 4);

  std::mt19937 rng(41);
  for (int iter = 0; iter < 200; ++iter) {
    auto g = oracle::random_graph(1 + rng() % 30, rng() % 100, rng);
    auto b = max_cut_bipartize(g);
    CHECK(2 * b.graph.size() >= g.size());
    CHECK(b.graph.order() == g.order());
    CHECK(is_valid_bipartition(b.graph, b.parts));
    for (auto [u, v] : b.graph.edges()) CHECK(g.adjacent(u, v));
  }
}

TEST_CASE("peeling gives the unique t-core") {
  auto c5 = oracle::cycle(5);
  CHECK(peel_min_degree(c5, 2).graph == c5);
  CHECK(peel_min_degree(c5, 3).graph.empty());
  std::vector<Edge> e;
  for (Vertex i = 0; i < 5; ++i)
    for (Vertex j = i + 1; j < 5; ++j) e.emplace_back(i, j);
  e.emplace_back(4, 5);
  auto core = peel_min_degree(build_graph(6, e), 4);
  CHECK(core.graph == oracle::complete(5));
  CHECK(core.to_parent == std::vector<Vertex>{0, 1, 2, 3, 4});

  std::mt19937 rng(43);
  for (int iter = 0; iter < 200; ++iter) {
    auto g = oracle::random_graph(1 + rng() % 25, 10 + rng() % 50, rng);
    const std::size_t t = rng() % 7;
    auto core = peel_min_degree(g, t);
    CHECK(core.to_parent == oracle::t_core(g, t));
    for (Vertex v = 0; v < core.graph.order(); ++v) CHECK(core.graph.degree(v) >= t);
    // idempotent
    CHECK(peel_min_degree(core.graph, t).graph == core.graph);
  }
}

TEST_CASE("selection on a complete bipartite graph takes B = B2") {
  const std::size_t q = 2, b = 5, a = 3;
  auto kab = oracle::complete_bipartite(q * b, b);
  Bipartition parts;
  for (Vertex v = 0; v < q * b; ++v) parts.side_a.push_back(v);
  for (Vertex v = 0; v < b; ++v) parts.side_b.push_back(static_cast<Vertex>(q * b + v));
  auto e = select_semiregular(kab, parts, a, q, Seed{1});
  REQUIRE(e.ok());
  CHECK(e.trace.deterministic_b);
  CHECK(check_semiregular(*e.pair));
  CHECK(e.pair->parts.side_b.size() == b);
  // trimmed to the a smallest-id B-neighbors
  for (Vertex v : e.pair->parts.side_a) {
    std::vector<Vertex> nb;
    for (Vertex u : e.pair->graph.neighbors(v)) nb.push_back(e.to_host[u]);
    CHECK(nb == std::vector<Vertex>{10, 11, 12});
  }
}

TEST_CASE("extraction from G(n, 1/2) meets the pair invariants and embeds in G") {
  auto g = gnp(400, Rational(1, 2), Seed{17});
  auto e = extract_semiregular(g, 4, 2, Seed{5});
  REQUIRE(e.ok());
  const auto& pair = *e.pair;
  CHECK(check_semiregular(pair));
  CHECK(pair.parts.side_a.size() == 2 * pair.parts.side_b.size());
  CHECK(2 * e.trace.bipartite_edges >= e.trace.input_edges);
  CHECK(e.trace.peel_threshold == 64);
  for (auto [u, v] : pair.graph.edges()) CHECK(g.adjacent(e.to_host[u], e.to_host[v]));
  auto sorted = e.to_host;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  // a < 20 triggers a soft warning, not a rejection
  CHECK_FALSE(e.trace.warnings.empty());
  // same seed, same pair
  auto again = extract_semiregular(g, 4, 2, Seed{5});
  CHECK(again.to_host == e.to_host);
}

TEST_CASE("extraction from G(n, 1/2) with sampled B") {
  // q|B2| > |A2| forces the sampling branch
  auto g = gnp(500, Rational(1, 2), Seed{23});
  auto e = extract_semiregular(g, 3, 3, Seed{9});
  REQUIRE(e.ok());
  CHECK_FALSE(e.trace.deterministic_b);
  CHECK(check_semiregular(*e.pair));
  CHECK(e.trace.sampled_b == e.pair->parts.side_b.size());
}

TEST_CASE("extraction failures carry the trace") {
  auto e = extract_semiregular(Graph(10), 20, 1, Seed{1});
  CHECK_FALSE(e.ok());
  CHECK_FALSE(e.trace.failure.empty());
  CHECK(e.trace.warnings.size() >= 1);
  auto sparse = extract_semiregular(oracle::cycle(30), 2, 1, Seed{1});
  CHECK_FALSE(sparse.ok());
  CHECK(sparse.trace.peel_survivors == 0);
}

TEST_CASE("weight threshold comparison is exact") {
  // (sqrt(q) a + q) |B| with q = 16, a = 4, |B| = 8 is 256
  CHECK(below_weight_threshold(255, 4, 16, 8));
  CHECK_FALSE(below_weight_threshold(256, 4, 16, 8));
  CHECK(below_weight_threshold(Rational(511, 2), 4, 16, 8));
  // irrational threshold for q = 2: (sqrt(2)*3 + 2)*5 = 31.213...
  CHECK(below_weight_threshold(Rational(3121, 100), 3, 2, 5));
  CHECK_FALSE(below_weight_threshold(make_rational(3122, 100), 3, 2, 5));
  std::mt19937 rng(47);
  for (int iter = 0; iter < 500; ++iter) {
    const std::size_t a = 1 + rng() % 10, q = 1 + rng() % 10, b = 1 + rng() % 10;
    const Rational alpha(static_cast<long>(rng() % 4000), 7);
    const double threshold = (std::sqrt(double(q)) * double(a) + double(q)) * double(b);
    const double x = to_double(alpha);
    if (std::abs(x - threshold) > 1e-6) CHECK(below_weight_threshold(alpha, a, q, b) == (x < threshold));
  }
}

TEST_CASE("H_B trials are reproducible and schedule-independent") {
  auto pair = random_semiregular(8, 4, 16, Seed{77});
  auto serial = hb_certification_trials(pair, Seed{3}, 24, 1);
  auto parallel = hb_certification_trials(pair, Seed{3}, 24, 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].index == i);
    CHECK(serial[i].alpha_weighted == parallel[i].alpha_weighted);
    CHECK(serial[i].certified == parallel[i].certified);
    CHECK(serial[i].edges == parallel[i].edges);
  }
  // certification agrees with the chi_f lower bound exceeding c = 2
  for (const auto& t : serial) {
    CHECK(t.certified == (t.alpha_weighted < 256));
    CHECK(t.chi_f_lower == Rational(512) / t.alpha_weighted);
    if (t.certified) CHECK(t.chi_f_lower > 2);
  }
}

TEST_CASE("thm1 pipeline at c = 1") {
  auto g = gnp(700, Rational(1, 2), Seed{5});
  auto r = theorem1_pipeline(g, 1, Seed{11}, 20);
  CHECK(r.a == 2);
  CHECK(r.q == 4);
  CHECK(r.target == 1);
  CHECK(r.required_average_degree == 256);
  REQUIRE(r.extraction.ok());
  CHECK(check_semiregular(*r.extraction.pair));
  CHECK(r.trials.size() == 20);
  std::size_t certified = 0;
  for (const auto& t : r.trials) {
    certified += t.certified;
    if (t.certified) CHECK(t.chi_f_lower > 1);
  }
  CHECK(certified == r.certified);
  CHECK(certified > 0);
}

TEST_CASE("thm1 target arithmetic") {
  auto g = gnp(60, Rational(1, 2), Seed{5});
  auto r3 = theorem1_pipeline(g, 3, Seed{1}, 0);
  CHECK(r3.a == 6);
  CHECK(r3.q == 36);
  CHECK(r3.target == 3);
  auto r10 = theorem1_pipeline(g, 10, Seed{1}, 0);
  CHECK(r10.required_average_degree == 256000);
  CHECK(r10.target == 10);
  CHECK_FALSE(r10.extraction.ok());
}
