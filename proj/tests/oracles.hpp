#pragma once

// Brute-force reference implementations, deliberately naive and independent
// of the library's search code.

#include "halllab/graph.hpp"
#include "halllab/rational.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using halllab::Edge;
using halllab::Graph;
using halllab::Rational;
using halllab::Vertex;

inline Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return halllab::build_graph(n, e);
}

inline Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return halllab::build_graph(n, e);
}

inline Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return halllab::build_graph(n, e);
}

inline Graph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < a; ++i)
    for (Vertex j = 0; j < b; ++j) e.emplace_back(i, static_cast<Vertex>(a + j));
  return halllab::build_graph(a + b, e);
}

inline Graph petersen() {
  std::vector<Edge> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(i + 5, (i + 2) % 5 + 5);
  }
  return halllab::build_graph(10, e);
}

/// Edge probability pct/100, from a generator unrelated to the library's.
inline Graph random_graph(std::size_t n, unsigned pct, std::mt19937& rng) {
  std::vector<Edge> e;
  std::uniform_int_distribution<unsigned> d(0, 99);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (d(rng) < pct) e.emplace_back(i, j);
  return halllab::build_graph(n, e);
}

inline std::vector<std::uint32_t> masks(const Graph& g) {
  std::vector<std::uint32_t> m(g.order(), 0);
  for (auto [u, v] : g.edges()) {
    m[u] |= 1u << v;
    m[v] |= 1u << u;
  }
  return m;
}

inline bool independent(const std::vector<std::uint32_t>& adj, std::uint32_t s) {
  for (std::size_t v = 0; v < adj.size(); ++v)
    if ((s >> v & 1) && (adj[v] & s)) return false;
  return true;
}

/// Largest independent subset of `within`, by scanning every subset.
inline std::size_t alpha(const Graph& g, std::uint32_t within) {
  const auto adj = masks(g);
  std::size_t best = 0;
  for (std::uint32_t s = within;; s = (s - 1) & within) {
    if (static_cast<std::size_t>(__builtin_popcount(s)) > best && independent(adj, s))
      best = static_cast<std::size_t>(__builtin_popcount(s));
    if (s == 0) break;
  }
  return best;
}

inline std::size_t alpha(const Graph& g) { return alpha(g, static_cast<std::uint32_t>((1ull << g.order()) - 1)); }

inline Rational alpha_weighted(const Graph& g, const std::vector<Rational>& w) {
  const auto adj = masks(g);
  Rational best(0);
  for (std::uint32_t s = 0; s < (1u << g.order()); ++s) {
    if (!independent(adj, s)) continue;
    Rational t(0);
    for (std::size_t v = 0; v < g.order(); ++v)
      if (s >> v & 1) t += w[v];
    if (t > best) best = t;
  }
  return best;
}

inline std::size_t clique(const Graph& g) { return alpha(halllab::complement(g)); }

/// max |S|/alpha(S) over nonempty S; alpha per subset by recomputation.
inline Rational hall_ratio(const Graph& g) {
  const auto adj = masks(g);
  const std::uint32_t full = static_cast<std::uint32_t>((1ull << g.order()) - 1);
  std::vector<std::uint8_t> a(full + 1, 0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    // alpha(S) = max over independent T subset of S, computed by the
    // "drop one vertex" closure
    if (independent(adj, s)) {
      a[s] = static_cast<std::uint8_t>(__builtin_popcount(s));
      continue;
    }
    std::uint8_t m = 0;
    for (std::uint32_t r = s; r; r &= r - 1) m = std::max(m, a[s & ~(r & -r)]);
    a[s] = m;
  }
  Rational best(0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    Rational r(__builtin_popcount(s), a[s]);
    r.canonicalize();
    if (r > best) best = r;
  }
  return best;
}

/// Vertices surviving repeated deletion of all vertices of degree < t,
/// recomputing degrees from scratch each round.
inline std::vector<Vertex> t_core(const Graph& g, std::size_t t) {
  std::vector<bool> alive(g.order(), true);
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<Vertex> drop;
    for (Vertex v = 0; v < g.order(); ++v) {
      if (!alive[v]) continue;
      std::size_t d = 0;
      for (Vertex u : g.neighbors(v)) d += alive[u];
      if (d < t) drop.push_back(v);
    }
    for (Vertex v : drop) alive[v] = false;
    changed = !drop.empty();
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.order(); ++v)
    if (alive[v]) out.push_back(v);
  return out;
}

}  // namespace oracle
