#include "halllab/graph.hpp"

#include "halllab/errors.hpp"

#include <algorithm>
#include <string>

namespace halllab {

bool Graph::adjacent(Vertex u, Vertex v) const {
  if (u >= order() || v >= order()) return false;
  const auto& nu = adj_[u];
  const auto& nv = adj_[v];
  if (nu.size() <= nv.size()) return std::binary_search(nu.begin(), nu.end(), v);
  return std::binary_search(nv.begin(), nv.end(), u);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (Vertex u = 0; u < order(); ++u)
    for (Vertex v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

GraphBuilder& GraphBuilder::add_edge(Vertex u, Vertex v) {
  if (u >= n_ || v >= n_)
    throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                     ") has an id out of range for " + std::to_string(n_) + " vertices");
  if (u == v)
    throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") is a self-loop");
  pending_.emplace_back(std::min(u, v), std::max(u, v));
  return *this;
}

Graph GraphBuilder::build() && {
  std::sort(pending_.begin(), pending_.end());
  pending_.erase(std::unique(pending_.begin(), pending_.end()), pending_.end());
  Graph g(n_);
  std::vector<std::size_t> deg(n_, 0);
  for (auto [u, v] : pending_) {
    ++deg[u];
    ++deg[v];
  }
  for (std::size_t v = 0; v < n_; ++v) g.adj_[v].reserve(deg[v]);
  for (auto [u, v] : pending_) {
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  // Lexicographic pending_ order leaves u-lists sorted already, v-lists need it.
  for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
  g.m_ = pending_.size();
  return g;
}

Graph build_graph(std::size_t n, std::span<const Edge> edges) {
  GraphBuilder b(n);
  for (auto [u, v] : edges) b.add_edge(u, v);
  return std::move(b).build();
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> subset) {
  std::vector<Vertex> verts(subset.begin(), subset.end());
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  constexpr Vertex absent = ~Vertex{0};
  std::vector<Vertex> local(g.order(), absent);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (verts[i] >= g.order())
      throw GraphError("vertex " + std::to_string(verts[i]) + " out of range");
    local[verts[i]] = static_cast<Vertex>(i);
  }
  GraphBuilder b(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (Vertex u : g.neighbors(verts[i]))
      if (local[u] != absent && local[u] > i) b.add_edge(static_cast<Vertex>(i), local[u]);
  return {std::move(b).build(), std::move(verts)};
}

std::size_t degree_sum(const Graph& g, std::span<const Vertex> subset) {
  std::size_t total = 0;
  for (Vertex v : subset) {
    if (v >= g.order()) throw GraphError("vertex " + std::to_string(v) + " out of range");
    total += g.degree(v);
  }
  return total;
}

Rational average_degree(const Graph& g) {
  if (g.empty()) throw PreconditionError("average degree of the empty graph");
  Rational r(Integer(2) * Integer(static_cast<unsigned long>(g.size())),
             Integer(static_cast<unsigned long>(g.order())));
  r.canonicalize();
  return r;
}

Graph complement(const Graph& g) {
  GraphBuilder b(g.order());
  for (Vertex u = 0; u < g.order(); ++u) {
    auto nb = g.neighbors(u);
    auto it = nb.begin();
    for (Vertex v = u + 1; v < g.order(); ++v) {
      while (it != nb.end() && *it < v) ++it;
      if (it == nb.end() || *it != v) b.add_edge(u, v);
    }
  }
  return std::move(b).build();
}

Graph spanning_subgraph(const Graph& g, std::span<const Edge> edges) {
  GraphBuilder b(g.order());
  for (auto [u, v] : edges) {
    if (!g.adjacent(u, v))
      throw GraphError("(" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge");
    b.add_edge(u, v);
  }
  return std::move(b).build();
}

bool is_independent(const Graph& g, std::span<const Vertex> set) {
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (set[i] == set[j] || g.adjacent(set[i], set[j])) return false;
  return true;
}

bool check_graph_invariants(const Graph& g, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  std::size_t total = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    auto nb = g.neighbors(v);
    total += nb.size();
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] >= g.order()) return fail("neighbor id out of range at vertex " + std::to_string(v));
      if (nb[i] == v) return fail("self-loop at vertex " + std::to_string(v));
      if (i && nb[i - 1] >= nb[i]) return fail("unsorted or repeated neighbor at vertex " + std::to_string(v));
      auto back = g.neighbors(nb[i]);
      if (!std::binary_search(back.begin(), back.end(), v))
        return fail("asymmetric adjacency between " + std::to_string(v) + " and " + std::to_string(nb[i]));
    }
  }
  if (total != 2 * g.size()) return fail("edge count does not match degree sum");
  return true;
}

bool is_valid_bipartition(const Graph& g, const Bipartition& parts) {
  std::vector<int> side(g.order(), -1);
  for (Vertex v : parts.side_a) {
    if (v >= g.order() || side[v] != -1) return false;
    side[v] = 0;
  }
  for (Vertex v : parts.side_b) {
    if (v >= g.order() || side[v] != -1) return false;
    side[v] = 1;
  }
  for (int s : side)
    if (s < 0) return false;
  for (auto [u, v] : g.edges())
    if (side[u] == side[v]) return false;
  return true;
}

WeightAssignment::WeightAssignment(std::vector<Rational> weights) : weights_(std::move(weights)) {
  bool positive = false;
  for (const auto& w : weights_) {
    if (sgn(w) < 0) throw PreconditionError("negative vertex weight " + w.get_str());
    if (sgn(w) > 0) positive = true;
  }
  if (!positive) throw PreconditionError("weight assignment is identically zero");
}

WeightAssignment WeightAssignment::uniform(std::size_t n) {
  return WeightAssignment(std::vector<Rational>(n, Rational(1)));
}

WeightAssignment WeightAssignment::degrees(const Graph& g) {
  std::vector<Rational> w;
  w.reserve(g.order());
  for (Vertex v = 0; v < g.order(); ++v) w.emplace_back(static_cast<unsigned long>(g.degree(v)));
  return WeightAssignment(std::move(w));
}

Rational WeightAssignment::total() const {
  Rational t = 0;
  for (const auto& w : weights_) t += w;
  return t;
}

Rational WeightAssignment::total(std::span<const Vertex> set) const {
  Rational t = 0;
  for (Vertex v : set) t += weights_.at(v);
  return t;
}

}  // namespace halllab
