#pragma once

#include "halllab/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace halllab {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on dense ids 0..n-1. Immutable once built;
/// neighbor lists are sorted ascending.
class Graph {
 public:
  Graph() = default;
  /// Edgeless graph on n vertices.
  explicit Graph(std::size_t n) : adj_(n) {}

  std::size_t order() const { return adj_.size(); }
  std::size_t size() const { return m_; }
  bool empty() const { return adj_.empty(); }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(v); }
  std::size_t degree(Vertex v) const { return adj_.at(v).size(); }
  bool adjacent(Vertex u, Vertex v) const;

  /// Canonical edge list: u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend class GraphBuilder;
  std::vector<std::vector<Vertex>> adj_;
  std::size_t m_ = 0;
};

/// Accumulates edges, validating each one; parallel edges collapse.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n) : n_(n) {}

  /// Throws GraphError on out-of-range ids or a self-loop.
  GraphBuilder& add_edge(Vertex u, Vertex v);
  std::size_t order() const { return n_; }
  Graph build() &&;

 private:
  std::size_t n_;
  std::vector<Edge> pending_;
};

Graph build_graph(std::size_t n, std::span<const Edge> edges);

/// Result of taking an induced subgraph: `to_parent[i]` is the id in the
/// original graph of vertex i in `graph`.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_parent;
};

/// Vertices of `subset` keep their relative (ascending id) order.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> subset);

std::size_t degree_sum(const Graph& g, std::span<const Vertex> subset);

/// Exact 2m/n. Throws PreconditionError on the empty graph.
Rational average_degree(const Graph& g);

Graph complement(const Graph& g);

/// Spanning subgraph keeping only `edges` (which must be edges of g).
Graph spanning_subgraph(const Graph& g, std::span<const Edge> edges);

bool is_independent(const Graph& g, std::span<const Vertex> set);

/// Fails with a description when the adjacency structure is not a simple
/// symmetric loop-free graph. Used by tests and on deserialized input.
bool check_graph_invariants(const Graph& g, std::string* why = nullptr);

/// Two-sided vertex partition of a graph.
struct Bipartition {
  std::vector<Vertex> side_a;
  std::vector<Vertex> side_b;
};

/// True when the sides are disjoint, cover all vertices and every edge crosses.
bool is_valid_bipartition(const Graph& g, const Bipartition& parts);

/// Nonnegative rational vertex weights, not all zero.
class WeightAssignment {
 public:
  /// Throws PreconditionError when a weight is negative or all are zero.
  explicit WeightAssignment(std::vector<Rational> weights);
  static WeightAssignment uniform(std::size_t n);
  static WeightAssignment degrees(const Graph& g);

  std::size_t size() const { return weights_.size(); }
  const Rational& operator[](Vertex v) const { return weights_[v]; }
  const std::vector<Rational>& values() const { return weights_; }
  Rational total() const;
  Rational total(std::span<const Vertex> set) const;

 private:
  std::vector<Rational> weights_;
};

}  // namespace halllab
