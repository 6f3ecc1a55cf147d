#pragma once

#include "halllab/graph.hpp"
#include "halllab/rational.hpp"

#include <cstdint>
#include <vector>

namespace halllab {

/// Node allowance for exact branch-and-bound searches.
struct SearchLimits {
  std::uint64_t node_limit = 200'000'000;
};

struct IndependentSet {
  std::size_t size = 0;
  std::vector<Vertex> vertices;  // ascending ids
  std::uint64_t nodes = 0;       // search nodes expanded
};

struct WeightedIndependentSet {
  Rational weight;
  std::vector<Vertex> vertices;
  std::uint64_t nodes = 0;
};

/// Maximum independent set. Branches on a maximum-degree vertex (smallest id
/// on ties) with a greedy clique-cover bound, so witnesses are reproducible.
/// Throws BudgetExceeded past `limits.node_limit`, PreconditionError on n = 0.
IndependentSet alpha_exact(const Graph& g, SearchLimits limits = {});

/// Maximum-weight independent set, exact over rationals.
WeightedIndependentSet alpha_weighted(const Graph& g, const WeightAssignment& w, SearchLimits limits = {});

/// Same search with machine-integer weights; used as the pricing oracle.
struct IntegerWeightedSet {
  std::int64_t weight = 0;
  std::vector<Vertex> vertices;
  std::uint64_t nodes = 0;
};
IntegerWeightedSet max_weight_independent_set(const Graph& g, const std::vector<std::int64_t>& weights,
                                               SearchLimits limits = {});

/// ω(G) as α of the complement.
std::size_t clique_number(const Graph& g, SearchLimits limits = {});

/// |V|/α(G) - 1, which never exceeds the average degree.
Rational turan_bound(const Graph& g, SearchLimits limits = {});

/// Colors by repeatedly removing a maximum independent set of what remains.
std::vector<std::vector<Vertex>> greedy_cover_coloring(const Graph& g, SearchLimits limits = {});

}  // namespace halllab
