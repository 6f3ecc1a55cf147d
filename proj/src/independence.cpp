#include "halllab/independence.hpp"

#include "halllab/errors.hpp"
#include "mwis.hpp"

#include <algorithm>
#include <limits>

namespace halllab {
namespace {

void require_nonempty(const Graph& g) {
  if (g.empty()) throw PreconditionError("independence number of the empty graph");
}

}  // namespace

IndependentSet alpha_exact(const Graph& g, SearchLimits limits) {
  require_nonempty(g);
  detail::MwisSolver<std::int64_t> solver(g, std::vector<std::int64_t>(g.order(), 1), limits.node_limit);
  auto r = solver.solve();
  return {static_cast<std::size_t>(r.weight), std::move(r.vertices), r.nodes};
}

IntegerWeightedSet max_weight_independent_set(const Graph& g, const std::vector<std::int64_t>& weights,
                                               SearchLimits limits) {
  require_nonempty(g);
  if (weights.size() != g.order()) throw PreconditionError("weight vector length differs from vertex count");
  for (auto w : weights)
    if (w < 0) throw PreconditionError("negative vertex weight");
  detail::MwisSolver<std::int64_t> solver(g, weights, limits.node_limit);
  auto r = solver.solve();
  return {r.weight, std::move(r.vertices), r.nodes};
}

WeightedIndependentSet alpha_weighted(const Graph& g, const WeightAssignment& w, SearchLimits limits) {
  require_nonempty(g);
  if (w.size() != g.order()) throw PreconditionError("weight assignment length differs from vertex count");
  // Scale to integers by the lcm of the denominators.
  Integer scale = 1;
  for (const auto& x : w.values()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> scaled;
  scaled.reserve(g.order());
  Integer total = 0, heaviest = 0;
  for (const auto& x : w.values()) {
    Integer s = x.get_num() * (scale / x.get_den());
    total += s;
    heaviest = std::max(heaviest, s);
    scaled.push_back(std::move(s));
  }
  const Integer cap = Integer(1) << 62;
  const bool fits = total < cap && heaviest * Integer(static_cast<unsigned long>(g.order() + 1)) < cap;
  if (fits) {
    std::vector<std::int64_t> iw;
    iw.reserve(scaled.size());
    for (const auto& s : scaled) iw.push_back(s.get_si());
    detail::MwisSolver<std::int64_t> solver(g, std::move(iw), limits.node_limit);
    auto r = solver.solve();
    Rational value(Integer(static_cast<long>(r.weight)), scale);
    value.canonicalize();
    return {value, std::move(r.vertices), r.nodes};
  }
  detail::MwisSolver<Integer> solver(g, std::move(scaled), limits.node_limit);
  auto r = solver.solve();
  Rational value(r.weight, scale);
  value.canonicalize();
  return {value, std::move(r.vertices), r.nodes};
}

std::size_t clique_number(const Graph& g, SearchLimits limits) {
  return alpha_exact(complement(g), limits).size;
}

Rational turan_bound(const Graph& g, SearchLimits limits) {
  auto alpha = alpha_exact(g, limits).size;
  Rational r(static_cast<unsigned long>(g.order()), static_cast<unsigned long>(alpha));
  r.canonicalize();
  return r - 1;
}

std::vector<std::vector<Vertex>> greedy_cover_coloring(const Graph& g, SearchLimits limits) {
  std::vector<std::vector<Vertex>> classes;
  std::vector<Vertex> remaining(g.order());
  for (Vertex v = 0; v < g.order(); ++v) remaining[v] = v;
  while (!remaining.empty()) {
    auto sub = induced_subgraph(g, remaining);
    auto mis = alpha_exact(sub.graph, limits);
    std::vector<Vertex> cls;
    for (Vertex local : mis.vertices) cls.push_back(sub.to_parent[local]);
    std::vector<Vertex> rest;
    std::set_difference(remaining.begin(), remaining.end(), cls.begin(), cls.end(), std::back_inserter(rest));
    remaining = std::move(rest);
    classes.push_back(std::move(cls));
  }
  return classes;
}

}  // namespace halllab
