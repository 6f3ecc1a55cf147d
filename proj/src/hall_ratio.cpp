#include "halllab/hall_ratio.hpp"

#include "halllab/errors.hpp"
#include "halllab/vertex_set.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

namespace halllab {
namespace {

bool mask_connected(std::uint32_t s, const std::vector<std::uint64_t>& adj) {
  std::uint32_t seen = s & (~s + 1);
  std::uint32_t frontier = seen;
  while (frontier) {
    std::uint32_t next = 0;
    for (std::uint32_t f = frontier; f; f &= f - 1) next |= static_cast<std::uint32_t>(adj[std::countr_zero(f)]);
    next &= s & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == s;
}

std::vector<Vertex> mask_members(std::uint32_t s) {
  std::vector<Vertex> out;
  for (; s; s &= s - 1) out.push_back(static_cast<Vertex>(std::countr_zero(s)));
  return out;
}

HallRatioResult exact_hall_ratio(const Graph& g, bool connected_only) {
  AlphaTable table(g);
  auto adj = adjacency_masks(g);
  std::uint64_t best_num = 0, best_den = 1;
  std::uint32_t best_mask = 0;
  const std::uint32_t full = table.full_mask();
  for (std::uint32_t s = 1; s != 0 && s <= full; ++s) {
    const std::uint64_t size = static_cast<std::uint64_t>(std::popcount(s));
    const std::uint64_t alpha = table[s];
    // size/alpha vs best_num/best_den
    const std::uint64_t lhs = size * best_den, rhs = best_num * alpha;
    if (lhs < rhs) continue;
    if (lhs == rhs && size >= static_cast<std::uint64_t>(std::popcount(best_mask))) continue;
    if (connected_only && !mask_connected(s, adj)) continue;
    best_num = size;
    best_den = alpha;
    best_mask = s;
  }
  Rational value(static_cast<unsigned long>(best_num), static_cast<unsigned long>(best_den));
  value.canonicalize();
  return {value, mask_members(best_mask), true};
}

// Ratio of one candidate subset, or nothing when its α search runs out of budget.
bool try_candidate(const Graph& g, std::vector<Vertex> set, const SearchLimits& limits, HallRatioResult& best) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  if (set.empty()) return false;
  auto sub = induced_subgraph(g, set);
  std::size_t alpha;
  try {
    alpha = alpha_exact(sub.graph, limits).size;
  } catch (const BudgetExceeded&) {
    return false;
  }
  Rational r(static_cast<unsigned long>(set.size()), static_cast<unsigned long>(alpha));
  r.canonicalize();
  if (r > best.value || (r == best.value && set.size() < best.witness.size())) {
    best.value = r;
    best.witness = std::move(set);
  }
  return true;
}

HallRatioResult sampled_hall_ratio(const Graph& g, const HallRatioOptions& options) {
  HallRatioResult best{Rational(1), {0}, false};
  std::vector<Vertex> all(g.order());
  std::iota(all.begin(), all.end(), Vertex{0});
  try_candidate(g, all, options.limits, best);
  for (Vertex v = 0; v < g.order(); ++v) {
    std::vector<Vertex> closed(g.neighbors(v).begin(), g.neighbors(v).end());
    closed.push_back(v);
    try_candidate(g, std::move(closed), options.limits, best);
  }
  // Random connected subsets grown from a random root, up to AlphaTable size.
  Rng rng = make_rng(options.seed);
  for (std::size_t i = 0; i < options.samples; ++i) {
    const auto target = 2 + uniform_below(rng, AlphaTable::max_order - 1);
    std::vector<Vertex> set{static_cast<Vertex>(uniform_below(rng, g.order()))};
    std::vector<Vertex> frontier;
    auto extend = [&](Vertex v) {
      for (Vertex u : g.neighbors(v))
        if (std::find(set.begin(), set.end(), u) == set.end() &&
            std::find(frontier.begin(), frontier.end(), u) == frontier.end())
          frontier.push_back(u);
    };
    extend(set[0]);
    while (set.size() < target && !frontier.empty()) {
      auto k = uniform_below(rng, frontier.size());
      Vertex u = frontier[k];
      frontier.erase(frontier.begin() + static_cast<long>(k));
      set.push_back(u);
      extend(u);
    }
    try_candidate(g, std::move(set), options.limits, best);
  }
  best.exact = false;
  return best;
}

}  // namespace

AlphaTable::AlphaTable(const Graph& g) : order_(g.order()) {
  if (order_ > max_order)
    throw PreconditionError("alpha table supports at most " + std::to_string(max_order) + " vertices, got " +
                            std::to_string(order_));
  auto adj = adjacency_masks(g);
  std::vector<std::uint32_t> closed(order_);
  for (std::size_t v = 0; v < order_; ++v) closed[v] = static_cast<std::uint32_t>(adj[v] | (std::uint64_t{1} << v));
  alpha_.assign(std::size_t{1} << order_, 0);
  for (std::size_t s = 1; s < alpha_.size(); ++s) {
    const auto v = std::countr_zero(static_cast<std::uint32_t>(s));
    const auto without = alpha_[s & (s - 1)];
    const auto with = static_cast<std::uint8_t>(1 + alpha_[s & ~static_cast<std::size_t>(closed[v])]);
    alpha_[s] = std::max(without, with);
  }
}

HallRatioResult hall_ratio(const Graph& g, const HallRatioOptions& options) {
  if (g.empty()) throw PreconditionError("Hall ratio of the empty graph");
  if (g.order() <= AlphaTable::max_order) return exact_hall_ratio(g, options.connected_only);
  if (options.mode == HallRatioOptions::Mode::Exact)
    throw PreconditionError("exact Hall ratio supports at most " + std::to_string(AlphaTable::max_order) +
                            " vertices, got " + std::to_string(g.order()));
  return sampled_hall_ratio(g, options);
}

}  // namespace halllab
