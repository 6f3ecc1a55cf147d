#pragma once

#include "halllab/graph.hpp"
#include "halllab/independence.hpp"
#include "halllab/random.hpp"
#include "halllab/rational.hpp"

#include <cstdint>
#include <vector>

namespace halllab {

/// α(G[S]) for every subset S of a graph with at most 24 vertices, indexed
/// by the bitmask of S.
class AlphaTable {
 public:
  static constexpr std::size_t max_order = 24;

  /// Throws PreconditionError when g has more than max_order vertices.
  explicit AlphaTable(const Graph& g);

  std::size_t order() const { return order_; }
  std::uint8_t operator[](std::uint32_t mask) const { return alpha_[mask]; }
  std::uint32_t full_mask() const { return static_cast<std::uint32_t>((std::uint64_t{1} << order_) - 1); }

 private:
  std::size_t order_;
  std::vector<std::uint8_t> alpha_;
};

struct HallRatioResult {
  Rational value;
  std::vector<Vertex> witness;  // vertex set attaining value
  bool exact = true;            // false: value is only a lower bound
};

struct HallRatioOptions {
  enum class Mode { Exact, Auto };
  Mode mode = Mode::Exact;
  /// Only connected subsets are considered as witnesses. Never changes the value.
  bool connected_only = true;
  /// Lower-bound mode: random connected subsets tried in addition to the
  /// structural candidates.
  std::size_t samples = 256;
  Seed seed{};
  SearchLimits limits{};
};

/// Maximum of |S|/α(G[S]) over nonempty S. Ties: fewest vertices, then the
/// numerically smallest bitmask. Exact mode needs n <= 24; Auto falls back to
/// a sampled lower bound (exact = false) above that.
HallRatioResult hall_ratio(const Graph& g, const HallRatioOptions& options = {});

}  // namespace halllab
