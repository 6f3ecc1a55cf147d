#pragma once

#include "halllab/generators.hpp"
#include "halllab/graph.hpp"
#include "halllab/random.hpp"
#include "halllab/rational.hpp"
#include "halllab/witness.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace halllab {

struct WitnessReport {
  bool pass = false;
  std::vector<std::string> failures;
};

/// Checks map sizes and ranges, injectivity of both maps, disjoint images and
/// that every subdivision vertex is adjacent to both of its branch vertices.
WitnessReport verify_witness(const Graph& host, const SubdivisionWitness& w);

/// Pattern split by the host side of each branch vertex. Every pattern edge
/// stays inside one part, because its subdivision vertex is adjacent to both
/// ends. `to_parent` of each part maps into pattern ids.
struct WitnessSplit {
  InducedSubgraph side_a;
  InducedSubgraph side_b;
};
WitnessSplit decompose_bipartite_witness(const Graph& host, const SubdivisionWitness& w, const Bipartition& parts);

enum class SearchOutcome { Found, None, Unknown };

struct SubdivisionSearch {
  SearchOutcome outcome = SearchOutcome::Unknown;
  std::optional<SubdivisionWitness> witness;
  std::uint64_t nodes = 0;
};

/// Backtracking search for the 1-subdivision of `pattern` in `host`.
/// Pattern vertices are placed by descending degree; host candidates are
/// tried by ascending degree surplus, then id. `None` is only reported after
/// the search space is exhausted; running out of `node_budget` gives `Unknown`.
SubdivisionSearch find_subdivision(const Graph& host, const Graph& pattern, std::uint64_t node_budget = 10'000'000);

struct PatternLimits {
  /// Hosts up to this order are searched exhaustively.
  std::size_t exhaustive_max_order = 24;
  /// Largest branch set considered (also the sampled subset size cap).
  std::size_t max_branch = 24;
  std::uint64_t node_budget = 5'000'000;
  std::size_t samples = 2000;
  Seed seed{};
};

struct PatternHallRatio {
  Rational value;  // best Hall ratio among patterns found
  std::optional<SubdivisionWitness> best;
  bool exact = false;  // true only when the exhaustive enumeration completed
  std::uint64_t nodes = 0;
};

/// Largest Hall ratio of a graph whose 1-subdivision appears in `host`, found
/// by enumerating branch sets and a pair choice for every would-be
/// subdivision vertex.
PatternHallRatio max_pattern_hall_ratio(const Graph& host, const PatternLimits& limits = {});

/// For a witness in a layered host: pattern edges whose subdivision vertex
/// lies in one layer must form a matching.
bool layer_edges_form_matchings(const LayeredGraph& lg, const SubdivisionWitness& w, std::string* why = nullptr);

}  // namespace halllab
