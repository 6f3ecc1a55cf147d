#pragma once

#include "halllab/generators.hpp"
#include "halllab/graph.hpp"
#include "halllab/independence.hpp"
#include "halllab/random.hpp"
#include "halllab/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace halllab {

struct BipartiteSubgraph {
  Graph graph;  // spanning: same vertex ids as the input
  Bipartition parts;
};

/// Spanning bipartite subgraph keeping at least half of the edges: greedy
/// side assignment, then single-vertex moves while any move enlarges the cut.
BipartiteSubgraph max_cut_bipartize(const Graph& g);

/// The t-core: the unique maximal induced subgraph of minimum degree >= t.
/// May be empty.
InducedSubgraph peel_min_degree(const Graph& g, std::size_t t);

struct ExtractionTrace {
  std::size_t a = 0, q = 0;
  std::size_t input_edges = 0;
  std::size_t bipartite_edges = 0;
  std::size_t peel_threshold = 0;  // 8aq
  std::size_t peel_survivors = 0;
  std::size_t side_a2 = 0, side_b2 = 0;
  bool deterministic_b = false;  // |A2| >= q|B2| so B = B2
  std::size_t sampled_b = 0;
  std::size_t qualified_a = 0;
  std::size_t attempts = 0;
  std::vector<std::string> warnings;
  std::string failure;  // empty on success
};

/// A semiregular pair found inside some host; pair vertex i is host vertex
/// to_host[i]. Layout: A first, then B, each ascending in host ids.
struct Extraction {
  std::optional<SemiRegularPair> pair;
  std::vector<Vertex> to_host;
  ExtractionTrace trace;
  bool ok() const { return pair.has_value(); }
};

constexpr std::size_t default_max_retries = 64;

/// Picks B inside the smaller side (deterministically when the larger side
/// has at least q|B2| vertices, otherwise by sampling each vertex with
/// probability |A2|/(4q|B2|)), then keeps the q|B| smallest-id qualified
/// A-vertices and their a smallest-id B-neighbors.
Extraction select_semiregular(const Graph& g2, const Bipartition& parts, std::size_t a, std::size_t q, Seed seed,
                              std::size_t max_retries = default_max_retries);

/// Bipartize, peel at 8aq, select. Inputs below the average-degree threshold
/// 32aq (or a < 20) are attempted with a warning in the trace.
Extraction extract_semiregular(const Graph& g, std::size_t a, std::size_t q, Seed seed,
                               std::size_t max_retries = default_max_retries);

/// (√q·a + q)·|B|, compared exactly: alpha < threshold.
bool below_weight_threshold(const Rational& alpha, std::size_t a, std::size_t q, std::size_t b_size);

struct HbTrial {
  std::size_t index = 0;
  std::size_t edges = 0;        // edges of the sampled H_B
  Rational alpha_weighted;      // α_{deg_H}(H_B)
  bool certified = false;       // alpha_weighted < (√q a + q)|B|
  Rational chi_f_lower;         // deg_H(B)/α_{deg_H}(H_B)
  std::uint64_t nodes = 0;
  bool budget_exceeded = false;
};

/// Samples H_B `trials` times (trial i uses seed.substream(i)) and checks the
/// degree-weighted independence bound on each sample.
std::vector<HbTrial> hb_certification_trials(const SemiRegularPair& pair, Seed seed, std::size_t trials,
                                             std::size_t threads = 1, SearchLimits limits = {});

struct Theorem1Report {
  std::size_t c = 0, a = 0, q = 0;
  Rational required_average_degree;  // 256c^3
  Rational average_degree;
  Rational target;                   // qa/(√q a + q), equal to c
  Extraction extraction;
  std::vector<HbTrial> trials;
  std::size_t certified = 0;
};

/// a = 2c, q = 4c^2: extract a semiregular pair from g, then sample H_B.
Theorem1Report theorem1_pipeline(const Graph& g, std::size_t c, Seed seed, std::size_t trials,
                                 std::size_t threads = 1, SearchLimits limits = {});

}  // namespace halllab
