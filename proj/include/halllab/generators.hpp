#pragma once

#include "halllab/graph.hpp"
#include "halllab/random.hpp"
#include "halllab/rational.hpp"
#include "halllab/witness.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace halllab {

/// Kneser graph K_{a:b}: b-subsets of {1..a} in lexicographic order, adjacent
/// when disjoint. Requires a >= 2b >= 2 and C(a,b) <= 100000.
Graph kneser(unsigned a, unsigned b);

/// The b-subset (1-based elements) labelling vertex v of kneser(a, b).
std::vector<unsigned> kneser_label(unsigned a, unsigned b, Vertex v);

/// Mycielskian: V, then the shadow copies V', then the apex z.
Graph mycielski(const Graph& g);

/// k disjoint copies of g (copy i on ids i*n..i*n+n-1) joined completely.
Graph join_of_copies(const Graph& g, std::size_t k);

struct SubdividedGraph {
  Graph graph;  // branch vertices 0..n-1, then one vertex per edge of h
  SubdivisionWitness witness;
};
SubdividedGraph one_subdivision(const Graph& h);

/// G(n, p): every pair independently with the exact rational probability p.
Graph gnp(std::size_t n, const Rational& p, Seed seed);

/// Bipartite (A, B) with |A| = q|B| and every A-vertex of degree exactly a.
struct SemiRegularPair {
  Graph graph;
  Bipartition parts;  // side_a = A, side_b = B, both ascending
  std::size_t a = 0;
  std::size_t q = 0;
};

bool check_semiregular(const SemiRegularPair& pair, std::string* why = nullptr);

/// A = 0..q*b-1, B = q*b..q*b+b-1; each A-vertex joins a uniformly random
/// a-subset of B.
SemiRegularPair random_semiregular(std::size_t b, std::size_t a, std::size_t q, Seed seed);

/// One draw of H_B: every A-vertex (ascending) joins a uniformly random pair of
/// its neighbors. Vertex i of `graph` is parts.side_b[i]; repeated pairs
/// collapse. `witness` embeds the 1-subdivision of `graph` into pair.graph,
/// using the smallest A-vertex that chose each pair.
struct HbSample {
  Graph graph;
  SubdivisionWitness witness;
  std::vector<Edge> choices;  // per A-vertex, local B indices, first < second
};
HbSample sample_hb(const SemiRegularPair& pair, Seed seed);

/// G_{n,M}: part A (ids 0..n-1) followed by layers B_1..B_M, each A-vertex
/// joined to one uniformly random vertex of every layer.
struct LayeredGraph {
  Graph graph;
  std::uint64_t n = 0;
  std::size_t layers = 0;                // M
  Rational epsilon;                      // 4^{-M-1}
  std::vector<std::uint64_t> layer_size; // |B_1|..|B_M|
  std::vector<Vertex> layer_begin;       // first id of each layer
  bool exact_mode = true;                // false: sizes supplied by the caller
  std::uint64_t root = 0;                // r with n = r^{4^M}, exact mode only

  std::vector<Vertex> layer(std::size_t i) const;  // 1-based layer index
  /// 0 for A, otherwise the layer index i(v).
  std::size_t layer_of(Vertex v) const;
  std::uint64_t b_total() const;
};

/// |B_i| = n^{1 - eps_M 4^i} as exact integers; throws PreconditionError when n
/// is not a 4^M-th power.
std::vector<std::uint64_t> layered_sizes(std::uint64_t n, std::size_t M, std::uint64_t* root = nullptr);

LayeredGraph sample_layered(std::uint64_t n, std::size_t M, Seed seed);

/// Caller-chosen layer sizes; the size formula is not checked (exact_mode = false).
LayeredGraph sample_layered_scaled(std::uint64_t n, std::span<const std::uint64_t> sizes, Seed seed);

}  // namespace halllab
