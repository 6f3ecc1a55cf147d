#pragma once

#include "halllab/graph.hpp"

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>

namespace halllab {

/// Edge-list text: "n m" header then m lines "u v" (0-based). Duplicate edges,
/// self-loops, bad ids and count mismatches are ParseErrors with a line number.
Graph parse_edge_list(std::string_view text);

/// Canonical form: edges with u < v in lexicographic order, LF-terminated.
std::string emit_edge_list(const Graph& g);

/// DIMACS .col reader ("p edge n m", "e u v", 1-based). Repeated edges, in
/// either orientation, collapse; the header edge count is not enforced.
Graph parse_dimacs(std::string_view text);

/// Picks DIMACS when the first non-comment line starts with "p", else edge list.
Graph parse_graph_auto(std::string_view text);

std::string read_all(std::istream& in);
Graph read_graph_file(const std::string& path);

/// FNV-1a over the canonical edge-list emission.
std::uint64_t graph_hash(const Graph& g);

}  // namespace halllab
