#pragma once

#include "halllab/fractional.hpp"
#include "halllab/graph.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace halllab {

/// Embedding of the 1-subdivision of `pattern` into a host graph.
/// `branch_map[u]` is the host image of pattern vertex u; `sub_map[j]` is the
/// host image of the subdivision vertex of the j-th edge of pattern.edges().
struct SubdivisionWitness {
  Graph pattern;
  std::vector<Vertex> branch_map;
  std::vector<Vertex> sub_map;
};

/// JSON record {host_hash, pattern_vertices, pattern_edges, branch_map, sub_map}.
nlohmann::json witness_to_json(const SubdivisionWitness& w, const Graph& host);

/// Parses witness_to_json output; `host_hash` is returned for the caller to
/// compare. Throws ParseError on schema violations.
SubdivisionWitness witness_from_json(const nlohmann::json& j, std::uint64_t* host_hash = nullptr);

/// {type, graph_hash, value, primal: [{vertices, weight}], dual}; rationals as "p/q" strings.
nlohmann::json certificate_to_json(const ChiFCertificate& cert, const Graph& g);
ChiFCertificate certificate_from_json(const nlohmann::json& j, std::uint64_t* graph_hash = nullptr);

std::string hash_hex(std::uint64_t h);

}  // namespace halllab
