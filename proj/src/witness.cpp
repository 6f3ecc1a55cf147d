#include "halllab/witness.hpp"

#include "halllab/errors.hpp"
#include "halllab/graph_io.hpp"

#include <cstdio>

namespace halllab {

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json witness_to_json(const SubdivisionWitness& w, const Graph& host) {
  const std::string hash = hash_hex(graph_hash(host));
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : w.pattern.edges()) edges.push_back({u, v});
  return {{"type", "subdivision_witness"},
          {"host_hash", hash},
          {"pattern_vertices", w.pattern.order()},
          {"pattern_edges", edges},
          {"branch_map", w.branch_map},
          {"sub_map", w.sub_map}};
}

SubdivisionWitness witness_from_json(const nlohmann::json& j, std::uint64_t* host_hash) {
  try {
    if (j.at("type") != "subdivision_witness") throw ParseError(0, "not a subdivision witness record");
    if (host_hash) *host_hash = std::stoull(j.at("host_hash").get<std::string>(), nullptr, 16);
    const auto n = j.at("pattern_vertices").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("pattern_edges")) edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
    SubdivisionWitness w{build_graph(n, edges), j.at("branch_map").get<std::vector<Vertex>>(),
                         j.at("sub_map").get<std::vector<Vertex>>()};
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("witness record: ") + e.what());
  } catch (const GraphError& e) {
    throw ParseError(0, std::string("witness pattern: ") + e.what());
  } catch (const std::logic_error& e) {
    throw ParseError(0, std::string("witness record: ") + e.what());
  }
}

nlohmann::json certificate_to_json(const ChiFCertificate& cert, const Graph& g) {
  nlohmann::json primal = nlohmann::json::array();
  for (const auto& s : cert.primal) primal.push_back({{"vertices", s.vertices}, {"weight", to_string(s.weight)}});
  nlohmann::json dual = nlohmann::json::array();
  for (const auto& y : cert.dual) dual.push_back(to_string(y));
  return {{"type", "chi_f_certificate"},
          {"graph_hash", hash_hex(graph_hash(g))},
          {"value", to_string(cert.value)},
          {"primal", primal},
          {"dual", dual}};
}

ChiFCertificate certificate_from_json(const nlohmann::json& j, std::uint64_t* graph_hash) {
  try {
    if (j.at("type") != "chi_f_certificate") throw ParseError(0, "not a chi_f certificate record");
    if (graph_hash) *graph_hash = std::stoull(j.at("graph_hash").get<std::string>(), nullptr, 16);
    ChiFCertificate cert;
    cert.value = parse_rational(j.at("value").get<std::string>());
    for (const auto& s : j.at("primal"))
      cert.primal.push_back({s.at("vertices").get<std::vector<Vertex>>(), parse_rational(s.at("weight").get<std::string>())});
    for (const auto& y : j.at("dual")) cert.dual.push_back(parse_rational(y.get<std::string>()));
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("certificate record: ") + e.what());
  } catch (const std::logic_error& e) {
    throw ParseError(0, std::string("certificate record: ") + e.what());
  }
}

}  // namespace halllab
