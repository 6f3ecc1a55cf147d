#include "halllab/graph_io.hpp"

#include "halllab/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace halllab {
namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint64_t to_count(std::string_view tok, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected a nonnegative integer, got '" + std::string(tok) + "'");
  return value;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  auto lines = split_lines(text);
  while (!lines.empty() && tokens(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw ParseError(1, "missing header line \"n m\"");
  auto head = tokens(lines[0]);
  if (head.size() != 2) throw ParseError(1, "header must be \"n m\"");
  const auto n = to_count(head[0], 1);
  const auto m = to_count(head[1], 1);
  if (n > 0xFFFFFFFEull) throw ParseError(1, "vertex count too large");
  if (lines.size() - 1 != m)
    throw ParseError(lines.size() - 1 < m ? lines.size() + 1 : m + 2,
                     "edge count mismatch: header says " + std::to_string(m) + ", found " +
                         std::to_string(lines.size() - 1));
  std::vector<Edge> seen;
  seen.reserve(m);
  GraphBuilder b(n);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto tok = tokens(lines[i]);
    if (tok.size() != 2) throw ParseError(i + 1, "edge line must be \"u v\"");
    auto u = to_count(tok[0], i + 1);
    auto v = to_count(tok[1], i + 1);
    if (u == v) throw ParseError(i + 1, "self-loop (" + std::to_string(u) + "," + std::to_string(v) + ")");
    if (u >= n || v >= n)
      throw ParseError(i + 1, "vertex id out of range in (" + std::to_string(u) + "," + std::to_string(v) + ")");
    seen.emplace_back(static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v)));
    b.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  std::vector<std::size_t> order(seen.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return seen[x] < seen[y]; });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (seen[order[i]] == seen[order[i - 1]])
      throw ParseError(order[i] + 2, "duplicate edge (" + std::to_string(seen[order[i]].first) + "," +
                                         std::to_string(seen[order[i]].second) + ")");
  return std::move(b).build();
}

std::string emit_edge_list(const Graph& g) {
  std::string out = std::to_string(g.order()) + " " + std::to_string(g.size()) + "\n";
  for (auto [u, v] : g.edges()) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

Graph parse_dimacs(std::string_view text) {
  auto lines = split_lines(text);
  std::optional<GraphBuilder> b;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto tok = tokens(lines[i]);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (b) throw ParseError(i + 1, "second problem line");
      if (tok.size() != 4) throw ParseError(i + 1, "problem line must be \"p edge n m\"");
      b.emplace(to_count(tok[2], i + 1));
    } else if (tok[0] == "e") {
      if (!b) throw ParseError(i + 1, "edge before problem line");
      if (tok.size() != 3) throw ParseError(i + 1, "edge line must be \"e u v\"");
      auto u = to_count(tok[1], i + 1);
      auto v = to_count(tok[2], i + 1);
      if (u == 0 || v == 0 || u > b->order() || v > b->order())
        throw ParseError(i + 1, "vertex id out of range (ids are 1-based)");
      if (u == v) throw ParseError(i + 1, "self-loop");
      b->add_edge(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
    } else {
      throw ParseError(i + 1, "unknown line type '" + std::string(tok[0]) + "'");
    }
  }
  if (!b) throw ParseError(0, "missing problem line");
  return std::move(*b).build();
}

Graph parse_graph_auto(std::string_view text) {
  for (auto line : split_lines(text)) {
    auto tok = tokens(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") return parse_dimacs(text);
    break;
  }
  return parse_edge_list(text);
}

std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open graph file '" + path + "'");
  return parse_graph_auto(read_all(in));
}

std::uint64_t graph_hash(const Graph& g) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : emit_edge_list(g)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace halllab
