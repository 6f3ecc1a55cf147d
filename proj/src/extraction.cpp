#include "halllab/extraction.hpp"

#include "halllab/errors.hpp"
#include "halllab/parallel.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace halllab {

BipartiteSubgraph max_cut_bipartize(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<int> side(n, -1);
  for (Vertex v = 0; v < n; ++v) {
    std::size_t on[2] = {0, 0};
    for (Vertex u : g.neighbors(v))
      if (side[u] >= 0) ++on[side[u]];
    side[v] = on[0] > on[1] ? 1 : 0;
  }
  for (bool moved = true; moved;) {
    moved = false;
    for (Vertex v = 0; v < n; ++v) {
      std::size_t same = 0;
      for (Vertex u : g.neighbors(v)) same += side[u] == side[v];
      if (2 * same > g.degree(v)) {
        side[v] ^= 1;
        moved = true;
      }
    }
  }
  BipartiteSubgraph out;
  std::vector<Edge> cut;
  for (auto [u, v] : g.edges())
    if (side[u] != side[v]) cut.emplace_back(u, v);
  out.graph = spanning_subgraph(g, cut);
  for (Vertex v = 0; v < n; ++v) (side[v] == 0 ? out.parts.side_a : out.parts.side_b).push_back(v);
  return out;
}

InducedSubgraph peel_min_degree(const Graph& g, std::size_t t) {
  const std::size_t n = g.order();
  std::vector<std::size_t> deg(n);
  std::vector<bool> removed(n, false);
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    if (deg[v] < t) {
      removed[v] = true;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex u : g.neighbors(v)) {
      if (removed[u]) continue;
      if (--deg[u] < t) {
        removed[u] = true;
        queue.push_back(u);
      }
    }
  }
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < n; ++v)
    if (!removed[v]) keep.push_back(v);
  return induced_subgraph(g, keep);
}

namespace {

// Builds the pair on A ∪ B (local ids: A then B) with each A-vertex trimmed
// to its a smallest-id neighbors in B.
Extraction assemble(const Graph& g2, const std::vector<Vertex>& chosen_a, const std::vector<Vertex>& b,
                    const std::vector<bool>& in_b, std::size_t a, std::size_t q, ExtractionTrace trace) {
  std::vector<Vertex> local(g2.order(), ~Vertex{0});
  Extraction out;
  for (Vertex v : chosen_a) {
    local[v] = static_cast<Vertex>(out.to_host.size());
    out.to_host.push_back(v);
  }
  for (Vertex v : b) {
    local[v] = static_cast<Vertex>(out.to_host.size());
    out.to_host.push_back(v);
  }
  GraphBuilder builder(out.to_host.size());
  for (Vertex v : chosen_a) {
    std::size_t taken = 0;
    for (Vertex u : g2.neighbors(v)) {
      if (!in_b[u]) continue;
      builder.add_edge(local[v], local[u]);
      if (++taken == a) break;
    }
  }
  SemiRegularPair pair{std::move(builder).build(), {}, a, q};
  pair.parts.side_a.resize(chosen_a.size());
  std::iota(pair.parts.side_a.begin(), pair.parts.side_a.end(), Vertex{0});
  pair.parts.side_b.resize(b.size());
  std::iota(pair.parts.side_b.begin(), pair.parts.side_b.end(), static_cast<Vertex>(chosen_a.size()));
  out.pair = std::move(pair);
  out.trace = std::move(trace);
  return out;
}

}  // namespace

Extraction select_semiregular(const Graph& g2, const Bipartition& parts, std::size_t a, std::size_t q, Seed seed,
                              std::size_t max_retries) {
  if (a < 1 || q < 1) throw PreconditionError("semiregular selection needs a >= 1 and q >= 1");
  if (!is_valid_bipartition(g2, parts)) throw PreconditionError("selection input is not bipartite with these parts");
  ExtractionTrace trace;
  trace.a = a;
  trace.q = q;
  std::vector<Vertex> a2 = parts.side_a, b2 = parts.side_b;
  std::sort(a2.begin(), a2.end());
  std::sort(b2.begin(), b2.end());
  auto id_sum = [](const std::vector<Vertex>& s) { return std::accumulate(s.begin(), s.end(), std::uint64_t{0}); };
  if (a2.size() < b2.size() || (a2.size() == b2.size() && id_sum(b2) < id_sum(a2))) std::swap(a2, b2);
  trace.side_a2 = a2.size();
  trace.side_b2 = b2.size();
  for (Vertex v = 0; v < g2.order(); ++v)
    if (g2.degree(v) < 8 * a * q) {
      trace.warnings.push_back("minimum degree below 8aq = " + std::to_string(8 * a * q));
      break;
    }

  std::vector<bool> in_b(g2.order(), false);
  auto try_b = [&](const std::vector<Vertex>& b) -> std::optional<Extraction> {
    std::fill(in_b.begin(), in_b.end(), false);
    for (Vertex v : b) in_b[v] = true;
    std::vector<Vertex> qualified;
    for (Vertex v : a2) {
      std::size_t hits = 0;
      for (Vertex u : g2.neighbors(v)) hits += in_b[u];
      if (hits >= a) qualified.push_back(v);
    }
    trace.sampled_b = b.size();
    trace.qualified_a = qualified.size();
    if (b.empty() || qualified.size() < q * b.size()) return std::nullopt;
    qualified.resize(q * b.size());
    return assemble(g2, qualified, b, in_b, a, q, trace);
  };

  if (a2.size() >= q * b2.size()) {
    trace.deterministic_b = true;
    trace.attempts = 1;
    if (auto r = try_b(b2)) return std::move(*r);
    trace.failure = "B = B2 leaves fewer than q|B2| A-vertices with a neighbors in B";
    return {std::nullopt, {}, trace};
  }
  Rational p(static_cast<unsigned long>(a2.size()), static_cast<unsigned long>(4 * q * b2.size()));
  p.canonicalize();
  for (std::size_t attempt = 0; attempt < max_retries; ++attempt) {
    trace.attempts = attempt + 1;
    Rng rng = make_rng(seed.substream(attempt));
    std::vector<Vertex> b;
    for (Vertex v : b2)
      if (bernoulli(rng, p)) b.push_back(v);
    if (auto r = try_b(b)) return std::move(*r);
  }
  trace.failure = "no sampled B qualified within " + std::to_string(max_retries) + " attempts";
  return {std::nullopt, {}, trace};
}

Extraction extract_semiregular(const Graph& g, std::size_t a, std::size_t q, Seed seed, std::size_t max_retries) {
  if (g.empty()) throw PreconditionError("extraction from the empty graph");
  ExtractionTrace pre;
  pre.a = a;
  pre.q = q;
  pre.input_edges = g.size();
  pre.peel_threshold = 8 * a * q;
  if (a < 20) pre.warnings.push_back("a = " + std::to_string(a) + " is below 20");
  if (average_degree(g) < Rational(static_cast<unsigned long>(32 * a * q)))
    pre.warnings.push_back("average degree " + average_degree(g).get_str() + " is below 32aq = " +
                           std::to_string(32 * a * q));
  if (g.size() == 0) {
    pre.failure = "graph has no edges";
    return {std::nullopt, {}, pre};
  }

  auto bip = max_cut_bipartize(g);
  pre.bipartite_edges = bip.graph.size();
  auto core = peel_min_degree(bip.graph, pre.peel_threshold);
  pre.peel_survivors = core.graph.order();
  if (core.graph.empty()) {
    pre.failure = "peeling at 8aq = " + std::to_string(pre.peel_threshold) + " left no vertices";
    return {std::nullopt, {}, pre};
  }
  std::vector<bool> in_a(g.order(), false);
  for (Vertex v : bip.parts.side_a) in_a[v] = true;
  Bipartition core_parts;
  for (Vertex i = 0; i < core.graph.order(); ++i)
    (in_a[core.to_parent[i]] ? core_parts.side_a : core_parts.side_b).push_back(i);

  auto out = select_semiregular(core.graph, core_parts, a, q, seed, max_retries);
  auto stage = out.trace;
  out.trace = pre;
  out.trace.side_a2 = stage.side_a2;
  out.trace.side_b2 = stage.side_b2;
  out.trace.deterministic_b = stage.deterministic_b;
  out.trace.sampled_b = stage.sampled_b;
  out.trace.qualified_a = stage.qualified_a;
  out.trace.attempts = stage.attempts;
  out.trace.failure = stage.failure;
  for (auto& w : stage.warnings) out.trace.warnings.push_back(w);
  for (auto& v : out.to_host) v = core.to_parent[v];
  return out;
}

bool below_weight_threshold(const Rational& alpha, std::size_t a, std::size_t q, std::size_t b_size) {
  // alpha < (√q a + q) b  <=>  alpha - q b < √q a b
  const Rational excess = alpha - Rational(static_cast<unsigned long>(q * b_size));
  if (sgn(excess) < 0) return true;
  const Rational rhs_sq = Rational(Integer(static_cast<unsigned long>(q)) * Integer(static_cast<unsigned long>(a)) *
                                   Integer(static_cast<unsigned long>(a)) * Integer(static_cast<unsigned long>(b_size)) *
                                   Integer(static_cast<unsigned long>(b_size)));
  return excess * excess < rhs_sq;
}

std::vector<HbTrial> hb_certification_trials(const SemiRegularPair& pair, Seed seed, std::size_t trials,
                                             std::size_t threads, SearchLimits limits) {
  std::string why;
  if (!check_semiregular(pair, &why)) throw PreconditionError("not a semiregular pair: " + why);
  std::vector<Rational> weights;
  for (Vertex v : pair.parts.side_b) weights.emplace_back(static_cast<unsigned long>(pair.graph.degree(v)));
  const WeightAssignment w(weights);
  const Rational total = w.total();
  std::vector<HbTrial> out(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    auto sample = sample_hb(pair, seed.substream(i));
    HbTrial t;
    t.index = i;
    t.edges = sample.graph.size();
    try {
      auto best = alpha_weighted(sample.graph, w, limits);
      t.alpha_weighted = best.weight;
      t.nodes = best.nodes;
      t.certified = below_weight_threshold(best.weight, pair.a, pair.q, pair.parts.side_b.size());
      if (sgn(best.weight) > 0) t.chi_f_lower = total / best.weight;
    } catch (const BudgetExceeded&) {
      t.budget_exceeded = true;
    }
    out[i] = std::move(t);
  });
  return out;
}

Theorem1Report theorem1_pipeline(const Graph& g, std::size_t c, Seed seed, std::size_t trials, std::size_t threads,
                                 SearchLimits limits) {
  if (c < 1) throw PreconditionError("thm1 pipeline needs c >= 1");
  Theorem1Report r;
  r.c = c;
  r.a = 2 * c;
  r.q = 4 * c * c;
  r.required_average_degree = Rational(static_cast<unsigned long>(256 * c * c * c));
  r.average_degree = average_degree(g);
  // qa/(√q a + q) with √q = a: a^3/(a^2 + a^2) = a/2 = c
  r.target = Rational(static_cast<unsigned long>(r.q * r.a), static_cast<unsigned long>(r.a * r.a + r.q));
  r.target.canonicalize();
  r.extraction = extract_semiregular(g, r.a, r.q, seed.substream(0));
  if (r.average_degree < r.required_average_degree)
    r.extraction.trace.warnings.insert(r.extraction.trace.warnings.begin(),
                                       "average degree below 256c^3 = " + r.required_average_degree.get_str());
  if (!r.extraction.ok()) return r;
  r.trials = hb_certification_trials(*r.extraction.pair, seed.substream(1), trials, threads, limits);
  for (const auto& t : r.trials) r.certified += t.certified;
  return r;
}

}  // namespace halllab
