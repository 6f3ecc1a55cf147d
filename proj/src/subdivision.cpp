#include "halllab/subdivision.hpp"

#include "halllab/errors.hpp"
#include "halllab/hall_ratio.hpp"
#include "halllab/vertex_set.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

namespace halllab {

WitnessReport verify_witness(const Graph& host, const SubdivisionWitness& w) {
  WitnessReport r;
  auto fail = [&](std::string msg) { r.failures.push_back(std::move(msg)); };
  const auto edges = w.pattern.edges();
  if (w.branch_map.size() != w.pattern.order()) fail("branch_map size differs from pattern order");
  if (w.sub_map.size() != edges.size()) fail("sub_map size differs from pattern edge count");
  if (!r.failures.empty()) return r;

  std::map<Vertex, std::string> owner;
  auto claim = [&](Vertex h, const std::string& who) {
    if (h >= host.order()) {
      fail(who + " maps outside the host");
      return;
    }
    auto [it, fresh] = owner.emplace(h, who);
    if (!fresh) fail(who + " and " + it->second + " share host vertex " + std::to_string(h));
  };
  for (Vertex u = 0; u < w.branch_map.size(); ++u) claim(w.branch_map[u], "branch " + std::to_string(u));
  for (std::size_t j = 0; j < edges.size(); ++j) {
    claim(w.sub_map[j], "subdivision of edge " + std::to_string(j));
    auto [u, v] = edges[j];
    const Vertex z = w.sub_map[j];
    if (z >= host.order()) continue;
    if (!host.adjacent(z, w.branch_map[u]) || !host.adjacent(z, w.branch_map[v]))
      fail("subdivision vertex " + std::to_string(z) + " of edge (" + std::to_string(u) + "," +
           std::to_string(v) + ") is not adjacent to both branch vertices");
  }
  r.pass = r.failures.empty();
  return r;
}

WitnessSplit decompose_bipartite_witness(const Graph& host, const SubdivisionWitness& w, const Bipartition& parts) {
  if (!is_valid_bipartition(host, parts)) throw PreconditionError("host is not bipartite with the given parts");
  auto report = verify_witness(host, w);
  if (!report.pass) throw PreconditionError("invalid witness: " + report.failures.front());
  std::vector<bool> in_a(host.order(), false);
  for (Vertex v : parts.side_a) in_a[v] = true;
  std::vector<Vertex> a_side, b_side;
  for (Vertex u = 0; u < w.pattern.order(); ++u) (in_a[w.branch_map[u]] ? a_side : b_side).push_back(u);
  return {induced_subgraph(w.pattern, a_side), induced_subgraph(w.pattern, b_side)};
}

namespace {

class SubdivisionSearcher {
 public:
  SubdivisionSearcher(const Graph& host, const Graph& pattern, std::uint64_t budget)
      : host_(host), pattern_(pattern), budget_(budget), used_(host.order(), false),
        image_(pattern.order(), 0), placed_(pattern.order(), false) {
    // Descending degree; ties prefer more already-ordered neighbors, then id.
    std::vector<bool> taken(pattern.order(), false);
    for (std::size_t k = 0; k < pattern.order(); ++k) {
      long pick = -1;
      std::size_t pick_links = 0;
      for (Vertex u = 0; u < pattern.order(); ++u) {
        if (taken[u]) continue;
        std::size_t links = 0;
        for (Vertex x : pattern.neighbors(u)) links += taken[x];
        if (pick < 0 || pattern.degree(u) > pattern.degree(static_cast<Vertex>(pick)) ||
            (pattern.degree(u) == pattern.degree(static_cast<Vertex>(pick)) && links > pick_links)) {
          pick = u;
          pick_links = links;
        }
      }
      taken[static_cast<Vertex>(pick)] = true;
      order_.push_back(static_cast<Vertex>(pick));
    }
    host_order_.resize(host.order());
    std::iota(host_order_.begin(), host_order_.end(), Vertex{0});
    std::stable_sort(host_order_.begin(), host_order_.end(),
                     [&](Vertex a, Vertex b) { return host.degree(a) < host.degree(b); });
    const auto edges = pattern.edges();
    for (std::size_t j = 0; j < edges.size(); ++j) edge_index_[edges[j]] = j;
    sub_.assign(edges.size(), 0);
  }

  SubdivisionSearch run() {
    SubdivisionSearch out;
    try {
      if (place(0)) {
        out.outcome = SearchOutcome::Found;
        out.witness = SubdivisionWitness{pattern_, image_, sub_};
      } else {
        out.outcome = SearchOutcome::None;
      }
    } catch (const BudgetExceeded&) {
      out.outcome = SearchOutcome::Unknown;
    }
    out.nodes = nodes_;
    return out;
  }

 private:
  void tick() {
    if (++nodes_ > budget_) throw BudgetExceeded("subdivision search budget");
  }

  bool place(std::size_t k) {
    if (k == order_.size()) return true;
    const Vertex u = order_[k];
    const std::size_t need = pattern_.degree(u);
    std::vector<Vertex> back;
    for (Vertex x : pattern_.neighbors(u))
      if (placed_[x]) back.push_back(x);
    for (Vertex h : host_order_) {
      if (used_[h] || host_.degree(h) < need) continue;
      std::size_t free = 0;
      for (Vertex z : host_.neighbors(h)) free += !used_[z];
      if (free < need) continue;
      tick();
      used_[h] = true;
      image_[u] = h;
      placed_[u] = true;
      if (assign_subs(k, u, back, 0)) return true;
      placed_[u] = false;
      used_[h] = false;
    }
    return false;
  }

  // Chooses subdivision vertices for edges from u back to placed neighbors.
  bool assign_subs(std::size_t k, Vertex u, const std::vector<Vertex>& back, std::size_t i) {
    if (i == back.size()) return place(k + 1);
    const Vertex x = back[i];
    const Vertex hu = image_[u], hx = image_[x];
    const std::size_t j = edge_index_.at({std::min(u, x), std::max(u, x)});
    for (Vertex z : host_.neighbors(hu)) {
      if (used_[z] || !host_.adjacent(z, hx)) continue;
      tick();
      used_[z] = true;
      sub_[j] = z;
      if (assign_subs(k, u, back, i + 1)) return true;
      used_[z] = false;
    }
    return false;
  }

  const Graph& host_;
  const Graph& pattern_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<bool> used_;
  std::vector<Vertex> image_;
  std::vector<bool> placed_;
  std::vector<Vertex> sub_;
  std::vector<Vertex> order_;
  std::vector<Vertex> host_order_;
  std::map<Edge, std::size_t> edge_index_;
};

// α of the graph on local ids 0..k-1 given as 32-bit neighbor masks.
int mask_alpha(std::uint32_t s, const std::vector<std::uint32_t>& adj) {
  if (!s) return 0;
  int best_v = -1, best_d = -1;
  for (std::uint32_t t = s; t; t &= t - 1) {
    int v = std::countr_zero(t);
    int d = std::popcount(adj[v] & s);
    if (d > best_d) {
      best_d = d;
      best_v = v;
    }
  }
  if (best_d == 0) return std::popcount(s);
  const std::uint32_t bit = std::uint32_t{1} << best_v;
  return std::max(mask_alpha(s & ~bit, adj), 1 + mask_alpha(s & ~bit & ~adj[best_v], adj));
}

class PatternProbe {
 public:
  PatternProbe(const Graph& host, const PatternLimits& limits) : host_(host), limits_(limits) {
    result_.value = 0;
  }

  // Evaluates the best pattern with branch set `branch` (ascending host ids).
  // Returns false when the budget ran out.
  bool probe_branch_set(const std::vector<Vertex>& branch, Rng* rng) {
    const std::size_t k = branch.size();
    if (Rational(static_cast<unsigned long>(k)) <= result_.value) return true;  // ratio <= |S|
    std::vector<Vertex> local(host_.order(), ~Vertex{0});
    for (std::size_t i = 0; i < k; ++i) local[branch[i]] = static_cast<Vertex>(i);
    struct Slot {
      Vertex z;
      std::vector<Vertex> reach;  // local ids of branch neighbors
    };
    std::vector<Slot> slots;
    for (Vertex z = 0; z < host_.order(); ++z) {
      if (local[z] != ~Vertex{0}) continue;
      Slot s{z, {}};
      for (Vertex x : host_.neighbors(z))
        if (local[x] != ~Vertex{0}) s.reach.push_back(local[x]);
      if (s.reach.size() >= 2) slots.push_back(std::move(s));
    }
    std::vector<std::pair<Vertex, Vertex>> pick(slots.size());
    return choose(branch, slots, 0, pick, rng);
  }

  PatternHallRatio& result() { return result_; }
  bool over_budget() const { return nodes_ > limits_.node_budget; }

 private:
  template <class Slots>
  bool choose(const std::vector<Vertex>& branch, const Slots& slots, std::size_t i,
              std::vector<std::pair<Vertex, Vertex>>& pick, Rng* rng) {
    if (i == slots.size()) return evaluate(branch, slots, pick);
    const auto& reach = slots[i].reach;
    if (rng) {
      auto a = uniform_below(*rng, reach.size());
      auto b = uniform_below(*rng, reach.size() - 1);
      if (b >= a) ++b;
      pick[i] = {std::min(reach[a], reach[b]), std::max(reach[a], reach[b])};
      return choose(branch, slots, i + 1, pick, rng);
    }
    for (std::size_t a = 0; a < reach.size(); ++a)
      for (std::size_t b = a + 1; b < reach.size(); ++b) {
        pick[i] = {reach[a], reach[b]};
        if (!choose(branch, slots, i + 1, pick, rng)) return false;
      }
    return true;
  }

  template <class Slots>
  bool evaluate(const std::vector<Vertex>& branch, const Slots& slots,
                const std::vector<std::pair<Vertex, Vertex>>& pick) {
    if (++nodes_ > limits_.node_budget) return false;
    const std::size_t k = branch.size();
    std::vector<std::uint32_t> adj(k, 0);
    for (auto [x, y] : pick) {
      adj[x] |= std::uint32_t{1} << y;
      adj[y] |= std::uint32_t{1} << x;
    }
    const std::uint32_t full = static_cast<std::uint32_t>((std::uint64_t{1} << k) - 1);
    const int alpha = mask_alpha(full, adj);
    Rational r(static_cast<unsigned long>(k), static_cast<unsigned long>(alpha));
    r.canonicalize();
    if (r <= result_.value) return true;
    // Record the pattern and a witness for it.
    std::map<Edge, Vertex> chooser;
    for (std::size_t i = 0; i < slots.size(); ++i) chooser.emplace(pick[i], slots[i].z);
    std::vector<Edge> edges;
    for (auto& [e, z] : chooser) edges.push_back(e);
    SubdivisionWitness w{build_graph(k, edges), branch, {}};
    for (auto e : w.pattern.edges()) w.sub_map.push_back(chooser.at(e));
    result_.value = r;
    result_.best = std::move(w);
    return true;
  }

  const Graph& host_;
  const PatternLimits& limits_;
  std::uint64_t nodes_ = 0;
  PatternHallRatio result_;
};

}  // namespace

SubdivisionSearch find_subdivision(const Graph& host, const Graph& pattern, std::uint64_t node_budget) {
  if (pattern.order() + pattern.size() > host.order()) return {SearchOutcome::None, std::nullopt, 0};
  return SubdivisionSearcher(host, pattern, node_budget).run();
}

PatternHallRatio max_pattern_hall_ratio(const Graph& host, const PatternLimits& limits) {
  if (host.empty()) throw PreconditionError("pattern probe on the empty host");
  const std::size_t cap = std::min<std::size_t>({limits.max_branch, AlphaTable::max_order, 31});
  PatternProbe probe(host, limits);
  bool complete = true;
  if (host.order() <= limits.exhaustive_max_order && host.order() <= 31) {
    const std::uint32_t full = static_cast<std::uint32_t>((std::uint64_t{1} << host.order()) - 1);
    for (std::uint32_t s = 1; s != 0 && s <= full; ++s) {
      if (static_cast<std::size_t>(std::popcount(s)) > cap) {
        complete = false;
        continue;
      }
      std::vector<Vertex> branch;
      for (std::uint32_t t = s; t; t &= t - 1) branch.push_back(static_cast<Vertex>(std::countr_zero(t)));
      if (!probe.probe_branch_set(branch, nullptr)) {
        complete = false;
        break;
      }
    }
  } else {
    complete = false;
    // Branch sets drawn from two-hop balls, since branch vertices of one
    // pattern edge share a neighbor.
    Rng rng = make_rng(limits.seed);
    probe.probe_branch_set({0}, nullptr);
    for (std::size_t i = 0; i < limits.samples && !probe.over_budget(); ++i) {
      const Vertex root = static_cast<Vertex>(uniform_below(rng, host.order()));
      std::vector<Vertex> ball;
      for (Vertex z : host.neighbors(root))
        for (Vertex x : host.neighbors(z))
          if (x != root) ball.push_back(x);
      std::sort(ball.begin(), ball.end());
      ball.erase(std::unique(ball.begin(), ball.end()), ball.end());
      std::vector<Vertex> branch{root};
      const std::size_t want = std::min(cap - 1, ball.size());
      const std::size_t size = want ? 1 + uniform_below(rng, want) : 0;
      for (std::size_t t = 0; t < size; ++t) {
        auto idx = t + uniform_below(rng, ball.size() - t);
        std::swap(ball[t], ball[idx]);
        branch.push_back(ball[t]);
      }
      std::sort(branch.begin(), branch.end());
      probe.probe_branch_set(branch, &rng);
    }
  }
  auto& r = probe.result();
  r.exact = complete;
  return r;
}

bool layer_edges_form_matchings(const LayeredGraph& lg, const SubdivisionWitness& w, std::string* why) {
  const auto edges = w.pattern.edges();
  std::map<std::size_t, std::vector<Vertex>> touched;
  for (std::size_t j = 0; j < edges.size(); ++j) {
    const std::size_t layer = lg.layer_of(w.sub_map.at(j));
    if (layer == 0) continue;
    touched[layer].push_back(edges[j].first);
    touched[layer].push_back(edges[j].second);
  }
  for (auto& [layer, ends] : touched) {
    std::sort(ends.begin(), ends.end());
    auto dup = std::adjacent_find(ends.begin(), ends.end());
    if (dup != ends.end()) {
      if (why)
        *why = "pattern vertex " + std::to_string(*dup) + " has two edges subdivided in layer " +
               std::to_string(layer);
      return false;
    }
  }
  return true;
}

}  // namespace halllab
