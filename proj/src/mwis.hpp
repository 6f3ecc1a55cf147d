#pragma once

// Branch-and-bound maximum-weight independent set shared by the unweighted,
// rational-weighted and integer-weighted entry points.

#include "halllab/errors.hpp"
#include "halllab/graph.hpp"
#include "halllab/vertex_set.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace halllab::detail {

template <class W>
class MwisSolver {
 public:
  MwisSolver(const Graph& g, std::vector<W> weights, std::uint64_t node_limit)
      : n_(g.order()), adj_(adjacency_sets(g)), w_(std::move(weights)), limit_(node_limit) {}

  struct Result {
    W weight;
    std::vector<Vertex> vertices;
    std::uint64_t nodes;
  };

  Result solve() {
    VertexSet all = VertexSet::full(n_);
    greedy_start(all);
    std::vector<Vertex> chosen;
    search(std::move(all), W(0), chosen);
    std::sort(best_set_.begin(), best_set_.end());
    return {best_, best_set_, nodes_};
  }

 private:
  std::size_t degree_in(Vertex v, const VertexSet& p) const { return adj_[v].count_and(p); }

  // Repeatedly take the vertex with the best weight/(degree+1) ratio.
  void greedy_start(VertexSet p) {
    best_ = W(0);
    best_set_.clear();
    while (!p.none()) {
      long pick = -1;
      W pick_w{};
      std::size_t pick_d = 0;
      p.for_each([&](Vertex v) {
        std::size_t d = degree_in(v, p);
        // w_v/(d_v+1) > w_pick/(d_pick+1), cross-multiplied
        if (pick < 0 || w_[v] * W(static_cast<long>(pick_d + 1)) > pick_w * W(static_cast<long>(d + 1))) {
          pick = v;
          pick_w = w_[v];
          pick_d = d;
        }
      });
      auto v = static_cast<Vertex>(pick);
      best_ += w_[v];
      best_set_.push_back(v);
      p.subtract(adj_[v]);
      p.erase(v);
    }
  }

  // Greedy clique partition of p; each clique contributes its heaviest vertex.
  W clique_cover_bound(VertexSet p) const {
    W bound(0);
    long u;
    while ((u = p.first()) >= 0) {
      VertexSet cand = adj_[static_cast<Vertex>(u)];
      cand &= p;
      W heaviest = w_[static_cast<Vertex>(u)];
      p.erase(static_cast<Vertex>(u));
      long v;
      while ((v = cand.first()) >= 0) {
        auto vv = static_cast<Vertex>(v);
        if (w_[vv] > heaviest) heaviest = w_[vv];
        p.erase(vv);
        cand &= adj_[vv];
      }
      bound += heaviest;
    }
    return bound;
  }

  void search(VertexSet p, W cur, std::vector<Vertex>& chosen) {
    if (++nodes_ > limit_)
      throw BudgetExceeded("independent-set search exceeded " + std::to_string(limit_) + " nodes");
    const std::size_t mark = chosen.size();

    // Forced moves: drop zero weights, take isolated vertices, take a pendant
    // vertex that outweighs its only neighbor.
    for (bool changed = true; changed;) {
      changed = false;
      std::vector<Vertex> members = p.to_vector();
      for (Vertex v : members) {
        if (!p.contains(v)) continue;
        if (w_[v] == W(0)) {
          p.erase(v);
          changed = true;
          continue;
        }
        std::size_t d = degree_in(v, p);
        if (d == 0) {
          p.erase(v);
          cur += w_[v];
          chosen.push_back(v);
          changed = true;
        } else if (d == 1) {
          VertexSet nb = adj_[v];
          nb &= p;
          auto u = static_cast<Vertex>(nb.first());
          if (w_[v] >= w_[u]) {
            p.erase(v);
            p.erase(u);
            cur += w_[v];
            chosen.push_back(v);
            changed = true;
          }
        }
      }
    }

    if (p.none()) {
      if (cur > best_) {
        best_ = cur;
        best_set_ = chosen;
      }
    } else if (cur + clique_cover_bound(p) > best_) {
      Vertex pivot = 0;
      std::size_t pivot_d = 0;
      bool first = true;
      p.for_each([&](Vertex v) {
        std::size_t d = degree_in(v, p);
        if (first || d > pivot_d) {
          pivot = v;
          pivot_d = d;
          first = false;
        }
      });
      VertexSet with = p;
      with.subtract(adj_[pivot]);
      with.erase(pivot);
      chosen.push_back(pivot);
      search(std::move(with), cur + w_[pivot], chosen);
      chosen.pop_back();
      p.erase(pivot);
      search(std::move(p), cur, chosen);
    }
    chosen.resize(mark);
  }

  std::size_t n_;
  std::vector<VertexSet> adj_;
  std::vector<W> w_;
  std::uint64_t limit_;
  std::uint64_t nodes_ = 0;
  W best_{};
  std::vector<Vertex> best_set_;
};

}  // namespace halllab::detail
