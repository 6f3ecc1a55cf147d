#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "halllab/graph.hpp"

namespace halllab {

// Fixed-capacity dynamic bitset over vertex ids; capacity chosen at construction.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t capacity) : words_((capacity + 63) / 64, 0) {}

  static VertexSet full(std::size_t capacity) {
    VertexSet s(capacity);
    for (std::size_t v = 0; v < capacity; ++v) s.insert(static_cast<Vertex>(v));
    return s;
  }

  void insert(Vertex v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void erase(Vertex v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  bool contains(Vertex v) const { return (words_[v >> 6] >> (v & 63)) & 1; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  std::size_t count_and(const VertexSet& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    return c;
  }

  VertexSet& operator&=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  VertexSet& operator|=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  VertexSet& subtract(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  /// Smallest member >= from, or -1.
  long next(std::size_t from) const {
    std::size_t wi = from >> 6;
    if (wi >= words_.size()) return -1;
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w) return static_cast<long>(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      if (++wi >= words_.size()) return -1;
      w = words_[wi];
    }
  }
  long first() const { return next(0); }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        f(static_cast<Vertex>(wi * 64 + static_cast<std::size_t>(std::countr_zero(w))));
        w &= w - 1;
      }
    }
  }

  std::vector<Vertex> to_vector() const {
    std::vector<Vertex> out;
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

/// Neighborhood bitsets, one per vertex.
inline std::vector<VertexSet> adjacency_sets(const Graph& g) {
  std::vector<VertexSet> adj(g.order(), VertexSet(g.order()));
  for (Vertex v = 0; v < g.order(); ++v)
    for (Vertex u : g.neighbors(v)) adj[v].insert(u);
  return adj;
}

/// 64-bit neighborhood masks for graphs with at most 64 vertices.
inline std::vector<std::uint64_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint64_t> adj(g.order(), 0);
  for (Vertex v = 0; v < g.order(); ++v)
    for (Vertex u : g.neighbors(v)) adj[v] |= std::uint64_t{1} << u;
  return adj;
}

}  // namespace halllab
