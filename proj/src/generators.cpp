#include "halllab/generators.hpp"

#include "halllab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace halllab {
namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > (unsigned __int128)1 << 63) return ~std::uint64_t{0};
  }
  return static_cast<std::uint64_t>(r);
}

// b-subsets of {0..a-1} as bitmasks, lexicographic by sorted element list.
void subsets_lex(unsigned a, unsigned b, unsigned start, std::uint64_t mask, std::vector<std::uint64_t>& out) {
  if (b == 0) {
    out.push_back(mask);
    return;
  }
  for (unsigned x = start; x + b <= a; ++x) subsets_lex(a, b - 1, x + 1, mask | (std::uint64_t{1} << x), out);
}

// Overflow-checked r^e; returns false when it exceeds 64 bits.
bool checked_pow(std::uint64_t r, std::uint64_t e, std::uint64_t& out) {
  if (r <= 1) {
    out = e == 0 ? 1 : r;
    return true;
  }
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    acc *= r;
    if (acc > ~std::uint64_t{0}) return false;
  }
  out = static_cast<std::uint64_t>(acc);
  return true;
}

LayeredGraph build_layered(std::uint64_t n, std::vector<std::uint64_t> sizes, Seed seed) {
  std::uint64_t total = n;
  for (auto s : sizes) {
    if (s == 0) throw PreconditionError("layer of size 0");
    total += s;
  }
  if (total >= 0xFFFFFFFFull) throw PreconditionError("layered graph too large for 32-bit vertex ids");
  LayeredGraph lg;
  lg.n = n;
  lg.layers = sizes.size();
  lg.layer_size = std::move(sizes);
  Vertex next = static_cast<Vertex>(n);
  for (auto s : lg.layer_size) {
    lg.layer_begin.push_back(next);
    next += static_cast<Vertex>(s);
  }
  Rng rng = make_rng(seed);
  GraphBuilder b(total);
  for (Vertex u = 0; u < n; ++u)
    for (std::size_t i = 0; i < lg.layers; ++i)
      b.add_edge(u, lg.layer_begin[i] + static_cast<Vertex>(uniform_below(rng, lg.layer_size[i])));
  lg.graph = std::move(b).build();
  return lg;
}

}  // namespace

Graph kneser(unsigned a, unsigned b) {
  if (b < 1 || a < 2 * b) throw PreconditionError("Kneser graph needs a >= 2b >= 2");
  if (a > 64 || binomial(a, b) > 100000) throw PreconditionError("Kneser graph too large: C(a,b) > 100000");
  std::vector<std::uint64_t> sets;
  subsets_lex(a, b, 0, 0, sets);
  std::unordered_map<std::uint64_t, Vertex> index;
  for (std::size_t i = 0; i < sets.size(); ++i) index.emplace(sets[i], static_cast<Vertex>(i));
  GraphBuilder builder(sets.size());
  const std::uint64_t universe = a == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << a) - 1;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::uint64_t rest = universe & ~sets[i];
    std::vector<unsigned> free;
    for (unsigned x = 0; x < a; ++x)
      if (rest >> x & 1) free.push_back(x);
    std::vector<std::uint64_t> local;
    subsets_lex(static_cast<unsigned>(free.size()), b, 0, 0, local);
    for (auto lm : local) {
      std::uint64_t m = 0;
      for (unsigned k = 0; k < free.size(); ++k)
        if (lm >> k & 1) m |= std::uint64_t{1} << free[k];
      Vertex j = index.at(m);
      if (j > i) builder.add_edge(static_cast<Vertex>(i), j);
    }
  }
  return std::move(builder).build();
}

std::vector<unsigned> kneser_label(unsigned a, unsigned b, Vertex v) {
  std::vector<std::uint64_t> sets;
  subsets_lex(a, b, 0, 0, sets);
  std::vector<unsigned> out;
  for (unsigned x = 0; x < a; ++x)
    if (sets.at(v) >> x & 1) out.push_back(x + 1);
  return out;
}

Graph mycielski(const Graph& g) {
  if (g.empty()) throw PreconditionError("Mycielskian of the empty graph");
  const auto n = static_cast<Vertex>(g.order());
  GraphBuilder b(2 * n + 1);
  for (auto [u, v] : g.edges()) {
    b.add_edge(u, v);
    b.add_edge(n + u, v);
    b.add_edge(n + v, u);
  }
  for (Vertex v = 0; v < n; ++v) b.add_edge(n + v, 2 * n);
  return std::move(b).build();
}

Graph join_of_copies(const Graph& g, std::size_t k) {
  if (k < 1) throw PreconditionError("join of zero copies");
  const std::uint64_t n = g.order();
  const long double edges = static_cast<long double>(k) * g.size() +
                            static_cast<long double>(k) * (k - 1) / 2 * static_cast<long double>(n) * n;
  if (static_cast<long double>(k) * n > 1e7L || edges > 1e8L)
    throw PreconditionError("join of copies too large");
  GraphBuilder b(k * n);
  for (std::size_t c = 0; c < k; ++c) {
    const auto off = static_cast<Vertex>(c * n);
    for (auto [u, v] : g.edges()) b.add_edge(off + u, off + v);
    for (std::size_t d = c + 1; d < k; ++d)
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v) b.add_edge(off + u, static_cast<Vertex>(d * n) + v);
  }
  return std::move(b).build();
}

SubdividedGraph one_subdivision(const Graph& h) {
  const auto n = static_cast<Vertex>(h.order());
  auto edges = h.edges();
  GraphBuilder b(n + edges.size());
  SubdivisionWitness w{h, std::vector<Vertex>(n), {}};
  std::iota(w.branch_map.begin(), w.branch_map.end(), Vertex{0});
  for (std::size_t j = 0; j < edges.size(); ++j) {
    const auto s = static_cast<Vertex>(n + j);
    b.add_edge(edges[j].first, s);
    b.add_edge(edges[j].second, s);
    w.sub_map.push_back(s);
  }
  return {std::move(b).build(), std::move(w)};
}

Graph gnp(std::size_t n, const Rational& p, Seed seed) {
  if (sgn(p) < 0 || p > 1) throw PreconditionError("edge probability outside [0,1]");
  Rng rng = make_rng(seed);
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (bernoulli(rng, p)) b.add_edge(u, v);
  return std::move(b).build();
}

bool check_semiregular(const SemiRegularPair& pair, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  const auto& A = pair.parts.side_a;
  const auto& B = pair.parts.side_b;
  if (!is_valid_bipartition(pair.graph, pair.parts)) return fail("(A,B) is not a bipartition of the graph");
  if (A.size() != pair.q * B.size()) return fail("|A| != q|B|");
  if (pair.a > B.size()) return fail("a exceeds |B|");
  for (Vertex v : A)
    if (pair.graph.degree(v) != pair.a)
      return fail("A-vertex " + std::to_string(v) + " has degree " + std::to_string(pair.graph.degree(v)));
  return true;
}

SemiRegularPair random_semiregular(std::size_t b, std::size_t a, std::size_t q, Seed seed) {
  if (b < 1 || q < 1 || a > b) throw PreconditionError("semiregular pair needs b >= 1, q >= 1, a <= b");
  const std::size_t na = q * b;
  Rng rng = make_rng(seed);
  GraphBuilder builder(na + b);
  std::vector<Vertex> pool(b);
  for (Vertex v = 0; v < na; ++v) {
    std::iota(pool.begin(), pool.end(), static_cast<Vertex>(na));
    for (std::size_t i = 0; i < a; ++i) {
      std::swap(pool[i], pool[i + uniform_below(rng, b - i)]);
      builder.add_edge(v, pool[i]);
    }
  }
  SemiRegularPair pair{std::move(builder).build(), {}, a, q};
  pair.parts.side_a.resize(na);
  std::iota(pair.parts.side_a.begin(), pair.parts.side_a.end(), Vertex{0});
  pair.parts.side_b.resize(b);
  std::iota(pair.parts.side_b.begin(), pair.parts.side_b.end(), static_cast<Vertex>(na));
  return pair;
}

HbSample sample_hb(const SemiRegularPair& pair, Seed seed) {
  const auto& B = pair.parts.side_b;
  std::unordered_map<Vertex, Vertex> local;
  for (std::size_t i = 0; i < B.size(); ++i) local.emplace(B[i], static_cast<Vertex>(i));
  std::vector<Vertex> A = pair.parts.side_a;
  std::sort(A.begin(), A.end());
  Rng rng = make_rng(seed);
  HbSample out;
  std::vector<std::pair<Edge, Vertex>> chooser;
  GraphBuilder builder(B.size());
  for (Vertex v : A) {
    auto nb = pair.graph.neighbors(v);
    const std::uint64_t d = nb.size();
    if (d < 2) throw PreconditionError("H_B needs every A-vertex to have at least 2 neighbors");
    // Unrank k among the C(d,2) pairs (i<j) in lexicographic order.
    std::uint64_t k = uniform_below(rng, d * (d - 1) / 2);
    std::uint64_t i = 0;
    while (k >= d - 1 - i) {
      k -= d - 1 - i;
      ++i;
    }
    const std::uint64_t j = i + 1 + k;
    Vertex x = local.at(nb[i]), y = local.at(nb[j]);
    if (x > y) std::swap(x, y);
    out.choices.emplace_back(x, y);
    chooser.push_back({{x, y}, v});
    builder.add_edge(x, y);
  }
  out.graph = std::move(builder).build();
  std::sort(chooser.begin(), chooser.end());
  out.witness.pattern = out.graph;
  out.witness.branch_map = B;
  for (auto e : out.graph.edges()) {
    auto it = std::lower_bound(chooser.begin(), chooser.end(), std::pair<Edge, Vertex>{e, 0});
    out.witness.sub_map.push_back(it->second);
  }
  return out;
}

std::vector<Vertex> LayeredGraph::layer(std::size_t i) const {
  std::vector<Vertex> out(layer_size.at(i - 1));
  std::iota(out.begin(), out.end(), layer_begin.at(i - 1));
  return out;
}

std::size_t LayeredGraph::layer_of(Vertex v) const {
  if (v < n) return 0;
  auto it = std::upper_bound(layer_begin.begin(), layer_begin.end(), v);
  return static_cast<std::size_t>(it - layer_begin.begin());
}

std::uint64_t LayeredGraph::b_total() const {
  return std::accumulate(layer_size.begin(), layer_size.end(), std::uint64_t{0});
}

std::vector<std::uint64_t> layered_sizes(std::uint64_t n, std::size_t M, std::uint64_t* root) {
  if (M < 1) throw PreconditionError("layered graph needs M >= 1");
  if (n < 1) throw PreconditionError("layered graph needs n >= 1");
  if (M > 31) throw PreconditionError("M too large");
  const std::uint64_t e = std::uint64_t{1} << (2 * M);  // 4^M
  // n = r^{4^M}; search around the floating estimate, confirm exactly.
  std::uint64_t r = 0;
  const double est = std::pow(static_cast<double>(n), 1.0 / static_cast<double>(e));
  for (std::uint64_t c = est > 2 ? static_cast<std::uint64_t>(est) - 1 : 1; c <= static_cast<std::uint64_t>(est) + 2; ++c) {
    std::uint64_t p;
    if (checked_pow(c, e, p) && p == n) {
      r = c;
      break;
    }
  }
  if (r == 0)
    throw PreconditionError("n = " + std::to_string(n) + " is not a " + std::to_string(e) + "-th power (4^M, M = " +
                            std::to_string(M) + ")");
  if (root) *root = r;
  // |B_i| = n^{1 - 4^{i-M-1}} = r^{4^M - 4^{i-1}}
  std::vector<std::uint64_t> sizes;
  for (std::size_t i = 1; i <= M; ++i) {
    std::uint64_t s;
    checked_pow(r, e - (std::uint64_t{1} << (2 * (i - 1))), s);
    sizes.push_back(s);
  }
  return sizes;
}

LayeredGraph sample_layered(std::uint64_t n, std::size_t M, Seed seed) {
  std::uint64_t root = 0;
  auto sizes = layered_sizes(n, M, &root);
  auto lg = build_layered(n, std::move(sizes), seed);
  lg.exact_mode = true;
  lg.root = root;
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 4, M + 1);
  lg.epsilon = Rational(Integer(1), den);
  return lg;
}

LayeredGraph sample_layered_scaled(std::uint64_t n, std::span<const std::uint64_t> sizes, Seed seed) {
  if (sizes.empty()) throw PreconditionError("layered graph needs at least one layer");
  auto lg = build_layered(n, {sizes.begin(), sizes.end()}, seed);
  lg.exact_mode = false;
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 4, lg.layers + 1);
  lg.epsilon = Rational(Integer(1), den);
  return lg;
}

}  // namespace halllab
