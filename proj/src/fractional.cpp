#include "halllab/fractional.hpp"

#include "halllab/cover_lp.hpp"
#include "halllab/errors.hpp"
#include "halllab/vertex_set.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace halllab {
namespace {

// Extends `set` to a maximal independent set, adding vertices in id order.
std::vector<Vertex> make_maximal(const Graph& g, std::vector<Vertex> set) {
  VertexSet blocked(g.order());
  for (Vertex v : set) {
    blocked.insert(v);
    for (Vertex u : g.neighbors(v)) blocked.insert(u);
  }
  for (Vertex v = 0; v < g.order(); ++v) {
    if (blocked.contains(v)) continue;
    set.push_back(v);
    blocked.insert(v);
    for (Vertex u : g.neighbors(v)) blocked.insert(u);
  }
  std::sort(set.begin(), set.end());
  return set;
}

// Heaviest-first greedy independent set under weights y.
std::vector<Vertex> greedy_weighted(const Graph& g, const std::vector<Rational>& y) {
  std::vector<Vertex> order(g.order());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return y[a] > y[b]; });
  VertexSet blocked(g.order());
  std::vector<Vertex> set;
  for (Vertex v : order) {
    if (blocked.contains(v) || sgn(y[v]) == 0) continue;
    set.push_back(v);
    blocked.insert(v);
    for (Vertex u : g.neighbors(v)) blocked.insert(u);
  }
  return make_maximal(g, std::move(set));
}

Rational weight_of(const std::vector<Vertex>& set, const std::vector<Rational>& y) {
  Rational s = 0;
  for (Vertex v : set) s += y[v];
  return s;
}

void enumerate_maximal(const std::vector<VertexSet>& adj, std::vector<Vertex>& current, VertexSet candidates,
                       VertexSet excluded, std::vector<std::vector<Vertex>>& out) {
  // Bron–Kerbosch on the complement: candidates/excluded hold non-neighbors.
  if (candidates.none() && excluded.none()) {
    auto s = current;
    std::sort(s.begin(), s.end());
    out.push_back(std::move(s));
    return;
  }
  long v;
  while ((v = candidates.first()) >= 0) {
    auto vv = static_cast<Vertex>(v);
    VertexSet next_c = candidates, next_x = excluded;
    next_c.subtract(adj[vv]);
    next_c.erase(vv);
    next_x.subtract(adj[vv]);
    next_x.erase(vv);
    current.push_back(vv);
    enumerate_maximal(adj, current, std::move(next_c), std::move(next_x), out);
    current.pop_back();
    candidates.erase(vv);
    excluded.insert(vv);
  }
}

ChiFCertificate trivial_certificate(const Graph& g) {
  std::vector<Vertex> all(g.order());
  std::iota(all.begin(), all.end(), Vertex{0});
  Rational share(1, static_cast<unsigned long>(g.order()));
  share.canonicalize();
  return {Rational(1), {{all, Rational(1)}}, std::vector<Rational>(g.order(), share)};
}

}  // namespace

std::vector<std::vector<Vertex>> maximal_independent_sets(const Graph& g) {
  std::vector<std::vector<Vertex>> out;
  if (g.empty()) return out;
  auto adj = adjacency_sets(g);
  std::vector<Vertex> current;
  enumerate_maximal(adj, current, VertexSet::full(g.order()), VertexSet(g.order()), out);
  std::sort(out.begin(), out.end());
  return out;
}

ChiFCertificate chi_f_exact(const Graph& g, const ChiFOptions& options, ChiFStats* stats) {
  if (g.empty()) throw PreconditionError("fractional chromatic number of the empty graph");
  if (g.size() == 0) {
    if (stats) *stats = {};
    return trivial_certificate(g);
  }
  const std::size_t n = g.order();
  CoverLp lp(n);
  for (Vertex v = 0; v < n; ++v) lp.add_column({v});

  if (options.method == ChiFOptions::Method::Enumeration) {
    if (n > 20) throw PreconditionError("enumeration method supports at most 20 vertices");
    for (auto& s : maximal_independent_sets(g)) lp.add_column(std::move(s));
  } else {
    for (Vertex v = 0; v < n; ++v) lp.add_column(make_maximal(g, {v}));
  }

  std::uint64_t rounds = 0;
  std::vector<Rational> y;
  while (true) {
    if (++rounds > options.max_rounds) throw BudgetExceeded("column generation exceeded its round limit");
    const auto remaining = options.max_pivots > lp.pivots() ? options.max_pivots - lp.pivots() : 0;
    if (lp.optimize(remaining) == CoverLp::Status::PivotLimit)
      throw BudgetExceeded("simplex exceeded its pivot limit");
    y = lp.duals();

    // Cheap greedy column first; the exact oracle only when it fails.
    auto greedy = greedy_weighted(g, y);
    if (weight_of(greedy, y) > 1 && lp.add_column(greedy)) continue;

    auto best = alpha_weighted(g, WeightAssignment(y), options.pricing);
    if (best.weight <= 1) break;
    if (!lp.add_column(make_maximal(g, best.vertices)))
      throw std::logic_error("pricing returned a column already in the pool");
  }

  ChiFCertificate cert;
  cert.value = lp.objective();
  auto x = lp.column_values();
  for (std::size_t j = 0; j < x.size(); ++j)
    if (sgn(x[j]) > 0) cert.primal.push_back({lp.column(j), x[j]});
  cert.dual = std::move(y);
  if (stats) *stats = {rounds, lp.pivots(), lp.column_count()};
  return cert;
}

Rational chi_f_lower_from_weights(const Graph& g, const WeightAssignment& w, SearchLimits limits) {
  auto best = alpha_weighted(g, w, limits);
  return w.total() / best.weight;
}

CertificateReport verify_certificate(const Graph& g, const ChiFCertificate& cert, SearchLimits limits) {
  CertificateReport report;
  auto fail = [&](std::string msg) { report.failures.push_back(std::move(msg)); };
  const std::size_t n = g.order();

  std::vector<Rational> coverage(n, Rational(0));
  Rational primal_total = 0;
  for (std::size_t i = 0; i < cert.primal.size(); ++i) {
    const auto& [set, weight] = cert.primal[i];
    bool in_range = std::all_of(set.begin(), set.end(), [&](Vertex v) { return v < n; });
    if (!in_range || set.empty()) {
      fail("primal set " + std::to_string(i) + " is empty or has an out-of-range vertex");
      continue;
    }
    if (!is_independent(g, set)) fail("primal set not independent (set " + std::to_string(i) + ")");
    if (sgn(weight) <= 0) fail("primal weight not positive (set " + std::to_string(i) + ")");
    for (Vertex v : set) coverage[v] += weight;
    primal_total += weight;
  }
  for (Vertex v = 0; v < n; ++v)
    if (coverage[v] < 1) fail("vertex " + std::to_string(v) + " covered with total weight below 1");
  if (primal_total != cert.value)
    fail("primal value mismatch: weights sum to " + primal_total.get_str() + ", certificate claims " +
         cert.value.get_str());

  if (cert.dual.size() != n) {
    fail("dual has " + std::to_string(cert.dual.size()) + " weights for " + std::to_string(n) + " vertices");
  } else {
    try {
      WeightAssignment w(cert.dual);
      auto ratio = chi_f_lower_from_weights(g, w, limits);
      if (ratio != cert.value)
        fail("dual bound mismatch: w(V)/alpha_w = " + ratio.get_str() + ", certificate claims " +
             cert.value.get_str());
    } catch (const PreconditionError& e) {
      fail(std::string("dual weights invalid: ") + e.what());
    }
  }
  report.pass = report.failures.empty();
  return report;
}

}  // namespace halllab
