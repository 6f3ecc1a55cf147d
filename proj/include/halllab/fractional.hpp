#pragma once

#include "halllab/graph.hpp"
#include "halllab/independence.hpp"
#include "halllab/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace halllab {

struct WeightedSet {
  std::vector<Vertex> vertices;
  Rational weight;
};

/// Exact χ_f with both LP proofs: a fractional cover by independent sets
/// (primal) and a vertex weighting w with w(V)/α_w(G) = value (dual).
struct ChiFCertificate {
  Rational value;
  std::vector<WeightedSet> primal;
  std::vector<Rational> dual;
};

struct ChiFOptions {
  enum class Method {
    ColumnGeneration,  // pricing by exact maximum-weight independent set
    Enumeration,       // every maximal independent set up front; n <= 20
  };
  Method method = Method::ColumnGeneration;
  SearchLimits pricing{};
  std::uint64_t max_pivots = 5'000'000;
  std::uint64_t max_rounds = 100'000;
};

struct ChiFStats {
  std::uint64_t rounds = 0;   // master re-optimizations
  std::uint64_t pivots = 0;
  std::size_t columns = 0;    // pool size at termination
};

/// Throws BudgetExceeded when pricing, pivots or rounds run out.
ChiFCertificate chi_f_exact(const Graph& g, const ChiFOptions& options = {}, ChiFStats* stats = nullptr);

/// w(V)/α_w(G), a lower bound on χ_f(G) for any weight assignment.
Rational chi_f_lower_from_weights(const Graph& g, const WeightAssignment& w, SearchLimits limits = {});

struct CertificateReport {
  bool pass = false;
  std::vector<std::string> failures;
};

/// Rechecks every certificate clause from scratch, including a fresh α_w solve
/// for the dual side.
CertificateReport verify_certificate(const Graph& g, const ChiFCertificate& cert, SearchLimits limits = {});

/// All maximal independent sets, each ascending, in lexicographic order.
std::vector<std::vector<Vertex>> maximal_independent_sets(const Graph& g);

}  // namespace halllab
