#pragma once

#include "halllab/graph.hpp"
#include "halllab/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace halllab {

/// Restricted master of the fractional covering LP
///
///   minimize  sum_j x_j   subject to  sum_{j : v in S_j} x_j >= 1  for every v,  x >= 0,
///
/// solved by an exact revised simplex with an explicit dense basis inverse.
/// Surplus variables occupy indices 0..n-1 and set columns follow, so
/// Bland's smallest-index rule applies to both entering and leaving choices.
/// The singleton column of every vertex must be added before optimize(); the
/// singletons form the starting feasible basis.
class CoverLp {
 public:
  explicit CoverLp(std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t column_count() const { return sets_.size(); }
  const std::vector<Vertex>& column(std::size_t j) const { return sets_[j]; }

  /// Adds a set column (ascending distinct ids). Returns false for a duplicate.
  bool add_column(std::vector<Vertex> set);

  enum class Status { Optimal, PivotLimit };
  /// Pivots until no column with negative reduced cost is left.
  Status optimize(std::uint64_t max_pivots);

  /// Simplex multipliers y = c_B B^{-1}; nonnegative at an optimum.
  std::vector<Rational> duals() const;
  /// Primal value of each set column (zero when nonbasic).
  std::vector<Rational> column_values() const;
  Rational objective() const;
  std::uint64_t pivots() const { return pivots_; }

 private:
  bool is_slack(std::size_t var) const { return var < rows_; }
  std::vector<Rational> entering_direction(std::size_t var) const;
  void pivot(std::size_t row, std::size_t var, const std::vector<Rational>& d);

  std::size_t rows_;
  std::vector<std::vector<Vertex>> sets_;
  std::vector<std::vector<Rational>> binv_;  // rows_ x rows_
  std::vector<Rational> x_basic_;
  std::vector<std::size_t> basis_;  // variable index per row
  std::vector<bool> in_basis_;
  bool initialized_ = false;
  std::uint64_t pivots_ = 0;
};

}  // namespace halllab
