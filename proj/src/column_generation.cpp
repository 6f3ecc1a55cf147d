#include "halllab/cover_lp.hpp"

#include "halllab/errors.hpp"

#include <algorithm>

namespace halllab {

CoverLp::CoverLp(std::size_t rows) : rows_(rows), in_basis_(rows, false) {}

bool CoverLp::add_column(std::vector<Vertex> set) {
  if (set.empty()) throw PreconditionError("empty set column");
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i] >= rows_) throw PreconditionError("set column id out of range");
    if (i && set[i - 1] >= set[i]) throw PreconditionError("set column ids must be ascending and distinct");
  }
  if (std::find(sets_.begin(), sets_.end(), set) != sets_.end()) return false;
  sets_.push_back(std::move(set));
  in_basis_.push_back(false);
  return true;
}

std::vector<Rational> CoverLp::entering_direction(std::size_t var) const {
  std::vector<Rational> d(rows_);
  if (is_slack(var)) {
    for (std::size_t i = 0; i < rows_; ++i) d[i] = -binv_[i][var];
  } else {
    for (std::size_t i = 0; i < rows_; ++i) {
      Rational s = 0;
      for (Vertex v : sets_[var - rows_]) s += binv_[i][v];
      d[i] = std::move(s);
    }
  }
  return d;
}

void CoverLp::pivot(std::size_t row, std::size_t var, const std::vector<Rational>& d) {
  const Rational p = d[row];
  for (auto& e : binv_[row]) e /= p;
  x_basic_[row] /= p;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i == row || sgn(d[i]) == 0) continue;
    const Rational f = d[i];
    for (std::size_t k = 0; k < rows_; ++k)
      if (sgn(binv_[row][k]) != 0) binv_[i][k] -= f * binv_[row][k];
    x_basic_[i] -= f * x_basic_[row];
  }
  in_basis_[basis_[row]] = false;
  basis_[row] = var;
  in_basis_[var] = true;
  ++pivots_;
}

CoverLp::Status CoverLp::optimize(std::uint64_t max_pivots) {
  if (!initialized_) {
    // Starting basis: singleton column of each vertex, B = I, x = 1.
    basis_.assign(rows_, 0);
    for (std::size_t v = 0; v < rows_; ++v) {
      auto it = std::find(sets_.begin(), sets_.end(), std::vector<Vertex>{static_cast<Vertex>(v)});
      if (it == sets_.end()) throw PreconditionError("singleton column missing for vertex " + std::to_string(v));
      basis_[v] = rows_ + static_cast<std::size_t>(it - sets_.begin());
      in_basis_[basis_[v]] = true;
    }
    binv_.assign(rows_, std::vector<Rational>(rows_, Rational(0)));
    for (std::size_t i = 0; i < rows_; ++i) binv_[i][i] = 1;
    x_basic_.assign(rows_, Rational(1));
    initialized_ = true;
  }
  const std::uint64_t stop = pivots_ + max_pivots;
  while (true) {
    auto y = duals();
    std::size_t entering = rows_ + sets_.size();
    for (std::size_t var = 0; var < rows_ + sets_.size(); ++var) {
      if (in_basis_[var]) continue;
      Rational reduced;
      if (is_slack(var)) {
        reduced = y[var];
      } else {
        reduced = 1;
        for (Vertex v : sets_[var - rows_]) reduced -= y[v];
      }
      if (sgn(reduced) < 0) {
        entering = var;
        break;
      }
    }
    if (entering == rows_ + sets_.size()) return Status::Optimal;
    if (pivots_ >= stop) return Status::PivotLimit;

    auto d = entering_direction(entering);
    std::size_t leave = rows_;
    Rational best_ratio;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (sgn(d[i]) <= 0) continue;
      Rational ratio = x_basic_[i] / d[i];
      if (leave == rows_ || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
        leave = i;
        best_ratio = std::move(ratio);
      }
    }
    // The objective is bounded below by zero, so some row always blocks.
    if (leave == rows_) throw std::logic_error("covering LP reported unbounded");
    pivot(leave, entering, d);
  }
}

std::vector<Rational> CoverLp::duals() const {
  std::vector<Rational> y(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i) {
    if (is_slack(basis_[i])) continue;
    for (std::size_t k = 0; k < rows_; ++k) y[k] += binv_[i][k];
  }
  return y;
}

std::vector<Rational> CoverLp::column_values() const {
  std::vector<Rational> x(sets_.size(), Rational(0));
  for (std::size_t i = 0; i < rows_; ++i)
    if (!is_slack(basis_[i])) x[basis_[i] - rows_] = x_basic_[i];
  return x;
}

Rational CoverLp::objective() const {
  Rational total = 0;
  for (std::size_t i = 0; i < rows_; ++i)
    if (!is_slack(basis_[i])) total += x_basic_[i];
  return total;
}

}  // namespace halllab
