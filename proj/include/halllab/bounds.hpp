#pragma once

#include "halllab/generators.hpp"
#include "halllab/rational.hpp"

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace halllab {

/// A nonnegative quantity carried as its natural log; `zero` marks an exact 0.
struct LogProb {
  double log = 0.0;
  bool zero = false;

  static LogProb one() { return {}; }
  static LogProb nil() { return {0.0, true}; }
  static LogProb from_log(double l) { return {l, false}; }
  static LogProb from_linear(double x);

  /// Underflows to 0 for very negative logs.
  double linear() const;
  bool infinite() const { return !zero && log == HUGE_VAL; }

  friend LogProb operator*(LogProb x, LogProb y);
  friend LogProb operator+(LogProb x, LogProb y);  // log-sum-exp
  friend bool operator<(LogProb x, LogProb y);
  friend bool operator<=(LogProb x, LogProb y) { return !(y < x); }
};

std::string to_string(const LogProb& p);

/// Equal within the given relative tolerance on the log scale (or both zero).
bool approx_equal(LogProb x, LogProb y, double rel = 1e-9);
/// x <= y, allowing y to fall short by `rel` relative in linear space.
bool at_most(LogProb x, LogProb y, double rel = 1e-9);

/// P[X >= (1+delta)mu] <= exp(-delta^2 mu / (2+delta)).
LogProb chernoff_upper(double mu, double delta);
/// P[X <= (1-delta)mu] <= exp(-delta^2 mu / 2), 0 <= delta <= 1.
LogProb chernoff_lower(double mu, double delta);

/// Exact probability that `z` (pair ids, all in B) is independent in one
/// sample_hb draw: the product over A of 1 - C(d_Z(v),2)/C(a,2).
Rational hb_independence_probability(const SemiRegularPair& pair, std::span<const Vertex> z);

struct WeightLemmaBound {
  LogProb bound;
  bool hypothesis = false;  // degZ >= (√q a + q) n, decided exactly
};

/// n is |B|. Bound exp(-degZ (degZ - qn) / (a^2 q n)) when degZ > qn, else 1.
WeightLemmaBound weight_lemma_bound(std::uint64_t a, std::uint64_t q, std::uint64_t n, std::uint64_t deg_z);

enum class EventSide { Branch, Subdivision };

/// n = root^{4^M}; the layered graph's exponent for event m is eps_M 4^{m-1}.
struct EventParams {
  std::uint64_t root = 0;
  std::size_t M = 0;
  std::size_t m = 0;
  std::uint64_t s = 0;
  std::uint64_t t = 0;
};

/// ln n and ln |B_m| for the parameters (no range checks).
double log_n(const EventParams& p);
double log_layer_size(const EventParams& p, std::size_t i);

/// Throws PreconditionError unless 2 <= m <= M, 1 <= s <= |B_m|, t >= 4s.
void check_event_params(const EventParams& p);

struct EventBound {
  LogProb full;          // the product obtained from the counting argument
  LogProb simplified;    // branch: (2e)^{2t} n^{e'(4s-2t)}; subdivision: (e^2 M)^t n^{e'(4s-3t)}
  LogProb final_form;    // branch: (2e)^{2t} n^{-e' t}; subdivision: (e^2 M)^t n^{-e' t}
  LogProb target;        // (8M)^{-t}
  bool simplified_within_target = false;
  bool final_within_target = false;
};

EventBound event_bound(EventSide side, const EventParams& p);

/// Sum of the full product over t >= 4s: t = 4s..max(64, 8s) as a finite
/// geometric sum, then the tail x^T/(1-x), which is only used when the ratio
/// x between consecutive t is below 1/2 (infinite otherwise).
LogProb event_sum_over_t(EventSide side, const EventParams& p);

struct ThresholdRow {
  std::uint64_t root = 0;
  double log10_n = 0;
  LogProb branch_sum;
  LogProb subdivision_sum;
  bool passes = false;       // both sums < 1/2
  bool b_total_at_most_n = false;
  std::uint64_t explicit_terms = 0;
  bool enveloped = false;    // s beyond the explicit cap closed by an envelope
};

struct ThresholdReport {
  std::size_t M = 0;
  std::vector<ThresholdRow> rows;
  bool found = false;
  std::uint64_t minimal_root = 0;  // meaningful when found
  bool monotone = false;           // both sums non-increasing across rows
  Rational closed_form;            // 4 (M-1) (8M)^{-4}
  std::uint64_t min_root_b_total_at_most_n = 0;  // 0 when no row satisfies it
};

constexpr std::uint64_t union_s_cap = 4096;

/// Candidates are given by their roots r (n = r^{4^M}), ascending.
ThresholdReport union_bound_threshold(std::size_t M, std::span<const std::uint64_t> roots);

}  // namespace halllab
