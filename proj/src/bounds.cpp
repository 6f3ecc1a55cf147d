#include "halllab/bounds.hpp"

#include "halllab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace halllab {

namespace {

constexpr double ln2 = 0.69314718055994530942;

void require_finite_nonnegative(double x, const char* name) {
  if (!std::isfinite(x) || x < 0) throw PreconditionError(std::string(name) + " must be finite and nonnegative");
}

// ln(1 - e^x) for x < 0.
double log1m_exp(double x) { return x > -ln2 ? std::log(-std::expm1(x)) : std::log1p(-std::exp(x)); }

// ln of sum_{k=0}^{count-1} e^{k * log_ratio}.
double log_geometric(double log_ratio, std::uint64_t count) {
  if (count == 0) return -HUGE_VAL;
  if (log_ratio == 0) return std::log(static_cast<double>(count));
  const double kl = static_cast<double>(count) * log_ratio;
  if (log_ratio < 0) return log1m_exp(kl) - log1m_exp(log_ratio);
  // ratio > 1: r^{K-1} * (1 - r^{-K}) / (1 - r^{-1})
  return kl - log_ratio + log1m_exp(-kl) - log1m_exp(-log_ratio);
}

std::uint64_t pow4(std::size_t k) { return std::uint64_t{1} << (2 * k); }

// Saturating r^e.
std::uint64_t saturating_pow(std::uint64_t r, std::uint64_t e, std::uint64_t cap) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < e && out <= cap; ++i) {
    if (r > 1 && out > cap / r) return cap + 1;
    out *= r;
    if (r <= 1) break;
  }
  return std::min(out, cap + 1);
}

}  // namespace

LogProb LogProb::from_linear(double x) {
  if (std::isnan(x) || x < 0) throw PreconditionError("probability bound must be nonnegative");
  return x == 0 ? nil() : from_log(std::log(x));
}

double LogProb::linear() const { return zero ? 0.0 : std::exp(log); }

LogProb operator*(LogProb x, LogProb y) {
  if (x.zero || y.zero) return LogProb::nil();
  return LogProb::from_log(x.log + y.log);
}

LogProb operator+(LogProb x, LogProb y) {
  if (x.zero) return y;
  if (y.zero) return x;
  const double hi = std::max(x.log, y.log), lo = std::min(x.log, y.log);
  if (hi == HUGE_VAL) return LogProb::from_log(HUGE_VAL);
  return LogProb::from_log(hi + std::log1p(std::exp(lo - hi)));
}

bool operator<(LogProb x, LogProb y) {
  if (y.zero) return false;
  if (x.zero) return true;
  return x.log < y.log;
}

std::string to_string(const LogProb& p) {
  if (p.zero) return "0";
  if (p.log == HUGE_VAL) return "inf";
  if (p.log == 0) return "1";
  char buf[64];
  const double r = std::round(p.log);
  if (std::abs(p.log - r) <= 1e-9 * std::max(1.0, std::abs(p.log)))
    std::snprintf(buf, sizeof buf, "e^%.0f", r);
  else
    std::snprintf(buf, sizeof buf, "e^%.10g", p.log);
  return buf;
}

bool approx_equal(LogProb x, LogProb y, double rel) {
  if (x.zero || y.zero) return x.zero == y.zero;
  if (x.log == y.log) return true;
  return std::abs(x.log - y.log) <= rel * std::max({1.0, std::abs(x.log), std::abs(y.log)});
}

bool at_most(LogProb x, LogProb y, double rel) {
  if (x.zero) return true;
  if (y.zero) return false;
  if (x.log <= y.log) return true;
  return x.log - y.log <= rel * std::max({1.0, std::abs(x.log), std::abs(y.log)});
}

LogProb chernoff_upper(double mu, double delta) {
  require_finite_nonnegative(mu, "mu");
  require_finite_nonnegative(delta, "delta");
  return LogProb::from_log(-delta * delta * mu / (2 + delta));
}

LogProb chernoff_lower(double mu, double delta) {
  require_finite_nonnegative(mu, "mu");
  require_finite_nonnegative(delta, "delta");
  if (delta > 1) throw PreconditionError("delta must lie in [0, 1] for the lower tail");
  return LogProb::from_log(-delta * delta * mu / 2);
}

Rational hb_independence_probability(const SemiRegularPair& pair, std::span<const Vertex> z) {
  if (pair.a < 2) throw PreconditionError("H_B sampling needs a >= 2");
  std::vector<bool> in_b(pair.graph.order(), false), in_z(pair.graph.order(), false);
  for (Vertex v : pair.parts.side_b) in_b[v] = true;
  for (Vertex v : z) {
    if (v >= pair.graph.order() || !in_b[v]) throw PreconditionError("Z must be a subset of B");
    in_z[v] = true;
  }
  const unsigned long pairs = pair.a * (pair.a - 1) / 2;
  Rational p(1);
  for (Vertex v : pair.parts.side_a) {
    unsigned long d = 0;
    for (Vertex u : pair.graph.neighbors(v)) d += in_z[u];
    if (d < 2) continue;
    p *= Rational(static_cast<long>(pairs - d * (d - 1) / 2), pairs);
    p.canonicalize();
    if (sgn(p) == 0) break;
  }
  return p;
}

WeightLemmaBound weight_lemma_bound(std::uint64_t a, std::uint64_t q, std::uint64_t n, std::uint64_t deg_z) {
  if (a < 2 || q < 1 || n < 1) throw PreconditionError("weight lemma needs a >= 2, q >= 1, n >= 1");
  const Integer A(std::to_string(a)), Q(std::to_string(q)), N(std::to_string(n)), D(std::to_string(deg_z));
  if (D > Q * N * A) throw PreconditionError("deg(Z) exceeds qna");
  WeightLemmaBound out;
  const Integer excess = D - Q * N;
  out.hypothesis = sgn(excess) >= 0 && excess * excess >= Q * A * A * N * N;
  if (sgn(excess) <= 0) {
    out.bound = LogProb::one();
  } else {
    Rational e(D * excess, A * A * Q * N);
    e.canonicalize();
    out.bound = LogProb::from_log(-e.get_d());
  }
  return out;
}

double log_n(const EventParams& p) { return static_cast<double>(pow4(p.M)) * std::log(static_cast<double>(p.root)); }

double log_layer_size(const EventParams& p, std::size_t i) {
  return static_cast<double>(pow4(p.M) - pow4(i - 1)) * std::log(static_cast<double>(p.root));
}

void check_event_params(const EventParams& p) {
  if (p.M < 2 || p.M > 15) throw PreconditionError("event bounds need 2 <= M <= 15");
  if (p.m < 2 || p.m > p.M) throw PreconditionError("event index m must satisfy 2 <= m <= M");
  if (p.root < 1) throw PreconditionError("n must be a positive 4^M-th power");
  if (p.s < 1) throw PreconditionError("s must be at least 1");
  const std::uint64_t layer = saturating_pow(p.root, pow4(p.M) - pow4(p.m - 1), p.s);
  if (p.s > layer) throw PreconditionError("s exceeds |B_m|");
  if (p.t < 4 * p.s) throw PreconditionError("t must be at least 4s");
}

namespace {

struct SideTerms {
  double base = 0;   // log of the t = 0 extrapolation
  double slope = 0;  // log ratio between consecutive t
};

// Exponent of n per event: eps_M 4^{m-1} ln n = 4^{m-2} ln r.
double eps_log_n(const EventParams& p) {
  return static_cast<double>(pow4(p.m - 2)) * std::log(static_cast<double>(p.root));
}

// The full products are e^{base + slope t}.
SideTerms full_terms(EventSide side, const EventParams& p) {
  const double L = log_n(p), ls = std::log(static_cast<double>(p.s)), el = eps_log_n(p);
  const double s = static_cast<double>(p.s);
  if (side == EventSide::Branch) return {s * (L - ls), 2 * (1 + ln2) + (L - ls) + 2 * ls + 2 * (el - L)};
  return {s * (1 + L - ls), 1 + ls + std::log(static_cast<double>(p.M)) + (el - L)};
}

}  // namespace

EventBound event_bound(EventSide side, const EventParams& p) {
  check_event_params(p);
  const double t = static_cast<double>(p.t), s = static_cast<double>(p.s), el = eps_log_n(p);
  const double lnM = std::log(static_cast<double>(p.M));
  const auto terms = full_terms(side, p);
  EventBound out;
  out.full = LogProb::from_log(terms.base + terms.slope * t);
  if (side == EventSide::Branch) {
    out.simplified = LogProb::from_log(2 * t * (1 + ln2) + (4 * s - 2 * t) * el);
    out.final_form = LogProb::from_log(2 * t * (1 + ln2) - t * el);
  } else {
    out.simplified = LogProb::from_log(t * (2 + lnM) + (4 * s - 3 * t) * el);
    out.final_form = LogProb::from_log(t * (2 + lnM) - t * el);
  }
  out.target = LogProb::from_log(-t * std::log(8.0 * static_cast<double>(p.M)));
  out.simplified_within_target = out.simplified <= out.target;
  out.final_within_target = out.final_form <= out.target;
  return out;
}

namespace {
const double log_half = -ln2;
}  // namespace

LogProb event_sum_over_t(EventSide side, const EventParams& p) {
  check_event_params(p);
  const auto terms = full_terms(side, p);
  if (terms.slope >= log_half) return LogProb::from_log(HUGE_VAL);
  const std::uint64_t t0 = 4 * p.s, cap = std::max<std::uint64_t>(64, 8 * p.s);
  const double first = terms.base + terms.slope * static_cast<double>(t0);
  const LogProb head = LogProb::from_log(first + log_geometric(terms.slope, cap - t0 + 1));
  const double after = terms.base + terms.slope * static_cast<double>(cap + 1);
  const LogProb tail = LogProb::from_log(after - log1m_exp(terms.slope));
  return head + tail;
}

namespace {

// Sum over s in (s_cap, |B_m|]: the per-s sum is at most e^{s beta}/(1 - rho)
// with beta and rho evaluated at s = |B_m|, where both are largest.
LogProb envelope(EventSide side, const EventParams& p, std::uint64_t s_cap) {
  const double L = log_n(p), lb = log_layer_size(p, p.m), el = eps_log_n(p);
  const double lnM = std::log(static_cast<double>(p.M));
  double beta, rho;
  if (side == EventSide::Branch) {
    beta = 8 * (1 + ln2) + 3 * (lb - L) + 8 * el;
    rho = 2 * (1 + ln2) + lb - L + 2 * el;
  } else {
    beta = 5 + 3 * lb - 3 * L + 4 * lnM + 4 * el;
    rho = 1 + lb + lnM + el - L;
  }
  if (beta >= 0 || rho >= log_half) return LogProb::from_log(HUGE_VAL);
  return LogProb::from_log(static_cast<double>(s_cap + 1) * beta - log1m_exp(beta) - log1m_exp(rho));
}

}  // namespace

ThresholdReport union_bound_threshold(std::size_t M, std::span<const std::uint64_t> roots) {
  if (M < 2 || M > 15) throw PreconditionError("union bound needs 2 <= M <= 15");
  if (roots.empty()) throw PreconditionError("no candidates given");
  if (!std::is_sorted(roots.begin(), roots.end()) || roots.front() < 2)
    throw PreconditionError("candidate roots must be ascending and at least 2");
  ThresholdReport rep;
  rep.M = M;
  {
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 8 * M, 4);
    rep.closed_form = Rational(Integer(static_cast<unsigned long>(4 * (M - 1))), den);
    rep.closed_form.canonicalize();
  }
  for (std::uint64_t r : roots) {
    ThresholdRow row;
    row.root = r;
    row.log10_n = static_cast<double>(pow4(M)) * std::log10(static_cast<double>(r));
    row.branch_sum = LogProb::nil();
    row.subdivision_sum = LogProb::nil();
    double b_frac = 0;
    for (std::size_t i = 1; i <= M; ++i) b_frac += std::exp(-static_cast<double>(pow4(i - 1)) * std::log(double(r)));
    row.b_total_at_most_n = b_frac <= 1;
    for (std::size_t m = 2; m <= M; ++m) {
      const std::uint64_t layer = saturating_pow(r, pow4(M) - pow4(m - 1), union_s_cap);
      const std::uint64_t s_max = std::min(layer, union_s_cap);
      EventParams p{r, M, m, 1, 4};
      for (std::uint64_t s = 1; s <= s_max; ++s) {
        p.s = s;
        p.t = 4 * s;
        row.branch_sum = row.branch_sum + event_sum_over_t(EventSide::Branch, p);
        row.subdivision_sum = row.subdivision_sum + event_sum_over_t(EventSide::Subdivision, p);
        ++row.explicit_terms;
      }
      if (layer > union_s_cap) {
        row.enveloped = true;
        row.branch_sum = row.branch_sum + envelope(EventSide::Branch, p, union_s_cap);
        row.subdivision_sum = row.subdivision_sum + envelope(EventSide::Subdivision, p, union_s_cap);
      }
    }
    const LogProb half = LogProb::from_log(log_half);
    row.passes = row.branch_sum < half && row.subdivision_sum < half;
    if (row.passes && !rep.found) {
      rep.found = true;
      rep.minimal_root = r;
    }
    if (row.b_total_at_most_n && rep.min_root_b_total_at_most_n == 0) rep.min_root_b_total_at_most_n = r;
    rep.rows.push_back(row);
  }
  rep.monotone = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    const auto &prev = rep.rows[i - 1], &cur = rep.rows[i];
    auto non_increasing = [](LogProb now, LogProb before) { return before.infinite() || at_most(now, before); };
    if (!non_increasing(cur.branch_sum, prev.branch_sum) || !non_increasing(cur.subdivision_sum, prev.subdivision_sum))
      rep.monotone = false;
  }
  return rep;
}

}  // namespace halllab
