#pragma once

#include "halllab/rational.hpp"

#include <cstdint>
#include <random>

namespace halllab {

/// Seed plus stream index; each (value, stream) pair names an independent
/// reproducible generator.
struct Seed {
  std::uint64_t value = 0;
  std::uint64_t stream = 0;

  /// Child stream for trial `index`; distinct indices give distinct streams.
  Seed substream(std::uint64_t index) const;
  friend bool operator==(const Seed&, const Seed&) = default;
};

using Rng = std::mt19937_64;

Rng make_rng(Seed seed);

std::uint64_t splitmix64(std::uint64_t x);

/// Uniform integer in [0, bound) by rejection; bound must be positive.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Exact Bernoulli trial with rational probability p in [0, 1]; the
/// denominator must fit in 64 bits.
bool bernoulli(Rng& rng, const Rational& p);

}  // namespace halllab
