#include "halllab/random.hpp"

#include "halllab/errors.hpp"

namespace halllab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

Seed Seed::substream(std::uint64_t index) const {
  return {value, splitmix64(stream ^ splitmix64(index + 0x632BE59BD9B4E019ull))};
}

Rng make_rng(Seed seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed.value), static_cast<std::uint32_t>(seed.value >> 32),
                    static_cast<std::uint32_t>(seed.stream), static_cast<std::uint32_t>(seed.stream >> 32)};
  return Rng(seq);
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw PreconditionError("uniform_below(0)");
  // Largest multiple of bound that fits, so the accepted range is unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
  while (true) {
    std::uint64_t x = rng();
    if (x <= limit) return x % bound;
  }
}

bool bernoulli(Rng& rng, const Rational& p) {
  if (sgn(p) < 0 || p > 1) throw PreconditionError("probability outside [0,1]: " + p.get_str());
  if (sgn(p) == 0) return false;
  if (p == 1) return true;
  const auto& den = p.get_den();
  if (!den.fits_ulong_p()) throw PreconditionError("probability denominator exceeds 64 bits");
  return uniform_below(rng, den.get_ui()) < p.get_num().get_ui();
}

}  // namespace halllab
