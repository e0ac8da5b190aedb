#include "jcir/rng.hpp"

#include <algorithm>
#include <cmath>

namespace jcir {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng Rng::for_stream(std::uint64_t seed, std::uint64_t stream) {
  const std::uint64_t k0 = splitmix64(seed);
  const std::uint64_t k1 = splitmix64(k0 ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(k0), static_cast<std::uint32_t>(k0 >> 32),
                    static_cast<std::uint32_t>(k1), static_cast<std::uint32_t>(k1 >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  Rng rng(0);
  rng.engine_.seed(seq);
  return rng;
}

double Rng::gamma(double shape, double scale) {
  if (shape <= 0.0) return 0.0;
  return std::gamma_distribution<double>(shape, scale)(engine_);
}

double Rng::poisson(double mean) {
  if (mean <= 0.0) return 0.0;
  if (mean < 1e15) {
    return static_cast<double>(std::poisson_distribution<long long>(mean)(engine_));
  }
  // Relative standard deviation is below 1e-7 here; the normal limit is exact
  // to double precision for all practical purposes.
  return std::max(0.0, std::round(mean + std::sqrt(mean) * normal()));
}

}  // namespace jcir
