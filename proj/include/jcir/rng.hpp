#pragma once

#include <cstdint>
#include <random>

namespace jcir {

// One independent random stream. Distribution objects that keep internal
// state (the polar normal generator caches a second variate) live here so
// repeated draws do not discard half of the work.
class Rng {
 public:
  using engine_type = std::mt19937_64;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Stream `stream` of master seed `seed`. Streams are derived by hashing the
  // (seed, stream) counter pair, so replicate r always gets the same stream
  // no matter which thread runs it.
  static Rng for_stream(std::uint64_t seed, std::uint64_t stream);

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double normal() { return normal_(engine_); }
  double exponential(double rate) { return std::exponential_distribution<double>(rate)(engine_); }
  // Gamma(shape, scale); shape == 0 is the point mass at zero.
  double gamma(double shape, double scale);
  // Poisson draw returned as a double so very large means do not overflow.
  double poisson(double mean);

  engine_type& engine() { return engine_; }

 private:
  engine_type engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace jcir
