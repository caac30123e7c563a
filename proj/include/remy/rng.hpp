#pragma once

#include <cstdint>
#include <random>

namespace remy {

// Seedable, splittable generator. The engine is std::mt19937_64 seeded with
// a single 64-bit value; bounded integers use Lemire's multiply-and-reject
// method so sequences do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on {0, ..., bound - 1}; bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool coin() { return (next_u64() >> 63) != 0; }

  // Child generator with a derived seed; advances this generator by one draw.
  Rng split() { return Rng(mix(next_u64() ^ 0x9e3779b97f4a7c15ULL)); }

  // splitmix64 finalizer, also used for counter-based bit streams.
  static std::uint64_t mix(std::uint64_t x);

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace remy
