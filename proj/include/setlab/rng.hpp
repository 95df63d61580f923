#pragma once

#include <cstdint>
#include <random>

namespace setlab {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of the independent stream attached to (seed, index).
std::uint64_t stable_hash(std::uint64_t seed, std::uint64_t index) noexcept;

/// Uniform double in [0, 1) from the top 53 bits.
double to_unit(std::uint64_t bits) noexcept;

/// A seeded stream with a platform-independent uniform mapping.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  double uniform() { return to_unit(engine_()); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace setlab
