#pragma once

#include <cstdint>
#include <random>

namespace qamp {

// Deterministic random source: equal seeds give identical draw sequences on
// every platform. Doubles come from the top 53 bits of mt19937_64 output and
// bounded draws use rejection sampling, so nothing implementation-defined is
// involved. All randomness in the library flows through an explicit Rng.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return draws_; }

  std::uint64_t next_u64() {
    ++draws_;
    return engine_();
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in {0, ..., bound-1}.
  std::uint64_t next_below(std::uint64_t bound);

  // Derives a stream seed (splitmix64 mix); used to give each trial its own Rng.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  std::uint64_t draws_ = 0;
};

}  // namespace qamp
