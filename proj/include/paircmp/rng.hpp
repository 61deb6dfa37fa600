#pragma once

#include <cstdint>

namespace paircmp {

// SplitMix64 (Steele/Lea/Vigna). Used to expand seeds and to derive
// independent per-stream seeds from a master seed.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Deterministic derivation of a stream seed from (master, stream).
// Replications and sub-streams get their own generators through this, so
// results do not depend on thread count or scheduling.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream);

// xoshiro256++ with SplitMix64 seeding. Not cryptographic.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform on [0,1), 53 random bits.
  double next_double();

  // Uniform on [a,b).
  double uniform(double a, double b);

  // Standard normal via Box-Muller (caches the spare deviate).
  double normal();

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace paircmp
