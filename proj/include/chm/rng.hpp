#pragma once

#include <cstdint>
#include <numbers>

namespace chm {

// SplitMix64 finalizer; used both for seeding and as a counter-based stream.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based generator: value(i) depends only on (seed, stream, i), so
// draws can happen in any order or in parallel and stay reproducible.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : base_(mix64(mix64(seed) ^ (0x517cc1b727220a95ULL * (stream + 1)))) {}

  std::uint64_t bits(std::uint64_t index) const {
    return mix64(base_ + 0x9e3779b97f4a7c15ULL * index);
  }
  double uniform(std::uint64_t index) const {  // [0, 1)
    return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
  }
  double angle(std::uint64_t index) const {  // [0, 2*pi)
    return uniform(index) * 2.0 * std::numbers::pi;
  }

 private:
  std::uint64_t base_;
};

// Stateful convenience wrapper over CounterRng.
class RngSequence {
 public:
  explicit RngSequence(CounterRng rng) : rng_(rng) {}
  RngSequence(std::uint64_t seed, std::uint64_t stream = 0) : rng_(seed, stream) {}

  std::uint64_t bits() { return rng_.bits(next_++); }
  double uniform() { return rng_.uniform(next_++); }
  double angle() { return rng_.angle(next_++); }

 private:
  CounterRng rng_;
  std::uint64_t next_ = 0;
};

}  // namespace chm
