#pragma once

#include <cassert>
#include <cstdint>
#include <limits>

namespace subseg {

// Finalizer of the splitmix64 generator. Pure function; the bit pattern is
// part of this toolkit's reproducibility contract and must not change.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// One seed-derivation step. Streams for corpus position (line i, word j) are
// derived as mix_seed(mix_seed(base, i), j), which makes per-word randomness
// independent of scheduling.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t value) {
  return splitmix64(seed + 0x9E3779B97F4A7C15ULL * (value + 1));
}

constexpr std::uint64_t word_stream_seed(std::uint64_t base, std::uint64_t line,
                                         std::uint64_t word) {
  return mix_seed(mix_seed(base, line), word);
}

// Deterministic pseudo-random source: a splitmix64 sequence. All draws are
// defined in terms of next_u64(), so identical seeds give identical streams
// on every platform.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return splitmix64(state_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return next_unit() < p; }

  // Unbiased uniform draw in [0, n); rejection-sampled.
  std::uint64_t uniform_below(std::uint64_t n) {
    assert(n > 0);
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t rem = (max % n + 1) % n;  // 2^64 mod n
    std::uint64_t x = next_u64();
    while (rem != 0 && x > max - rem) x = next_u64();
    return x % n;
  }

private:
  std::uint64_t state_;
};

}  // namespace subseg
