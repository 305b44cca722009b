#pragma once

#include <cstdint>

namespace fmscore {

// Counter-based splittable random stream (splitmix64). Each (seed, index)
// pair names an independent stream, so parallel consumers can draw without
// coordination and still reproduce the sequential results bit for bit.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t state) : state_(state) {}

  RandomStream(std::uint64_t seed, std::uint64_t stream_index)
      : state_(mix(seed + 0x9E3779B97F4A7C15ULL * (stream_index + 1))) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

// Exact Binomial(n, p) sample as a sum of n Bernoulli draws. Exact in
// distribution for every n and p, including p = 0 and p = 1.
std::int64_t binomial_draw(std::int64_t n, double p, RandomStream& stream);

}  // namespace fmscore
