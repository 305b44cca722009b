#include "fmscore/rng.hpp"

namespace fmscore {

std::int64_t binomial_draw(std::int64_t n, double p, RandomStream& stream) {
  if (p <= 0.0) {
    return 0;
  }
  if (p >= 1.0) {
    return n;
  }
  std::int64_t successes = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    if (stream.next_uniform() < p) {
      ++successes;
    }
  }
  return successes;
}

}  // namespace fmscore
