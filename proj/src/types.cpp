#include "fmscore/types.hpp"

#include <cmath>
#include <string>

namespace fmscore {

Margin::Margin(double s0) : s0_(s0) {
  if (!(std::isfinite(s0) && s0 > -1.0 && s0 < 1.0)) {
    throw InvalidMargin("margin must lie strictly inside (-1, 1), got " +
                        std::to_string(s0));
  }
}

TrialCounts validate_counts(std::int64_t r1, std::int64_t n1, std::int64_t r2,
                            std::int64_t n2) {
  if (n1 < 1 || n2 < 1) {
    throw InvalidCounts("group sizes must be at least 1, got n1=" +
                        std::to_string(n1) + " n2=" + std::to_string(n2));
  }
  if (r1 < 0 || r1 > n1) {
    throw InvalidCounts("r1 must satisfy 0 <= r1 <= n1, got r1=" +
                        std::to_string(r1) + " n1=" + std::to_string(n1));
  }
  if (r2 < 0 || r2 > n2) {
    throw InvalidCounts("r2 must satisfy 0 <= r2 <= n2, got r2=" +
                        std::to_string(r2) + " n2=" + std::to_string(n2));
  }
  return TrialCounts{r1, n1, r2, n2};
}

Proportions derive_proportions(const TrialCounts& counts) {
  return Proportions{
      counts,
      double(counts.r1) / double(counts.n1),
      double(counts.r2) / double(counts.n2),
      double(counts.n2) / double(counts.n1),
  };
}

}  // namespace fmscore
