#pragma once

#include <cstdint>

#include "fmscore/errors.hpp"

namespace fmscore {

// Observed two-arm binomial data: r responders out of n per group.
struct TrialCounts {
  std::int64_t r1;
  std::int64_t n1;
  std::int64_t r2;
  std::int64_t n2;
};

// Sample proportions plus the group-size ratio theta = n2/n1. The source
// counts ride along so extreme cases (a sample proportion exactly 0 or 1)
// stay detectable by integer comparison instead of floating-point equality.
struct Proportions {
  TrialCounts counts;
  double p_hat1;
  double p_hat2;
  double theta;
};

// Null-hypothesis difference p1 - p2. Only values strictly inside (-1, 1)
// are accepted: at +-1 every variance formula vanishes, so those are
// rejected up front instead of propagating NaN.
class Margin {
public:
  explicit Margin(double s0);
  double s0() const noexcept { return s0_; }

private:
  double s0_;
};

// Checks 0 <= r <= n and n >= 1 for both arms; throws InvalidCounts otherwise.
TrialCounts validate_counts(std::int64_t r1, std::int64_t n1, std::int64_t r2,
                            std::int64_t n2);

Proportions derive_proportions(const TrialCounts& counts);

}  // namespace fmscore
