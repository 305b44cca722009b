#pragma once

#include "fmscore/types.hpp"

namespace fmscore {

// Which computation produced the constrained estimates.
enum class CaseTag {
  General,
  BothOnes,
  BothZeros,
  ZeroOne,
  OneZero,
  ZeroMargin,
};

inline constexpr int kCaseTagCount = 6;

const char* to_string(CaseTag tag) noexcept;

// Maximum-likelihood estimates of (p1, p2) under the constraint
// p1 - p2 = s0, with their complements and the dispatch provenance.
struct ConstrainedMle {
  double p1d;
  double p2d;
  double q1d;  // 1 - p1d
  double q2d;  // 1 - p2d
  CaseTag case_tag;
};

// Full dispatch: zero margin and the four doubly-extreme cases go to closed
// forms, everything else to the cubic.
ConstrainedMle constrained_mle(const Proportions& props, Margin margin);

// Cubic route without the special-case dispatch: solve, keep the roots that
// land in [max(0,s0), min(1,1+s0)], pick the one with the highest likelihood.
// Exposed so the closed forms can be checked against it.
ConstrainedMle constrained_mle_general(const Proportions& props,
                                       Margin margin);

// Closed forms for the doubly-extreme observations. Preconditions are the
// stated sample-proportion patterns; s0 != 0 for the first two.
ConstrainedMle mle_both_ones(double theta, Margin margin);
ConstrainedMle mle_both_zeros(double theta, Margin margin);
ConstrainedMle mle_zero_one(double theta, Margin margin);
ConstrainedMle mle_one_zero(double theta, Margin margin);

// s0 = 0: the pooled estimate (r1 + r2) / (n1 + n2) for both arms.
ConstrainedMle mle_zero_margin(const Proportions& props);

// Log-likelihood of the data at the constrained point (p1d, p1d - s0), with
// the convention 0*log(0) = 0. Returns -infinity when a positive count
// multiplies log(0); that is a value, not an error.
double constrained_log_likelihood(const TrialCounts& counts, double p1d,
                                  Margin margin);

// Grid-search maximizer of constrained_log_likelihood over the feasible
// interval, refined by bracket shrinking until the bracket is narrower than
// 1e-10. Slow and independent of the cubic path; intended as a test oracle.
ConstrainedMle brute_force_mle(const TrialCounts& counts, Margin margin,
                               int grid_points);

}  // namespace fmscore
