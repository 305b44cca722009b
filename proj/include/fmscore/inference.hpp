#pragma once

#include "fmscore/mle.hpp"
#include "fmscore/types.hpp"

namespace fmscore {

enum class Alternative {
  TwoSided,
  Greater,
  Less,
};

const char* to_string(Alternative alt) noexcept;

struct TestResult {
  double z;
  double v0;           // estimated null variance of the difference
  double p_lower;      // P(Z <= z)
  double p_upper;      // P(Z >= z)
  double p_two_sided;  // min(1, 2 * min(p_lower, p_upper))
  ConstrainedMle mle;
};

// Null variance p1d*q1d/n1 + p2d*q2d/n2 evaluated at the constrained MLE.
double null_variance(const ConstrainedMle& mle, const TrialCounts& counts);

// The score statistic z = (p_hat1 - p_hat2 - s0) / sqrt(v0) with v0 from the
// constrained MLE, plus one- and two-sided p-values. When v0 = 0 with a zero
// numerator the statistic is defined as 0; a nonzero numerator over a zero
// variance throws DegenerateVariance.
TestResult z_statistic(const TrialCounts& counts, Margin margin);

// Pearson chi-squared of the 2x2 table, no continuity correction. Used as an
// oracle for the s0 = 0 identity z^2 == X^2. Throws DegenerateTable when the
// pooled proportion is 0 or 1.
double chi_squared_stat(const TrialCounts& counts);

// Selects the p-value matching the declared alternative hypothesis.
double p_value(const TestResult& result, Alternative alt);

}  // namespace fmscore
