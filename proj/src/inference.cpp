#include "fmscore/inference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fmscore/errors.hpp"
#include "fmscore/normal.hpp"

namespace fmscore {

const char* to_string(Alternative alt) noexcept {
  switch (alt) {
    case Alternative::TwoSided:
      return "two-sided";
    case Alternative::Greater:
      return "greater";
    case Alternative::Less:
      return "less";
  }
  return "two-sided";
}

double null_variance(const ConstrainedMle& mle, const TrialCounts& counts) {
  return mle.p1d * mle.q1d / double(counts.n1) +
         mle.p2d * mle.q2d / double(counts.n2);
}

TestResult z_statistic(const TrialCounts& counts, Margin margin) {
  const Proportions props = derive_proportions(counts);
  const ConstrainedMle mle = constrained_mle(props, margin);
  const double v0 = null_variance(mle, counts);
  const double numerator = props.p_hat1 - props.p_hat2 - margin.s0();

  double z;
  if (v0 <= 0.0) {
    if (numerator != 0.0) {
      throw DegenerateVariance(
          "null variance is 0 with nonzero numerator " +
          std::to_string(numerator) + "; no informative asymptotic test");
    }
    // Data exactly at a degenerate null; any other convention would reject
    // spuriously at s0 = 0 with empty margins.
    z = 0.0;
  } else {
    z = numerator / std::sqrt(v0);
  }

  const double p_lower = normal_cdf(z);
  const double p_upper = normal_cdf(-z);
  const double p_two = std::min(1.0, 2.0 * std::min(p_lower, p_upper));
  return TestResult{z, v0, p_lower, p_upper, p_two, mle};
}

double chi_squared_stat(const TrialCounts& counts) {
  const std::int64_t responders = counts.r1 + counts.r2;
  const std::int64_t total = counts.n1 + counts.n2;
  if (responders == 0 || responders == total) {
    throw DegenerateTable(
        "pooled proportion is 0 or 1; chi-squared is undefined");
  }
  const double a = double(counts.r1);
  const double b = double(counts.n1 - counts.r1);
  const double c = double(counts.r2);
  const double d = double(counts.n2 - counts.r2);
  const double cross = a * d - b * c;
  return double(total) * cross * cross /
         (double(counts.n1) * double(counts.n2) * double(responders) *
          double(total - responders));
}

double p_value(const TestResult& result, Alternative alt) {
  switch (alt) {
    case Alternative::Greater:
      return result.p_upper;
    case Alternative::Less:
      return result.p_lower;
    case Alternative::TwoSided:
      break;
  }
  return result.p_two_sided;
}

}  // namespace fmscore
