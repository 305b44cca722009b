#include "fmscore/ci.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fmscore/errors.hpp"
#include "fmscore/inference.hpp"
#include "fmscore/normal.hpp"

namespace fmscore {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Initial distance of the search bracket from the +-1 margin boundary. If no
// sign change shows up the end is pushed geometrically closer; too small a
// hop at the first try is how inversions lose roots near the boundary.
constexpr double kEdgeEps = 1e-9;
constexpr double kWidthTol = 1e-10;
constexpr int kMaxBisectIters = 200;
constexpr int kMaxExpansions = 4;

// z(s0) for the inversion. A degenerate variance means the point is
// infinitely far from acceptance, so it maps to +-infinity by the sign of
// the numerator.
double inversion_z(const TrialCounts& counts, double s0) {
  try {
    return z_statistic(counts, Margin(s0)).z;
  } catch (const DegenerateVariance&) {
    const Proportions props = derive_proportions(counts);
    return props.p_hat1 - props.p_hat2 - s0 > 0.0 ? kInf : -kInf;
  }
}

void check_level(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw OutOfDomain("confidence level must lie in (0, 1), got " +
                      std::to_string(level));
  }
}

double critical_value(double level) {
  return normal_quantile(0.5 + 0.5 * level);
}

template <typename Fn>
double bisect(const Fn& g, double a, double b, double ga) {
  for (int it = 0; it < kMaxBisectIters && b - a > kWidthTol; ++it) {
    const double mid = 0.5 * (a + b);
    const double gm = g(mid);
    if ((gm < 0.0) == (ga < 0.0)) {
      a = mid;
      ga = gm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

// Upper endpoint: the root of z(s0) + za going right from `start`, where the
// test still accepts. The far end begins at 1 - eps and is pushed toward 1
// if the statistic has not crossed -za yet.
double find_upper(const TrialCounts& counts, double start, double za) {
  const auto g = [&](double s0) { return inversion_z(counts, s0) + za; };
  double a = start;
  double ga = g(a);
  if (!(ga > 0.0)) {
    return a;  // already on the rejection boundary at the estimate
  }
  double eps = kEdgeEps;
  for (int attempt = 0; attempt < kMaxExpansions; ++attempt) {
    const double b = 1.0 - eps;
    if (!(b > a) || !(b < 1.0)) {
      break;
    }
    const double gb = g(b);
    if (gb <= 0.0) {
      return bisect(g, a, b, ga);
    }
    a = b;
    ga = gb;
    eps *= 1e-2;
  }
  throw BracketingFailure("no sign change for the upper endpoint on [" +
                              std::to_string(start) + ", " +
                              std::to_string(1.0 - eps * 1e2) + "]",
                          start, 1.0 - eps * 1e2);
}

// Lower endpoint: mirror image, the root of z(s0) - za going left from
// `start` toward -1.
double find_lower(const TrialCounts& counts, double start, double za) {
  const auto g = [&](double s0) { return inversion_z(counts, s0) - za; };
  double b = start;
  const double gb = g(b);
  if (!(gb < 0.0)) {
    return b;
  }
  double eps = kEdgeEps;
  for (int attempt = 0; attempt < kMaxExpansions; ++attempt) {
    const double a = -1.0 + eps;
    if (!(a < b) || !(a > -1.0)) {
      break;
    }
    const double ga = g(a);
    if (ga >= 0.0) {
      return bisect(g, a, b, ga);
    }
    b = a;
    eps *= 1e-2;
  }
  throw BracketingFailure("no sign change for the lower endpoint on [" +
                              std::to_string(-1.0 + eps * 1e2) + ", " +
                              std::to_string(start) + "]",
                          -1.0 + eps * 1e2, start);
}

}  // namespace

const char* to_string(EndpointMethod method) noexcept {
  switch (method) {
    case EndpointMethod::ClosedForm:
      return "ClosedForm";
    case EndpointMethod::Bisection:
      return "Bisection";
    case EndpointMethod::Boundary:
      return "Boundary";
  }
  return "ClosedForm";
}

ConfidenceInterval ci_both_extreme_closed_form(const TrialCounts& counts,
                                               double level) {
  check_level(level);
  const double za = critical_value(level);
  const double za2 = za * za;
  if (counts.r1 == counts.n1 && counts.r2 == counts.n2) {
    return ConfidenceInterval{-za2 / (double(counts.n1) + za2),
                              za2 / (double(counts.n2) + za2), level,
                              EndpointMethod::ClosedForm,
                              EndpointMethod::ClosedForm};
  }
  if (counts.r1 == 0 && counts.r2 == 0) {
    // Swapping arms negates the difference, so the all-zeros interval is the
    // reflected all-ones interval with the group sizes exchanged.
    return ConfidenceInterval{-za2 / (double(counts.n2) + za2),
                              za2 / (double(counts.n1) + za2), level,
                              EndpointMethod::ClosedForm,
                              EndpointMethod::ClosedForm};
  }
  throw WrongCase(
      "closed-form interval requires all responders or no responders in "
      "both groups");
}

ConfidenceInterval confidence_interval(const TrialCounts& counts,
                                       double level) {
  check_level(level);
  const bool ones1 = counts.r1 == counts.n1;
  const bool zeros1 = counts.r1 == 0;
  const bool ones2 = counts.r2 == counts.n2;
  const bool zeros2 = counts.r2 == 0;

  if ((ones1 && ones2) || (zeros1 && zeros2)) {
    return ci_both_extreme_closed_form(counts, level);
  }

  const double za = critical_value(level);
  const Proportions props = derive_proportions(counts);
  const double diff = props.p_hat1 - props.p_hat2;

  if (zeros1 && ones2) {
    // Observed difference -1: z -> 0 as s0 -> -1, so the boundary is never
    // rejected and the lower limit sits there.
    const double upper = find_upper(counts, -1.0 + kEdgeEps, za);
    return ConfidenceInterval{-1.0, upper, level, EndpointMethod::Boundary,
                              EndpointMethod::Bisection};
  }
  if (ones1 && zeros2) {
    const double lower = find_lower(counts, 1.0 - kEdgeEps, za);
    return ConfidenceInterval{lower, 1.0, level, EndpointMethod::Bisection,
                              EndpointMethod::Boundary};
  }

  // The estimate itself is never rejected (z = 0 there), which guarantees
  // one end of each bracket.
  const double upper = find_upper(counts, diff, za);
  const double lower = find_lower(counts, diff, za);
  return ConfidenceInterval{lower, upper, level, EndpointMethod::Bisection,
                            EndpointMethod::Bisection};
}

}  // namespace fmscore
