#include "fmscore/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fmscore/cubic.hpp"
#include "fmscore/errors.hpp"

namespace fmscore {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Roots sitting on the feasible boundary arrive perturbed by roundoff; treat
// anything within this distance as feasible and clamp it onto the interval.
constexpr double kFeasibleTol = 1e-12;

struct Interval {
  double lo;
  double hi;
};

// p1d must satisfy both 0 <= p1d <= 1 and 0 <= p1d - s0 <= 1.
Interval feasible_interval(double s0) {
  return {std::max(0.0, s0), std::min(1.0, 1.0 + s0)};
}

double xlogy(double x, double y) {
  if (x <= 0.0) {
    return 0.0;  // 0 * log(0) convention
  }
  if (y <= 0.0) {
    return -kInf;
  }
  return x * std::log(y);
}

// Log-likelihood per subject of group 1; the absolute group sizes scale the
// objective without moving its maximizer, so proportions suffice.
double scaled_log_likelihood(const Proportions& props, double p1d, double s0) {
  const double p2d = p1d - s0;
  return xlogy(props.p_hat1, p1d) + xlogy(1.0 - props.p_hat1, 1.0 - p1d) +
         props.theta * (xlogy(props.p_hat2, p2d) +
                        xlogy(1.0 - props.p_hat2, 1.0 - p2d));
}

ConstrainedMle make_constrained(double p1d, double s0, CaseTag tag) {
  const Interval f = feasible_interval(s0);
  const double p1 = std::clamp(p1d, f.lo, f.hi);
  const double p2 = std::clamp(p1 - s0, 0.0, 1.0);
  return ConstrainedMle{p1, p2, 1.0 - p1, 1.0 - p2, tag};
}

}  // namespace

const char* to_string(CaseTag tag) noexcept {
  switch (tag) {
    case CaseTag::General:
      return "General";
    case CaseTag::BothOnes:
      return "BothOnes";
    case CaseTag::BothZeros:
      return "BothZeros";
    case CaseTag::ZeroOne:
      return "ZeroOne";
    case CaseTag::OneZero:
      return "OneZero";
    case CaseTag::ZeroMargin:
      return "ZeroMargin";
  }
  return "General";
}

ConstrainedMle mle_both_ones(double theta, Margin margin) {
  (void)theta;  // the maximizer does not depend on the group ratio
  const double s0 = margin.s0();
  if (s0 > 0.0) {
    return make_constrained(1.0, s0, CaseTag::BothOnes);
  }
  return make_constrained(1.0 + s0, s0, CaseTag::BothOnes);
}

ConstrainedMle mle_both_zeros(double theta, Margin margin) {
  (void)theta;
  const double s0 = margin.s0();
  if (s0 > 0.0) {
    return make_constrained(s0, s0, CaseTag::BothZeros);
  }
  return make_constrained(0.0, s0, CaseTag::BothZeros);
}

ConstrainedMle mle_zero_one(double theta, Margin margin) {
  const double s0 = margin.s0();
  if (theta + s0 > 0.0) {
    return make_constrained((theta + s0) / (1.0 + theta), s0, CaseTag::ZeroOne);
  }
  // theta + s0 <= 0 forces s0 < 0; the double root (0, -s0) is the maximum.
  return make_constrained(0.0, s0, CaseTag::ZeroOne);
}

ConstrainedMle mle_one_zero(double theta, Margin margin) {
  const double s0 = margin.s0();
  if (1.0 - s0 * theta > 0.0) {
    return make_constrained((1.0 + s0) / (1.0 + theta), s0, CaseTag::OneZero);
  }
  // 1 - s0*theta <= 0 forces s0 > 0 and the interior root leaves the
  // feasible interval. Pick between the remaining root-table columns,
  // (s0, 0) and (1, 1 - s0), by the likelihood they attain:
  // log L / n1 = log(p1d) + theta * log(q2d).
  const double ll_low = std::log(s0);           // at (s0, 0)
  const double ll_high = theta * std::log(s0);  // at (1, 1 - s0)
  const double p1d = ll_low >= ll_high ? s0 : 1.0;
  return make_constrained(p1d, s0, CaseTag::OneZero);
}

ConstrainedMle mle_zero_margin(const Proportions& props) {
  const TrialCounts& c = props.counts;
  const double pooled =
      double(c.r1 + c.r2) / double(c.n1 + c.n2);
  return make_constrained(pooled, 0.0, CaseTag::ZeroMargin);
}

ConstrainedMle constrained_mle_general(const Proportions& props,
                                       Margin margin) {
  const double s0 = margin.s0();
  const auto roots = solve_cubic_three_real(cubic_coefficients(props, margin));
  const Interval f = feasible_interval(s0);

  bool found = false;
  double best_p = 0.0;
  double best_ll = -kInf;
  const auto consider = [&](double p) {
    const double ll = scaled_log_likelihood(props, p, s0);
    if (ll > -kInf && (!found || ll > best_ll)) {
      found = true;
      best_p = p;
      best_ll = ll;
    }
  };
  for (double root : roots) {
    if (root < f.lo - kFeasibleTol || root > f.hi + kFeasibleTol) {
      continue;
    }
    consider(std::clamp(root, f.lo, f.hi));
  }
  // The maximizer of the concave likelihood is an interior stationary point
  // (a cubic root) or an interval endpoint. An endpoint maximum coincides
  // with an exact root of the cleared equation, but a nearby second root can
  // perturb its computed position far past the feasibility tolerance, so the
  // endpoints always enter the comparison directly.
  consider(f.lo);
  consider(f.hi);
  if (!found) {
    throw NoFeasibleRoot(
        "no feasible likelihood candidate in [" + std::to_string(f.lo) + ", " +
        std::to_string(f.hi) + "]; roots " + std::to_string(roots[0]) + ", " +
        std::to_string(roots[1]) + ", " + std::to_string(roots[2]));
  }
  return make_constrained(best_p, s0, CaseTag::General);
}

ConstrainedMle constrained_mle(const Proportions& props, Margin margin) {
  const TrialCounts& c = props.counts;
  if (margin.s0() == 0.0) {
    // d = 0 makes x = 0 a spurious root of the general cubic; the pooled
    // closed form is exact.
    return mle_zero_margin(props);
  }
  // Extreme cases are detected on the integer counts, never by comparing
  // floating-point proportions with 0 or 1.
  const bool ones1 = c.r1 == c.n1;
  const bool zeros1 = c.r1 == 0;
  const bool ones2 = c.r2 == c.n2;
  const bool zeros2 = c.r2 == 0;
  if (ones1 && ones2) {
    return mle_both_ones(props.theta, margin);
  }
  if (zeros1 && zeros2) {
    return mle_both_zeros(props.theta, margin);
  }
  if (zeros1 && ones2) {
    return mle_zero_one(props.theta, margin);
  }
  if (ones1 && zeros2) {
    return mle_one_zero(props.theta, margin);
  }
  return constrained_mle_general(props, margin);
}

double constrained_log_likelihood(const TrialCounts& counts, double p1d,
                                  Margin margin) {
  const double s0 = margin.s0();
  return xlogy(double(counts.r1), p1d) +
         xlogy(double(counts.n1 - counts.r1), 1.0 - p1d) +
         xlogy(double(counts.r2), p1d - s0) +
         xlogy(double(counts.n2 - counts.r2), 1.0 - p1d + s0);
}

ConstrainedMle brute_force_mle(const TrialCounts& counts, Margin margin,
                               int grid_points) {
  if (grid_points < 3) {
    throw OutOfDomain("brute_force_mle needs at least 3 grid points, got " +
                      std::to_string(grid_points));
  }
  const double s0 = margin.s0();
  const Interval f = feasible_interval(s0);

  double best_x = f.lo;
  double best_ll = -kInf;
  double lo = f.lo;
  double hi = f.hi;
  // Scan, then keep re-gridding a shrinking bracket around the running best
  // point. The log-likelihood is concave in p1d, so the maximizer never
  // escapes the bracket.
  for (int pass = 0; pass < 200; ++pass) {
    const double h = (hi - lo) / double(grid_points - 1);
    for (int i = 0; i < grid_points; ++i) {
      const double x =
          i == grid_points - 1 ? hi : std::min(lo + double(i) * h, hi);
      const double ll = constrained_log_likelihood(counts, x, margin);
      if (ll > best_ll) {
        best_ll = ll;
        best_x = x;
      }
    }
    if (hi - lo < 1e-10) {
      break;
    }
    lo = std::max(f.lo, std::max(lo, best_x - h));
    hi = std::min(f.hi, std::min(hi, best_x + h));
  }
  return make_constrained(best_x, s0, CaseTag::General);
}

}  // namespace fmscore
