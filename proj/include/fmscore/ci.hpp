#pragma once

#include "fmscore/types.hpp"

namespace fmscore {

enum class EndpointMethod {
  ClosedForm,
  Bisection,
  Boundary,
};

const char* to_string(EndpointMethod method) noexcept;

// Two-sided confidence interval for the difference p1 - p2, obtained by
// inverting the two-sided test: the set of margins s0 with |z(s0)| <= z_alpha.
struct ConfidenceInterval {
  double lower;
  double upper;
  double level;  // two-sided confidence level, e.g. 0.95
  EndpointMethod method_lower;
  EndpointMethod method_upper;
};

// Closed-form interval for the all-responders and no-responders tables.
// Both-ones: (-za^2/(n1+za^2), +za^2/(n2+za^2)); both-zeros is its image
// under swapping arms and negating the difference. Throws WrongCase when the
// counts are not one of those two patterns.
ConfidenceInterval ci_both_extreme_closed_form(const TrialCounts& counts,
                                               double level);

// Full dispatch: the two doubly-extreme tables use the closed form; a 0/1
// table pins the lower endpoint at -1 and a 1/0 table pins the upper at +1
// (the statistic tends to 0 there, so the boundary is never rejected); all
// remaining endpoints come from bisection of z(s0) -+ z_alpha.
ConfidenceInterval confidence_interval(const TrialCounts& counts,
                                       double level);

}  // namespace fmscore
