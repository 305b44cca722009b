#pragma once

#include <array>

#include "fmscore/types.hpp"

namespace fmscore {

// Coefficients of a*x^3 + b*x^2 + c*x + d. For coefficients produced by
// cubic_coefficients the leading term is a = 1 + theta > 0.
struct CubicCoefficients {
  double a;
  double b;
  double c;
  double d;
};

// Coefficients of the stationarity equation for the constrained estimate of
// p1 under p1 - p2 = s0.
CubicCoefficients cubic_coefficients(const Proportions& props, Margin margin);

// Solves a cubic known to have three real roots, via the trigonometric form.
// Returns the roots in nondecreasing order. The arc-cosine argument is
// clamped to [-1, 1] when roundoff pushes it out by at most 1e-10; anything
// further out throws NotThreeRealRoots.
std::array<double, 3> solve_cubic_three_real(const CubicCoefficients& coeffs);

}  // namespace fmscore
