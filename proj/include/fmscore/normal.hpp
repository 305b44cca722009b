#pragma once

namespace fmscore {

// Standard normal lower-tail probability. Absolute error stays below 1e-14
// for |x| <= 8. Built on the incomplete gamma function so the library does
// not depend on platform erf/erfc behavior.
double normal_cdf(double x);

// Inverse of normal_cdf on (0, 1), computed by safeguarded Newton refinement
// of a rational starting guess; |normal_cdf(normal_quantile(p)) - p| stays
// well under 1e-10. Throws OutOfDomain for p outside (0, 1).
double normal_quantile(double p);

}  // namespace fmscore
