#include "fmscore/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fmscore/errors.hpp"

namespace fmscore {

namespace {

// Roundoff can push the arc-cosine argument just past +-1 near double roots;
// arguments inside this margin are clamped, anything further out means the
// coefficients do not come from a three-real-root problem.
constexpr double kAcosClampMargin = 1e-10;

// Thresholds for recognizing a (near-)triple root when the depressed cubic
// degenerates to t^3 = 0.
constexpr double kTripleRootTol = 1e-11;

constexpr double kTwoPiOver3 = 2.0943951023931954923;

}  // namespace

CubicCoefficients cubic_coefficients(const Proportions& props, Margin margin) {
  const double th = props.theta;
  const double p1 = props.p_hat1;
  const double p2 = props.p_hat2;
  const double s0 = margin.s0();
  return CubicCoefficients{
      1.0 + th,
      -(1.0 + th + p1 + th * p2 + s0 * (th + 2.0)),
      s0 * s0 + s0 * (2.0 * p1 + th + 1.0) + p1 + th * p2,
      -p1 * s0 * (1.0 + s0),
  };
}

std::array<double, 3> solve_cubic_three_real(const CubicCoefficients& coeffs) {
  // Depress to t^3 + p*t + q with x = t - b/(3a).
  const double b = coeffs.b / coeffs.a;
  const double c = coeffs.c / coeffs.a;
  const double d = coeffs.d / coeffs.a;
  const double shift = b / 3.0;
  const double p = c - b * b / 3.0;
  const double q = (2.0 * b * b * b - 9.0 * b * c) / 27.0 + d;

  std::array<double, 3> t;
  if (p < 0.0) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    double u = 3.0 * q / (p * m);  // cos of the tripled angle
    if (u > 1.0) {
      if (u > 1.0 + kAcosClampMargin) {
        throw NotThreeRealRoots(
            "cubic discriminant is negative beyond tolerance (cos argument " +
            std::to_string(u) + ")");
      }
      u = 1.0;
    } else if (u < -1.0) {
      if (u < -1.0 - kAcosClampMargin) {
        throw NotThreeRealRoots(
            "cubic discriminant is negative beyond tolerance (cos argument " +
            std::to_string(u) + ")");
      }
      u = -1.0;
    }
    const double phi = std::acos(u) / 3.0;
    t = {m * std::cos(phi), m * std::cos(phi - kTwoPiOver3),
         m * std::cos(phi - 2.0 * kTwoPiOver3)};
  } else {
    // With p >= 0 the only three-real-root possibility is a triple root.
    if (p > kTripleRootTol || std::fabs(q) > kTripleRootTol) {
      throw NotThreeRealRoots(
          "cubic has one real root (depressed p=" + std::to_string(p) +
          ", q=" + std::to_string(q) + ")");
    }
    t = {0.0, 0.0, 0.0};
  }

  std::array<double, 3> roots = {t[0] - shift, t[1] - shift, t[2] - shift};
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace fmscore
