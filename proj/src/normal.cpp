#include "fmscore/normal.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fmscore/errors.hpp"

namespace fmscore {

namespace {

constexpr double kLnSqrtPi = 0.57236494292470008707;     // ln Gamma(1/2)
constexpr double kInvSqrt2Pi = 0.39894228040143267794;   // 1/sqrt(2*pi)

// Regularized upper incomplete gamma Q(1/2, x) = erfc(sqrt(x)).
// Series for the lower function below the a+1 crossover, Lentz continued
// fraction above it; both terminate at double precision.
double gamma_q_half(double x) {
  if (x <= 0.0) {
    return 1.0;
  }
  if (x < 1.5) {
    double ap = 0.5;
    double del = 2.0;  // 1/a
    double sum = 2.0;
    for (int n = 0; n < 300; ++n) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-17) {
        break;
      }
    }
    const double p = sum * std::exp(-x + 0.5 * std::log(x) - kLnSqrtPi);
    return 1.0 - p;
  }
  const double fpmin =
      std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  double b = x + 0.5;  // x + 1 - a
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 300; ++i) {
    const double an = -i * (i - 0.5);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= 1e-17) {
      break;
    }
  }
  return std::exp(-x + 0.5 * std::log(x) - kLnSqrtPi) * h;
}

}  // namespace

double normal_cdf(double x) {
  const double q = gamma_q_half(0.5 * x * x);
  // Both tails share one Q evaluation, so p_lower(x) + p_lower(-x) == 1
  // holds to the last bit.
  return x >= 0.0 ? 1.0 - 0.5 * q : 0.5 * q;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw OutOfDomain("normal_quantile requires p in (0, 1), got " +
                      std::to_string(p));
  }
  if (p == 0.5) {
    return 0.0;
  }
  // Rational starting guess (Hastings), |error| < 4.5e-4, then Newton on
  // normal_cdf. Three steps already overshoot double precision; the loop
  // cap only guards degenerate tails.
  const bool lower_half = p < 0.5;
  const double tail = lower_half ? p : 1.0 - p;
  const double t = std::sqrt(-2.0 * std::log(tail));
  double x = t - (2.30753 + 0.27061 * t) / (1.0 + t * (0.99229 + 0.04481 * t));
  if (lower_half) {
    x = -x;
  }
  for (int i = 0; i < 40; ++i) {
    const double err = normal_cdf(x) - p;
    const double pdf = kInvSqrt2Pi * std::exp(-0.5 * x * x);
    if (pdf <= 0.0) {
      break;
    }
    const double dx = err / pdf;
    x -= dx;
    if (std::fabs(dx) <= 1e-15 * (1.0 + std::fabs(x))) {
      break;
    }
  }
  return x;
}

}  // namespace fmscore
