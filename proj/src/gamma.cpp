#include "mlcm/gamma.hpp"

#include <cmath>
#include <limits>

namespace mlcm {

namespace {

// Reduce x modulo 2 into [-1, 1] exactly (std::remainder is exact), so the
// trig argument never carries the O(|x|) absolute error that sin(M_PI * x)
// would for large x.
double reduce_mod2(double x) { return std::remainder(x, 2.0); }

}  // namespace

double sin_pi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  double r = reduce_mod2(x);  // r in [-1, 1], sin(pi r) == sin(pi x)
  // Fold into [-1/2, 1/2]; both 1 - r and -1 - r are exact here (Sterbenz).
  if (r > 0.5) {
    r = 1.0 - r;
  } else if (r < -0.5) {
    r = -1.0 - r;
  }
  // Integers land on r == 0 and give an exact zero.
  return std::sin(M_PI * r);
}

double cos_pi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  double a = std::abs(reduce_mod2(x));  // cos is even; a in [0, 1]
  if (a <= 0.25) return std::cos(M_PI * a);
  if (a < 0.75) return std::sin(M_PI * (0.5 - a));  // exact 0 at a == 0.5
  return -std::cos(M_PI * (1.0 - a));               // exact -1 at a == 1
}

double rgamma(double z) {
  if (std::isnan(z)) return std::numeric_limits<double>::quiet_NaN();
  if (z > 0.5) {
    if (z <= 170.0) return 1.0 / std::tgamma(z);
    // Gamma overflows past ~171.6; 1/Gamma underflows gracefully via exp.
    return std::exp(-std::lgamma(z));
  }
  // Reflection: 1/Gamma(z) = sin(pi z) Gamma(1 - z) / pi.  At the poles
  // z = 0, -1, -2, ... the sine factor is an exact zero.
  double s = sin_pi(z);
  if (s == 0.0) return 0.0;
  double w = 1.0 - z;  // > 0.5
  if (w <= 170.0) return s * std::tgamma(w) / M_PI;
  // Large negative z: assemble in log space to dodge overflow of Gamma(1-z).
  double ln = std::log(std::abs(s)) + std::lgamma(w) - std::log(M_PI);
  return std::copysign(std::exp(ln), s);
}

std::pair<double, int> log_abs_rgamma(double z) {
  if (std::isnan(z)) return {std::numeric_limits<double>::quiet_NaN(), 0};
  if (z > 0.5) return {-std::lgamma(z), 1};
  double s = sin_pi(z);
  if (s == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
  double ln = std::log(std::abs(s)) + std::lgamma(1.0 - z) - std::log(M_PI);
  return {ln, s > 0.0 ? 1 : -1};
}

double gamma_ratio(double a, double b) {
  if (a > 0.0 && b > 0.0 && a <= 170.0 && b <= 170.0) {
    return std::tgamma(a) / std::tgamma(b);
  }
  return std::exp(std::lgamma(a) - std::lgamma(b));
}

}  // namespace mlcm
