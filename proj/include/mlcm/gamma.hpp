#pragma once

// Gamma-family helpers for plain doubles. std::tgamma / std::lgamma serve as
// the positive-argument workhorses (well below the 1e-13 relative-error
// requirement); this header adds the pieces the standard library lacks:
// sin/cos of pi*x with exact range reduction, the reciprocal gamma (defined
// and finite on all of R, zero at the poles), and a log-magnitude/sign form
// that never overflows — the series kernels need coefficients like
// 1/Gamma(p - alpha k) far into the negative axis.

#include <utility>

namespace mlcm {

// sin(pi x), exact at integers and half-integers.
double sin_pi(double x);

// cos(pi x), exact at integers and half-integers.
double cos_pi(double x);

// 1 / Gamma(z) for any real z; returns 0 at the poles z = 0, -1, -2, ...
double rgamma(double z);

// {ln|1/Gamma(z)|, sign in {-1, 0, +1}}; sign 0 marks a pole of Gamma
// (rgamma == 0, the log part is then -infinity and must not be used).
std::pair<double, int> log_abs_rgamma(double z);

// Gamma(a) / Gamma(b) for a, b > 0, via log-gamma differencing when either
// argument is large enough for tgamma to overflow.
double gamma_ratio(double a, double b);

}  // namespace mlcm
