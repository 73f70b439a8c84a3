#pragma once

// Stieltjes spectral representation: the spectral density R'(u) whose
// exponential mixture int_0^inf e^{-x u} R'(u) du reproduces
// x^{beta-1} E^gamma_{alpha,beta}(-lambda x^alpha), the one-parameter
// specialization R'_1, and the conditional (fixed-t) spectral density S'.
// R' is nonnegative exactly in the complete-monotonicity regime
// beta >= alpha*gamma (with 0 < alpha < 1, gamma > 0) when beta <= 1; for
// beta > 1 it takes genuinely negative values while its mixture stays
// completely monotone after the x^{1-beta} rescaling.

#include "mlcm/numerics.hpp"
#include "mlcm/pollard.hpp"

namespace mlcm {

struct SpectralPoint {
  double u;       // spectral abscissa, > 0
  double lambda;  // rate, > 0
  PollardParams params;

  SpectralPoint(double u_abscissa, double rate, PollardParams p);
};

// R'(u | lambda) for the three-parameter function.
double spectral_density_r(const SpectralPoint& pt);

// One-parameter specialization
// R'_1(u) = (1/pi) lambda u^{alpha-1} sin(pi alpha)
//           / (lambda^2 + 2 lambda u^alpha cos(pi alpha) + u^{2alpha}),
// a probability density on (0, inf).
double spectral_density_r1(StableIndex a, double lambda, double u);

// Conditional spectral density S'(u | t) at fixed mixing value t.  Its
// magnitude grows with u when alpha > 1/2 (the t-integral, not u-pointwise
// decay, is what tames the full representation), so use with care.
double spectral_density_s(const PollardParams& params, double t, double u);

// E^gamma_{alpha,beta}(-lambda x^alpha) recovered from the spectral side:
// x^{1-beta} int_0^inf e^{-x u} R'(u | lambda) du.  Requires x >= 0
// (x = 0 returns the exact limit 1/Gamma(beta)).
double ml_via_spectral(const PollardParams& params, double lambda, double x);
IntegralResult ml_via_spectral_detailed(const PollardParams& params,
                                        double lambda, double x);

namespace detail {

// Unchecked R'(u | lambda) evaluator shared by the public density and the
// mixture quadrature.
double spectral_r(const PollardParams& p, double lambda, double u);

}  // namespace detail

}  // namespace mlcm
