#pragma once

// The mixture (Pollard) representation: the kernel w built by convolving a
// power kernel against the one-sided stable density, the distribution it
// induces, and the integral routes that recover the Mittag-Leffler values
// from it — the direct Laplace mixture, the gamma-prior marginal with its
// small-shape limit, the Feller CDF mixture, and the exponentially tilted
// variants.  Everything here is independent of the power series so the two
// can cross-validate each other.

#include <utility>

#include "mlcm/numerics.hpp"
#include "mlcm/stable.hpp"

namespace mlcm {

struct GammaPrior {
  double mu;      // shape, > 0
  double lambda;  // rate, > 0

  GammaPrior(double shape, double rate);
};

struct PollardParams {
  StableIndex alpha;
  double beta;
  double gamma;

  // Admissibility requires beta > alpha * gamma (gamma > 0).  Equality is
  // rejected separately: the power kernel collapses toward a point mass and
  // every route through it degenerates.
  PollardParams(StableIndex a, double b, double g);

  double alpha_value() const { return alpha.alpha(); }
  // Exponent p = beta - alpha * gamma of the power kernel x^{p-1}/Gamma(p).
  double kernel_exponent() const { return beta - alpha.alpha() * gamma; }
};

// Power kernel rho(x) = x^{p-1} / Gamma(p) with p = beta - alpha*gamma.
double rho_density(const PollardParams& p, double x);

// Convolution kernel w(x|t) = t^gamma (rho * f_alpha(.|t))(x).  Every call
// evaluates both the direct convolution quadrature and the scaled-series
// form and insists they agree to 1e-8 (MethodDisagreementError otherwise).
double conv_kernel_w(const PollardParams& p, double x, double t);

// CDF of the Pollard distribution: (1/Gamma(gamma)) int_0^t of the mixing
// density.  The plateau as t -> infinity is 1/Gamma(beta), which exceeds 1
// when Gamma(beta) < 1; values are therefore only clamped below at 0.
double pollard_cdf(const PollardParams& p, double t);
IntegralResult pollard_cdf_detailed(const PollardParams& p, double t);

// Marginal density m(x) = int w(x|t) dG(t) under a gamma prior G.
double marginal_density(const PollardParams& p, const GammaPrior& prior, double x);
IntegralResult marginal_density_detailed(const PollardParams& p,
                                         const GammaPrior& prior, double x);

// (n/mu) * m(x | Gamma(mu/n, lambda)) / (Gamma(gamma) x^{beta-1}): converges
// to E^gamma_{alpha,beta}(-lambda x^alpha) as n -> infinity (first order in
// mu/n; the small-shape prior concentrates mass near t = 0).
double ml_via_limit(const PollardParams& p, double lambda, double x, int n, double mu);
IntegralResult ml_via_limit_detailed(const PollardParams& p, double lambda,
                                     double x, int n, double mu);

// E^gamma_{alpha,beta}(-lambda x^alpha) as the Laplace mixture
// (1/Gamma(gamma)) int_0^inf exp(-lambda x^alpha u) dP(u) over the Pollard
// distribution — fully independent of the power series.
double ml_via_pollard(const PollardParams& p, double lambda, double x);
IntegralResult ml_via_pollard_detailed(const PollardParams& p, double lambda,
                                       double x);

// Feller mixture lambda int_0^inf F_alpha(x | t) e^{-lambda t} dt, equal to
// 1 - E_alpha(-lambda x^alpha).  Evaluated in the order-swapped exact form
// int f_alpha(u) (1 - e^{-lambda (x/u)^alpha}) du (Tonelli), which needs a
// single quadrature; x = 0 gives 0.
double feller_mixture(StableIndex a, double lambda, double x);
IntegralResult feller_mixture_detailed(StableIndex a, double lambda, double x);

// Tilted mixture h(x) with alpha h(x) = x int f_{alpha,theta}(x|t) t^{-1}
// e^{-lambda t} dt; equals the tilted-Pollard Laplace mixture (route 2,
// exposed in detail:: for cross-validation).
double tilted_h(const TiltParams& tp, double lambda, double x);

// CDF of the tilted Pollard distribution (a genuine probability law).
double tilted_pollard_cdf(const TiltParams& tp, double t);
IntegralResult tilted_pollard_cdf_detailed(const TiltParams& tp, double t);

namespace detail {

// (rho * f_alpha)(y) at t = 1, by the alternating power series with the
// direct convolution quadrature as fallback in the cancellation band.
double rho_star_f(const PollardParams& p, double y);

// Density core of the Pollard distribution in the u variable:
// (rho * f_alpha)(u^{-1/alpha}) u^{(beta-1)/alpha - 1}  =
// Gamma(gamma) * (Pollard density at u).
double pollard_density_core(const PollardParams& p, double u);

// Both kernel forms: {direct t^gamma convolution, scaled series}.
std::pair<double, double> conv_kernel_w_forms(const PollardParams& p, double x,
                                              double t);

// Route 2 for the tilted mixture: int e^{-lambda x^alpha u} dP_{alpha,theta}(u).
double tilted_h_via_pollard(const TiltParams& tp, double lambda, double x);

}  // namespace detail

}  // namespace mlcm
