#pragma once

// One-sided (positively skewed) stable laws with index 0 < alpha < 1: the
// density f_a and distribution F_a whose Laplace transform is exp(-s^a),
// the scale-conditioned family f_a(x|t), and the polynomially tilted
// variant.  The density is evaluated by two independent methods — an
// alternating tail series for moderate arguments and a single real
// (Zolotarev-type) integral over (0, pi) for the deep left tail — which are
// cross-checked in their overlap region.

#include "mlcm/numerics.hpp"

namespace mlcm {

// Stability index restricted to the open interval (0,1).  alpha = 1 is a
// degenerate point mass and alpha in (1,2) is outside the one-sided regime.
class StableIndex {
 public:
  explicit StableIndex(double alpha);
  double alpha() const { return alpha_; }

 private:
  double alpha_;
};

// Stable law at scale t: density f_a(x|t) = f_a(x t^{-1/a}) t^{-1/a}.
struct ScaledStable {
  StableIndex alpha;
  double t;
  ScaledStable(StableIndex a, double t_scale);
};

// Polynomial tilting exponent; admissible for theta > -alpha
// (equivalently theta/alpha + 1 > 0).
struct TiltParams {
  StableIndex alpha;
  double theta;
  TiltParams(StableIndex a, double theta_exp);
};

// f_a(x), x > 0.  Series and integral methods are compared where both are
// reliable; disagreement beyond 1e-6 raises MethodDisagreementError.
double stable_density(StableIndex a, double x);

// F_a(x) = integral of the density over (0, x), clamped to [0,1].
// x = +infinity returns 1 exactly (normalization).
double stable_cdf(StableIndex a, double x);

// Same with the quadrature diagnostics attached.
IntegralResult stable_cdf_detailed(StableIndex a, double x);

// f_a(x|t): the scale change applied to stable_density.
double stable_density_scaled(const ScaledStable& s, double x);

// Tilted density [Gamma(theta+1)/Gamma(theta/alpha+1)] t^{theta/alpha}
// x^{-theta} f_a(x|t); integrates to 1 in x for every admissible tilt.
double tilted_stable_density(const TiltParams& p, double x, double t);

namespace detail {

// Single-route density without the two-method agreement diagnostic: the
// series where its cancellation budget holds, otherwise the integral.
// Used inside quadratures where the public cross-check would multiply cost.
// Returns 0 for arguments so deep in the left tail that the value
// underflows.  x <= 0 returns 0 (measure has no mass there).
double stable_density_raw(double alpha, double x);

// ln of the cancellation ratio (largest series term / value) for the tail
// series at argument x: c_a * x^{-a/(1-a)} with c_a = (1-a) a^{a/(1-a)}.
// Also the magnitude of -ln f_a(x) as x -> 0.
double series_cancellation_log(double alpha, double x);

}  // namespace detail

}  // namespace mlcm
