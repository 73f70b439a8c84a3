#pragma once

// Shared numerical engines: double-exponential quadrature on finite and
// semi-infinite intervals and compensated series summation.  Every integral
// in this library has the shape x^c * density * exp(-lambda t): power-type
// endpoint singularities plus exponential decay, which is exactly what the
// tanh-sinh / exp-sinh transformations are built for.

#include <functional>

namespace mlcm {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_refinements = 12;
  long max_evaluations = 1000000;

  // Throws DomainError unless: tolerances are finite and >= 0 with at least
  // one strictly positive, max_refinements >= 1, max_evaluations >= 1.
  void validate() const;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;
};

// Series summation result; max_term is the largest |term| encountered, the
// cancellation diagnostic (value / max_term estimates how many digits the
// alternating sum destroyed).
struct SeriesResult : IntegralResult {
  double max_term = 0.0;
};

using Integrand = std::function<double(double)>;

// Endpoint-aware integrand for integrate_finite: f(x, dist_a, dist_b) where
// dist_a = x - a and dist_b = b - x are computed inside the transformation
// without cancellation, so singular factors like dist_b^(-1/2) keep full
// relative accuracy even when x itself rounds onto the endpoint.
using EndpointIntegrand = std::function<double(double, double, double)>;

using SeriesTerm = std::function<double(long)>;

// Integral of f over (0, inf) via the exp-sinh transformation.  f may have
// an integrable power singularity at 0 and must eventually decay.
// Non-convergence within the refinement budget returns converged=false with
// the best estimate; a non-finite integrand value away from the origin
// throws IntegrandError.
IntegralResult integrate_semi_infinite(const Integrand& f,
                                       const QuadratureConfig& cfg = {});

// Integral of f over (a, b) via the tanh-sinh transformation; power-type
// endpoint singularities are allowed.  The endpoint-aware overload is the
// canonical form; the plain overload evaluates f at abscissae reconstructed
// from the nearer endpoint and suits integrands that are finite at a and b
// or singular only at a zero endpoint.
IntegralResult integrate_finite(const EndpointIntegrand& f, double a, double b,
                                const QuadratureConfig& cfg = {});
IntegralResult integrate_finite(const Integrand& f, double a, double b,
                                const QuadratureConfig& cfg = {});

// Sum of term(0) + term(1) + ... with Neumaier-compensated accumulation.
// Stops once three consecutive terms fall below max(abs_tol,
// rel_tol*|partial sum|); reports the largest term magnitude for
// cancellation diagnostics.  A non-finite or overflow-scale term throws
// SeriesOverflowError carrying the offending index; running past
// max_evaluations terms returns converged=false.
SeriesResult sum_series(const SeriesTerm& term,
                        const QuadratureConfig& cfg = {});

}  // namespace mlcm
