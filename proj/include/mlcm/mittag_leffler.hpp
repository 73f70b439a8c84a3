#pragma once

// Direct series evaluation of the one-, two-, and three-parameter
// Mittag-Leffler functions
//   E^g_{a,b}(x) = sum_k Gamma(g+k) / (Gamma(g) k! Gamma(a k + b)) x^k
// and the closed form of the Laplace transform of x^{b-1} E^g_{a,b}(-l x^a).
// The series is the library's reference representation: terms are built in
// double-double arithmetic so that the alternating cancellation for negative
// arguments is controlled, and the evaluator refuses (with diagnostics)
// outside the regime where that control holds — beyond it the mixture
// (Pollard) route is the designated evaluator.

#include "mlcm/numerics.hpp"

namespace mlcm {

struct MLParams {
  double alpha;
  double beta;
  double gamma;

  // alpha >= 0 (alpha = 0 is the geometric reduction, convergent only for
  // |x| < 1), beta > 0, gamma > 0.
  MLParams(double a, double b, double g);

  // True in the complete-monotonicity regime: 0 < alpha < 1 and
  // beta > alpha * gamma.
  bool cm_regime() const;
};

struct RatePair {
  double lambda;  // mixture rate, > 0
  double s;       // Laplace variable, >= 0

  RatePair(double rate, double laplace_var);
};

// Largest |x| the series route accepts; beyond it the evaluator refuses
// with SeriesRangeError in favor of the mixture route.
inline constexpr double kMLSeriesXMax = 50.0;

// Estimated ln(largest term / value) for the series at argument x — the
// number of decimal digits lost to cancellation is about this over ln 10.
double ml_series_cancellation_log(const MLParams& p, double x);

// E^g_{a,b}(x).  Errors: SeriesRangeError for |x| > 50; CancellationError
// (carrying the largest intermediate term) when alternation destroys the
// working precision; SeriesOverflowError when a term exceeds the floating
// range; ConvergenceError when the term budget runs out.
double ml_series(const MLParams& p, double x);

// Same value with term diagnostics: max_term is the largest intermediate
// term magnitude (the cancellation report for negative x).
SeriesResult ml_series_detailed(const MLParams& p, double x);

// s^{a g - b} / (lambda + s^a)^g, the Laplace transform of
// x^{b-1} E^g_{a,b}(-lambda x^a); requires s > 0.
double ml_laplace_closed(const MLParams& p, const RatePair& r);

}  // namespace mlcm
