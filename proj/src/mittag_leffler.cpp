#include "mlcm/mittag_leffler.hpp"

#include <cmath>
#include <cstdlib>

#include "mlcm/ddouble.hpp"
#include "mlcm/errors.hpp"
#include "mlcm/gamma.hpp"

namespace mlcm {

MLParams::MLParams(double a, double b, double g) : alpha(a), beta(b), gamma(g) {
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw DomainError("MLParams: alpha must be nonnegative and finite");
  }
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw DomainError("MLParams: beta must be positive and finite");
  }
  if (!(g > 0.0) || !std::isfinite(g)) {
    throw DomainError("MLParams: gamma must be positive and finite");
  }
}

bool MLParams::cm_regime() const {
  return alpha > 0.0 && alpha < 1.0 && beta > alpha * gamma;
}

RatePair::RatePair(double rate, double laplace_var) : lambda(rate), s(laplace_var) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("RatePair: lambda must be positive and finite");
  }
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw DomainError("RatePair: s must be nonnegative and finite");
  }
}

double ml_series_cancellation_log(const MLParams& p, double x) {
  if (x >= 0.0 || p.alpha == 0.0) return 0.0;
  const double ax = std::abs(x);
  if (p.alpha >= 1.0) return 2.0 * std::pow(ax, 1.0 / p.alpha) + 3.0;
  return std::pow(ax, 1.0 / p.alpha) + 3.0;
}

SeriesResult ml_series_detailed(const MLParams& p, double x) {
  if (!std::isfinite(x)) throw DomainError("ml_series: x must be finite");
  if (std::abs(x) > kMLSeriesXMax) {
    throw SeriesRangeError(
        "ml_series: |x| > 50 is outside the reliable series range; "
        "use the mixture (Pollard) representation instead");
  }
  if (p.alpha == 0.0 && std::abs(x) >= 1.0) {
    throw DomainError(
        "ml_series: alpha = 0 reduces to a geometric series that converges "
        "only for |x| < 1");
  }

  SeriesResult out;
  if (x == 0.0) {
    out.value = rgamma(p.beta);
    out.error_estimate = 0.0;
    out.evaluations = 1;
    out.converged = true;
    out.max_term = std::abs(out.value);
    return out;
  }

  // Even in double-double (~32 digits) alternation can eat the whole
  // mantissa; refuse up front when the estimated largest term towers more
  // than e^56 over the result.  At that boundary the accumulated rounding is
  // still ~1e-7 relative; every supported evaluation grid stays below e^54.
  const double ln_kappa = ml_series_cancellation_log(p, x);
  if (x < 0.0 && ln_kappa > 56.0) {
    throw CancellationError(
        "ml_series: cancellation beyond double-double precision; "
        "use the mixture (Pollard) representation instead",
        std::exp(std::min(ln_kappa, 700.0)));
  }

  // T_0 = 1/Gamma(beta);  T_{k+1} = T_k * x * ((gamma+k)/(k+1))
  //                               * exp(lnGamma(a k + b) - lnGamma(a(k+1) + b)).
  const DD dx(x);
  DD lg_prev = dd_lgamma(DD(p.beta));
  DD term = dd_exp(dd_neg(lg_prev));
  DD sum = term;
  double max_term = std::abs(term.hi);
  double last_abs = max_term;
  long n_terms = 1;
  int small_run = 0;
  constexpr long kTermCap = 20000;

  for (long k = 0; k < kTermCap; ++k) {
    const DD arg_next =
        dd_add(dd_mul(DD(p.alpha), DD(static_cast<double>(k + 1))), DD(p.beta));
    const DD lg_next = dd_lgamma(arg_next);
    DD t = dd_mul(term, dx);
    t = dd_mul(t, dd_div(dd_add(DD(p.gamma), DD(static_cast<double>(k))),
                         DD(static_cast<double>(k + 1))));
    t = dd_mul(t, dd_exp(dd_sub(lg_prev, lg_next)));
    if (!std::isfinite(t.hi)) {
      throw SeriesOverflowError("ml_series: term overflowed the floating range",
                                k + 1);
    }
    term = t;
    lg_prev = lg_next;
    sum = dd_add(sum, term);
    ++n_terms;
    last_abs = std::abs(term.hi);
    if (last_abs > max_term) max_term = last_abs;
    if (last_abs <= 1e-33 * std::abs(sum.hi)) {
      if (++small_run >= 3) break;
    } else {
      small_run = 0;
    }
  }
  if (small_run < 3) {
    throw ConvergenceError("ml_series: series did not converge within 20000 terms");
  }

  const double value = sum.hi + sum.lo;
  // Measured counterpart of the up-front estimate: past max_term/|value| of
  // 4e22 the double-double accumulation noise exceeds ~1e-6 relative and the
  // result no longer deserves the series label.
  if (x < 0.0 && max_term > 4e22 * std::max(std::abs(value), 1e-300)) {
    throw CancellationError(
        "ml_series: alternating cancellation destroyed the working precision",
        max_term);
  }

  out.value = value;
  out.evaluations = n_terms;
  out.converged = true;
  out.max_term = max_term;
  // Truncation is bounded by the last term; the rounding floor scales with
  // the largest term handled, times a pad for the term-count width of the
  // hump and the per-term double-double log-gamma error.
  out.error_estimate = std::max(last_abs, max_term * 1e-28);
  return out;
}

double ml_series(const MLParams& p, double x) {
  return ml_series_detailed(p, x).value;
}

double ml_laplace_closed(const MLParams& p, const RatePair& r) {
  if (!(r.s > 0.0)) {
    throw DomainError("ml_laplace_closed: the closed form requires s > 0");
  }
  const double sa = std::pow(r.s, p.alpha);
  return std::pow(r.s, p.alpha * p.gamma - p.beta) *
         std::pow(r.lambda + sa, -p.gamma);
}

}  // namespace mlcm
