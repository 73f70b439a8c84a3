#include "mlcm/stable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mlcm/errors.hpp"
#include "mlcm/gamma.hpp"

namespace mlcm {

namespace {

// Below this cancellation estimate the tail series alone is trusted; up to
// kSeriesTryLog it is attempted and kept only when its own noise bound
// accepts it.  Past kUnderflowLog the density is below the double range.
constexpr double kSeriesOnlyLog = 1.0;
constexpr double kSeriesTryLog = 16.0;
constexpr double kUnderflowLog = 760.0;

QuadratureConfig zolotarev_config() {
  QuadratureConfig cfg;
  // Tiny densities must still come out relatively accurate, so the absolute
  // stop is disabled and the refinement is driven by the relative error.
  cfg.abs_tol = 0.0;
  cfg.rel_tol = 1e-11;
  return cfg;
}

QuadratureConfig tail_series_config() {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-320;
  cfg.rel_tol = 1e-16;
  cfg.max_evaluations = 100000;
  return cfg;
}

struct SeriesEval {
  double value = 0.0;
  bool accepted = false;
};

// f_a(x) = (1/pi) sum_{k>=1} (-1)^{k+1} Gamma(a k + 1)/k! sin(pi k a) x^{-a k - 1},
// assembled in log space.  Converges for every x > 0 but alternation makes it
// useless once the largest term towers over the sum; the acceptance test
// bounds the floating noise 4 eps max_term against the result.
SeriesEval tail_series_density(double alpha, double x) {
  const double lx = std::log(x);
  auto term = [alpha, lx](long j) -> double {
    const double k = static_cast<double>(j + 1);
    const double s = sin_pi(k * alpha);
    if (s == 0.0) return 0.0;
    const double lt = std::lgamma(alpha * k + 1.0) - std::lgamma(k + 1.0) -
                      (alpha * k + 1.0) * lx + std::log(std::abs(s));
    const double sign = (j % 2 == 0 ? 1.0 : -1.0) * (s > 0.0 ? 1.0 : -1.0);
    return sign * std::exp(lt);
  };

  SeriesEval out;
  SeriesResult r;
  try {
    r = sum_series(term, tail_series_config());
  } catch (const SeriesOverflowError&) {
    return out;  // deep cancellation band; the integral route takes over
  }
  if (!r.converged) return out;
  const double value = r.value / M_PI;
  const double noise =
      4.0 * std::numeric_limits<double>::epsilon() * (r.max_term / M_PI);
  if (noise <= std::max(1e-13, 1e-9 * std::abs(value))) {
    out.value = value;
    out.accepted = true;
  }
  return out;
}

// f_a(x) = (a/(pi(1-a))) x^{-1/(1-a)} int_0^pi A(phi) exp(-x^{-a/(1-a)} A(phi)) dphi
// with A(phi) = [sin(a phi)/sin phi]^{a/(1-a)} sin((1-a)phi)/sin phi.
// The integrand is evaluated through the endpoint distances so that the
// sin(phi) factor keeps full accuracy against both endpoints, and A is
// assembled in log space because it blows up like (pi - phi)^{-1/(1-a)}.
double zolotarev_density(double alpha, double x) {
  const double r = alpha / (1.0 - alpha);
  const double c = std::pow(x, -r);
  auto g = [alpha, r, c](double phi, double da, double db) -> double {
    const double sphi = std::sin(std::min(da, db));
    const double ra = std::sin(alpha * phi) / sphi;
    const double rb = std::sin((1.0 - alpha) * phi) / sphi;
    const double ln_a = r * std::log(ra) + std::log(rb);
    if (ln_a > 690.0) return 0.0;  // exp(-c A) has long since vanished
    const double e = ln_a - c * std::exp(ln_a);
    return e < -745.0 ? 0.0 : std::exp(e);
  };
  const IntegralResult integral =
      integrate_finite(EndpointIntegrand(g), 0.0, M_PI, zolotarev_config());
  if (!integral.converged) {
    throw ConvergenceError("stable_density: integral representation did not converge");
  }
  const double ln_pre =
      std::log(alpha / (M_PI * (1.0 - alpha))) - std::log(x) / (1.0 - alpha);
  return std::exp(ln_pre) * integral.value;
}

}  // namespace

StableIndex::StableIndex(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw DomainError("StableIndex: alpha must lie strictly inside (0, 1)");
  }
}

ScaledStable::ScaledStable(StableIndex index, double scale) : alpha(index), t(scale) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("ScaledStable: t must be positive and finite");
  }
}

TiltParams::TiltParams(StableIndex index, double tilt) : alpha(index), theta(tilt) {
  if (!(theta > -alpha.alpha()) || !std::isfinite(theta)) {
    throw DomainError("TiltParams: theta must be finite and exceed -alpha");
  }
}

namespace detail {

double series_cancellation_log(double alpha, double x) {
  const double r = alpha / (1.0 - alpha);
  return (1.0 - alpha) * std::pow(alpha, r) * std::pow(x, -r);
}

double stable_density_raw(double alpha, double x) {
  if (!(x > 0.0)) return 0.0;
  const double ln_kappa = series_cancellation_log(alpha, x);
  if (ln_kappa > kUnderflowLog) return 0.0;  // below the double range
  if (ln_kappa <= kSeriesTryLog) {
    const SeriesEval ser = tail_series_density(alpha, x);
    if (ser.accepted) return ser.value;
  }
  return zolotarev_density(alpha, x);
}

}  // namespace detail

double stable_density(StableIndex a, double x) {
  if (!(x > 0.0)) throw DomainError("stable_density: x must be positive");
  const double alpha = a.alpha();
  const double ln_kappa = detail::series_cancellation_log(alpha, x);
  if (ln_kappa > kUnderflowLog) return 0.0;
  if (ln_kappa <= kSeriesTryLog) {
    const SeriesEval ser = tail_series_density(alpha, x);
    if (ser.accepted) {
      if (ln_kappa >= kSeriesOnlyLog) {
        // Overlap band: both routes are reliable here and must agree.
        const double zi = zolotarev_density(alpha, x);
        const double scale = std::max({std::abs(ser.value), std::abs(zi), 1e-3});
        if (std::abs(ser.value - zi) > 1e-6 * scale) {
          throw MethodDisagreementError(
              "stable_density: series and integral representations disagree",
              ser.value, zi);
        }
      }
      return ser.value;
    }
  }
  return zolotarev_density(alpha, x);
}

IntegralResult stable_cdf_detailed(StableIndex a, double x) {
  if (!(x > 0.0)) throw DomainError("stable_cdf: x must be positive");
  if (std::isinf(x)) {
    IntegralResult res;
    res.value = 1.0;
    res.error_estimate = 0.0;
    res.evaluations = 0;
    res.converged = true;
    return res;
  }
  const double alpha = a.alpha();
  IntegralResult res = integrate_finite(
      [alpha](double u) { return detail::stable_density_raw(alpha, u); }, 0.0, x,
      QuadratureConfig{});
  res.value = std::clamp(res.value, 0.0, 1.0);
  return res;
}

double stable_cdf(StableIndex a, double x) {
  const IntegralResult res = stable_cdf_detailed(a, x);
  if (!res.converged) {
    throw ConvergenceError("stable_cdf: density quadrature did not converge");
  }
  return res.value;
}

double stable_density_scaled(const ScaledStable& s, double x) {
  if (!(x > 0.0)) throw DomainError("stable_density_scaled: x must be positive");
  const double scale = std::pow(s.t, -1.0 / s.alpha.alpha());
  return stable_density(s.alpha, x * scale) * scale;
}

double tilted_stable_density(const TiltParams& p, double x, double t) {
  if (!(x > 0.0)) throw DomainError("tilted_stable_density: x must be positive");
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("tilted_stable_density: t must be positive and finite");
  }
  const double a = p.alpha.alpha();
  const double norm = gamma_ratio(p.theta + 1.0, p.theta / a + 1.0);
  return norm * std::pow(t, p.theta / a) * std::pow(x, -p.theta) *
         stable_density_scaled(ScaledStable(p.alpha, t), x);
}

}  // namespace mlcm
