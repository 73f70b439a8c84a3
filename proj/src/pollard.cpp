#include "mlcm/pollard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mlcm/errors.hpp"
#include "mlcm/gamma.hpp"

namespace mlcm {

namespace {

QuadratureConfig kernel_series_config() {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-320;
  cfg.rel_tol = 1e-16;
  cfg.max_evaluations = 100000;
  return cfg;
}

bool series_noise_ok(const SeriesResult& r) {
  return r.converged &&
         4.0 * std::numeric_limits<double>::epsilon() * r.max_term <=
             std::max(1e-12, 1e-8 * std::abs(r.value));
}

// Direct convolution int_0^y rho(y - u) f_alpha(u) du, endpoint-aware so the
// power singularity of rho at u = y keeps full accuracy.
double rho_star_f_quadrature(const PollardParams& p, double y) {
  const double a = p.alpha_value();
  const double pe = p.kernel_exponent();
  const double rg = rgamma(pe);
  auto f = [a, pe, rg](double u, double /*da*/, double db) -> double {
    const double fd = detail::stable_density_raw(a, u);
    if (fd == 0.0) return 0.0;
    return std::pow(db, pe - 1.0) * rg * fd;
  };
  const IntegralResult res =
      integrate_finite(EndpointIntegrand(f), 0.0, y, QuadratureConfig{});
  if (!res.converged) {
    throw ConvergenceError("rho_star_f: convolution quadrature did not converge");
  }
  return res.value;
}

}  // namespace

GammaPrior::GammaPrior(double shape, double rate) : mu(shape), lambda(rate) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw DomainError("GammaPrior: shape mu must be positive and finite");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("GammaPrior: rate lambda must be positive and finite");
  }
}

PollardParams::PollardParams(StableIndex a, double b, double g)
    : alpha(a), beta(b), gamma(g) {
  if (!(g > 0.0) || !std::isfinite(g)) {
    throw DomainError("PollardParams: gamma must be positive and finite");
  }
  if (!std::isfinite(b)) throw DomainError("PollardParams: beta must be finite");
  const double ag = alpha.alpha() * g;
  if (b == ag) {
    throw DegenerateKernelError(
        "PollardParams: beta == alpha*gamma degenerates the power kernel "
        "toward a point mass");
  }
  if (b < ag) {
    throw DomainError("PollardParams: admissibility requires beta > alpha*gamma");
  }
}

double rho_density(const PollardParams& p, double x) {
  if (!(x > 0.0)) throw DomainError("rho_density: x must be positive");
  const double pe = p.kernel_exponent();
  return std::pow(x, pe - 1.0) * rgamma(pe);
}

namespace detail {

double rho_star_f(const PollardParams& p, double y) {
  if (!(y > 0.0)) return 0.0;
  const double a = p.alpha_value();
  // Same leading cancellation as the plain stable series; once past e^150
  // the value (~ e^{-ln kappa}) is negligible against every consumer scale.
  const double ln_kappa = series_cancellation_log(a, y);
  if (ln_kappa > 150.0) return 0.0;

  const double pe = p.kernel_exponent();
  const double ly = std::log(y);
  auto term = [a, pe, ly](long k) -> double {
    const double kk = static_cast<double>(k);
    const auto lr = log_abs_rgamma(pe - a * kk);
    if (lr.second == 0) return 0.0;
    const double lt =
        lr.first - std::lgamma(kk + 1.0) + (pe - a * kk - 1.0) * ly;
    const double sign = (k % 2 == 0 ? 1.0 : -1.0) * lr.second;
    return sign * std::exp(lt);
  };
  try {
    const SeriesResult r = sum_series(term, kernel_series_config());
    if (series_noise_ok(r)) return r.value;
  } catch (const SeriesOverflowError&) {
    // fall through to the quadrature
  }
  return rho_star_f_quadrature(p, y);
}

double pollard_density_core(const PollardParams& p, double u) {
  if (!(u > 0.0)) return 0.0;
  const double a = p.alpha_value();
  // u-domain mirror of the y-domain cancellation at y = u^{-1/alpha}.
  const double ln_kappa = (1.0 - a) * std::pow(a, a / (1.0 - a)) *
                          std::pow(u, 1.0 / (1.0 - a));
  if (ln_kappa > 150.0) return 0.0;

  const double pe = p.kernel_exponent();
  const double lu = std::log(u);
  auto term = [a, pe, g = p.gamma, lu](long k) -> double {
    const double kk = static_cast<double>(k);
    const auto lr = log_abs_rgamma(pe - a * kk);
    if (lr.second == 0) return 0.0;
    const double lt = lr.first - std::lgamma(kk + 1.0) + (g + kk - 1.0) * lu;
    const double sign = (k % 2 == 0 ? 1.0 : -1.0) * lr.second;
    return sign * std::exp(lt);
  };
  try {
    const SeriesResult r = sum_series(term, kernel_series_config());
    if (series_noise_ok(r)) return r.value;
  } catch (const SeriesOverflowError&) {
    // fall through to the quadrature
  }
  const double y = std::pow(u, -1.0 / a);
  return rho_star_f_quadrature(p, y) * std::pow(u, (p.beta - 1.0) / a - 1.0);
}

std::pair<double, double> conv_kernel_w_forms(const PollardParams& p, double x,
                                              double t) {
  const double a = p.alpha_value();
  const double ts = std::pow(t, -1.0 / a);
  const double scaled =
      std::pow(t, (p.beta - 1.0) / a) * rho_star_f(p, x * ts);

  const double pe = p.kernel_exponent();
  const double rg = rgamma(pe);
  auto f = [a, pe, rg, ts](double u, double /*da*/, double db) -> double {
    const double fd = stable_density_raw(a, u * ts) * ts;
    if (fd == 0.0) return 0.0;
    return std::pow(db, pe - 1.0) * rg * fd;
  };
  const IntegralResult res =
      integrate_finite(EndpointIntegrand(f), 0.0, x, QuadratureConfig{});
  if (!res.converged) {
    throw ConvergenceError("conv_kernel_w: convolution quadrature did not converge");
  }
  const double direct = std::pow(t, p.gamma) * res.value;
  return {direct, scaled};
}

}  // namespace detail

double conv_kernel_w(const PollardParams& p, double x, double t) {
  if (!(x > 0.0)) throw DomainError("conv_kernel_w: x must be positive");
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("conv_kernel_w: t must be positive and finite");
  }
  const auto [direct, scaled] = detail::conv_kernel_w_forms(p, x, t);
  const double scale = std::max({1.0, std::abs(direct), std::abs(scaled)});
  if (std::abs(direct - scaled) > 1e-8 * scale) {
    throw MethodDisagreementError(
        "conv_kernel_w: convolution and scaled-series forms disagree", direct,
        scaled);
  }
  return scaled;
}

IntegralResult pollard_cdf_detailed(const PollardParams& p, double t) {
  if (!(t > 0.0)) throw DomainError("pollard_cdf: t must be positive");
  const double rg_gamma = rgamma(p.gamma);
  auto f = [&p, rg_gamma](double u) {
    return rg_gamma * detail::pollard_density_core(p, u);
  };
  IntegralResult res =
      std::isinf(t) ? integrate_semi_infinite(f, QuadratureConfig{})
                    : integrate_finite(f, 0.0, t, QuadratureConfig{});
  res.value = std::max(res.value, 0.0);
  return res;
}

double pollard_cdf(const PollardParams& p, double t) {
  const IntegralResult res = pollard_cdf_detailed(p, t);
  if (!res.converged) {
    throw ConvergenceError("pollard_cdf: quadrature did not converge");
  }
  return res.value;
}

IntegralResult marginal_density_detailed(const PollardParams& p,
                                         const GammaPrior& prior, double x) {
  if (!(x > 0.0)) throw DomainError("marginal_density: x must be positive");
  const double a = p.alpha_value();
  const double be = (p.beta - 1.0) / a;
  const double pe = p.kernel_exponent();
  const double lnorm = prior.mu * std::log(prior.lambda) - std::lgamma(prior.mu);
  const double lx = std::log(x);
  const double l_rg = std::log(rgamma(pe));
  // Nodes whose prior weight sits this far down cannot be rescued by any
  // admissible kernel magnitude; skip them without touching the kernel.
  const double skip =
      -2400.0 - std::abs(be) * 650.0 - std::abs(pe - 1.0) * (std::abs(lx) + 2200.0);

  auto f = [&p, prior, a, be, pe, lnorm, lx, l_rg, skip](double t) -> double {
    const double lt = std::log(t);
    const double lprior = lnorm + (prior.mu - 1.0) * lt - prior.lambda * t;
    if (lprior < skip) return 0.0;
    const double ln_y = lx - lt / a;
    if (ln_y > 690.0) {
      // y beyond the double range: the convolution is already in its leading
      // power regime (rho * f)(y) ~ rho(y), so fold everything in logs.
      const double lv = lprior + be * lt + l_rg + (pe - 1.0) * ln_y;
      return lv < -745.0 ? 0.0 : std::exp(lv);
    }
    const double conv = detail::rho_star_f(p, std::exp(ln_y));
    if (conv <= 0.0) return 0.0;
    const double lv = lprior + be * lt + std::log(conv);
    return lv < -745.0 ? 0.0 : std::exp(lv);
  };
  IntegralResult res = integrate_semi_infinite(f, QuadratureConfig{});
  if (!res.converged) {
    throw ConvergenceError("marginal_density: prior mixture quadrature did not converge");
  }
  return res;
}

double marginal_density(const PollardParams& p, const GammaPrior& prior, double x) {
  return marginal_density_detailed(p, prior, x).value;
}

IntegralResult ml_via_limit_detailed(const PollardParams& p, double lambda,
                                     double x, int n, double mu) {
  if (n < 1) throw DomainError("ml_via_limit: n must be a positive integer");
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw DomainError("ml_via_limit: mu must be positive and finite");
  }
  if (!(x > 0.0)) throw DomainError("ml_via_limit: x must be positive");
  const GammaPrior prior(mu / static_cast<double>(n), lambda);
  IntegralResult res = marginal_density_detailed(p, prior, x);
  const double scale = (static_cast<double>(n) / mu) * rgamma(p.gamma) *
                       std::pow(x, 1.0 - p.beta);
  res.value *= scale;
  res.error_estimate *= std::abs(scale);
  return res;
}

double ml_via_limit(const PollardParams& p, double lambda, double x, int n,
                    double mu) {
  return ml_via_limit_detailed(p, lambda, x, n, mu).value;
}

IntegralResult ml_via_pollard_detailed(const PollardParams& p, double lambda,
                                       double x) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("ml_via_pollard: lambda must be positive and finite");
  }
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("ml_via_pollard: x must be nonnegative and finite");
  }
  const double z = lambda * std::pow(x, p.alpha_value());
  const double rg_gamma = rgamma(p.gamma);
  auto f = [&p, z, rg_gamma](double u) -> double {
    const double core = detail::pollard_density_core(p, u);
    if (core == 0.0) return 0.0;
    const double e = z * u;
    if (e > 745.0) return 0.0;
    return rg_gamma * std::exp(-e) * core;
  };
  IntegralResult res = integrate_semi_infinite(f, QuadratureConfig{});
  if (!res.converged) {
    throw ConvergenceError("ml_via_pollard: mixture quadrature did not converge");
  }
  return res;
}

double ml_via_pollard(const PollardParams& p, double lambda, double x) {
  return ml_via_pollard_detailed(p, lambda, x).value;
}

IntegralResult feller_mixture_detailed(StableIndex a, double lambda, double x) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("feller_mixture: lambda must be positive and finite");
  }
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("feller_mixture: x must be nonnegative and finite");
  }
  IntegralResult res;
  if (x == 0.0) {
    res.value = 0.0;
    res.error_estimate = 0.0;
    res.evaluations = 0;
    res.converged = true;
    return res;
  }
  const double al = a.alpha();
  auto f = [al, lambda, x](double u) -> double {
    const double fd = detail::stable_density_raw(al, u);
    if (fd == 0.0) return 0.0;
    const double zu = lambda * std::pow(x / u, al);
    return fd * (-std::expm1(-zu));
  };
  res = integrate_semi_infinite(f, QuadratureConfig{});
  if (!res.converged) {
    throw ConvergenceError("feller_mixture: mixture quadrature did not converge");
  }
  res.value = std::clamp(res.value, 0.0, 1.0);
  return res;
}

double feller_mixture(StableIndex a, double lambda, double x) {
  return feller_mixture_detailed(a, lambda, x).value;
}

namespace detail {

double tilted_h_via_pollard(const TiltParams& tp, double lambda, double x) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("tilted_h: lambda must be positive and finite");
  }
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("tilted_h: x must be nonnegative and finite");
  }
  const double a = tp.alpha.alpha();
  const PollardParams base(tp.alpha, 1.0, 1.0);
  const double norm = gamma_ratio(tp.theta + 1.0, tp.theta / a + 1.0);
  const double z = lambda * std::pow(x, a);
  auto f = [&base, th = tp.theta, a, z](double u) -> double {
    const double core = pollard_density_core(base, u);
    if (core <= 0.0) return 0.0;
    const double lv = std::log(core) + (th / a) * std::log(u) - z * u;
    return lv < -745.0 ? 0.0 : std::exp(lv);
  };
  const IntegralResult res = integrate_semi_infinite(f, QuadratureConfig{});
  if (!res.converged) {
    throw ConvergenceError("tilted_h: tilted mixture quadrature did not converge");
  }
  return norm * res.value;
}

}  // namespace detail

double tilted_h(const TiltParams& tp, double lambda, double x) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("tilted_h: lambda must be positive and finite");
  }
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("tilted_h: x must be nonnegative and finite");
  }
  if (x == 0.0) return detail::tilted_h_via_pollard(tp, lambda, 0.0);
  const double a = tp.alpha.alpha();
  const double norm = gamma_ratio(tp.theta + 1.0, tp.theta / a + 1.0);
  auto f = [a, x](double t) -> double {
    const double lt = std::log(t);
    const double scale = std::exp(-lt / a);
    if (!std::isfinite(scale)) return 0.0;  // t so small the argument overflows
    const double fd = detail::stable_density_raw(a, x * scale) * scale;
    return fd;
  };
  // alpha h(x) = x int f_{alpha,theta}(x|t) t^{-1} e^{-lambda t} dt; the
  // theta-dependent factors of the tilted density are folded in log space.
  auto integrand = [&f, th = tp.theta, a, lambda](double t) -> double {
    const double fd = f(t);
    if (fd <= 0.0) return 0.0;
    const double lv =
        std::log(fd) + (th / a - 1.0) * std::log(t) - lambda * t;
    return lv < -745.0 ? 0.0 : std::exp(lv);
  };
  const IntegralResult res = integrate_semi_infinite(integrand, QuadratureConfig{});
  if (!res.converged) {
    throw ConvergenceError("tilted_h: tilted mixture quadrature did not converge");
  }
  return norm * std::pow(x, 1.0 - tp.theta) * res.value / a;
}

IntegralResult tilted_pollard_cdf_detailed(const TiltParams& tp, double t) {
  if (!(t > 0.0)) throw DomainError("tilted_pollard_cdf: t must be positive");
  const double a = tp.alpha.alpha();
  const PollardParams base(tp.alpha, 1.0, 1.0);
  const double norm = gamma_ratio(tp.theta + 1.0, tp.theta / a + 1.0);
  auto f = [&base, norm, th = tp.theta, a](double u) {
    const double core = detail::pollard_density_core(base, u);
    if (core <= 0.0) return 0.0;
    return norm * std::pow(u, th / a) * core;
  };
  IntegralResult res =
      std::isinf(t) ? integrate_semi_infinite(f, QuadratureConfig{})
                    : integrate_finite(f, 0.0, t, QuadratureConfig{});
  res.value = std::clamp(res.value, 0.0, 1.0);
  return res;
}

double tilted_pollard_cdf(const TiltParams& tp, double t) {
  const IntegralResult res = tilted_pollard_cdf_detailed(tp, t);
  if (!res.converged) {
    throw ConvergenceError("tilted_pollard_cdf: quadrature did not converge");
  }
  return res.value;
}

}  // namespace mlcm
