#include "mlcm/numerics.hpp"

#include <cmath>
#include <limits>

#include "mlcm/errors.hpp"

namespace mlcm {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

// Truncation points of the transformed axis.  At |t| = 6 the tanh-sinh
// weight sech^2((pi/2) sinh t) is ~e^-634 and node distances to the
// endpoints reach ~1e-276 * (b-a): all intermediates stay normal doubles.
// At |t| = 6.7 the exp-sinh abscissa spans [2.9e-277, 3.4e276].
constexpr double kTanhSinhUMax = 6.0;
constexpr double kExpSinhUMax = 6.7;

// Nodes nearer to the origin than this are treated as the singular endpoint
// zone for exp-sinh: a non-finite integrand value there is dropped (the
// weight times any integrable singularity is negligible at that depth).
constexpr double kOriginSkipZone = 1e-250;

// Terms beyond this magnitude risk overflowing the compensated accumulator.
constexpr double kTermOverflowGuard = 1e290;

class KahanSum {
 public:
  void add(double t) {
    double s = sum_ + t;
    if (std::abs(sum_) >= std::abs(t)) {
      comp_ += (sum_ - s) + t;
    } else {
      comp_ += (t - s) + sum_;
    }
    sum_ = s;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Shared refinement driver: trapezoid sums of node(t) over t = j * step,
// |t| <= u_max, with the step halved each level (previous nodes reused via
// the halving identity).  node(t) returns weight * integrand, already
// guarded against non-finite values.
template <typename NodeFn>
IntegralResult run_de(NodeFn&& node, double u_max,
                      const QuadratureConfig& cfg) {
  cfg.validate();
  IntegralResult res;
  long evals = 0;

  double step = 1.0;
  KahanSum level0;
  const long jmax0 = static_cast<long>(std::floor(u_max / step));
  for (long j = -jmax0; j <= jmax0; ++j) {
    level0.add(node(j * step));
    ++evals;
  }
  double prev = level0.value() * step;
  double best = prev;
  double err = std::numeric_limits<double>::infinity();
  bool converged = false;

  for (int level = 1; level <= cfg.max_refinements; ++level) {
    step *= 0.5;
    const long jmax = static_cast<long>(std::floor(u_max / step));
    KahanSum fresh;
    bool in_budget = true;
    for (long j = 1; j <= jmax; j += 2) {
      if (evals + 2 > cfg.max_evaluations) {
        in_budget = false;
        break;
      }
      fresh.add(node(j * step));
      fresh.add(node(-j * step));
      evals += 2;
    }
    if (!in_budget) break;

    const double cur = 0.5 * prev + fresh.value() * step;
    err = std::abs(cur - prev);
    best = cur;
    prev = cur;
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(cur));
    // The first couple of levels are too coarse to trust a small difference.
    if (level >= 2 && err <= tol) {
      converged = true;
      break;
    }
  }

  res.value = best;
  res.error_estimate = err;
  res.evaluations = evals;
  res.converged = converged;
  return res;
}

}  // namespace

void QuadratureConfig::validate() const {
  const bool tols_ok = std::isfinite(abs_tol) && std::isfinite(rel_tol) &&
                       abs_tol >= 0.0 && rel_tol >= 0.0 &&
                       (abs_tol > 0.0 || rel_tol > 0.0);
  if (!tols_ok) {
    throw DomainError(
        "quadrature tolerances must be finite, nonnegative, and not both "
        "zero");
  }
  if (max_refinements < 1) {
    throw DomainError("max_refinements must be at least 1");
  }
  if (max_evaluations < 1) {
    throw DomainError("max_evaluations must be at least 1");
  }
}

IntegralResult integrate_semi_infinite(const Integrand& f,
                                       const QuadratureConfig& cfg) {
  auto node = [&f](double t) -> double {
    const double x = std::exp(kHalfPi * std::sinh(t));
    const double w = kHalfPi * std::cosh(t) * x;
    const double fv = f(x);
    if (!std::isfinite(fv)) {
      if (x < kOriginSkipZone) return 0.0;
      throw IntegrandError("integrand returned a non-finite value", x);
    }
    if (fv == 0.0) return 0.0;
    const double c = w * fv;
    if (!std::isfinite(c)) {
      throw IntegrandError("weighted integrand overflowed", x);
    }
    return c;
  };
  return run_de(node, kExpSinhUMax, cfg);
}

IntegralResult integrate_finite(const EndpointIntegrand& f, double a, double b,
                                const QuadratureConfig& cfg) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw DomainError("integrate_finite requires finite a < b");
  }
  const double len = b - a;
  const double half = 0.5 * len;
  auto node = [&f, a, b, len, half](double t) -> double {
    const double tau = kHalfPi * std::sinh(t);
    const double q = std::exp(-2.0 * std::abs(tau));
    const double d_near = len * q / (1.0 + q);
    const double d_far = len / (1.0 + q);
    double x, da, db;
    if (tau >= 0.0) {
      db = d_near;
      da = d_far;
      x = b - db;
    } else {
      da = d_near;
      db = d_far;
      x = a + da;
    }
    // w = half * (pi/2) cosh(t) sech^2(tau); sech^2 via q keeps it normal.
    const double sech2 = 4.0 * q / ((1.0 + q) * (1.0 + q));
    const double w = half * kHalfPi * std::cosh(t) * sech2;
    const double fv = f(x, da, db);
    if (!std::isfinite(fv)) {
      // The true abscissa is strictly inside (a,b); if it rounded onto an
      // endpoint the singular value is an artifact of the evaluation point
      // and the (double-exponentially small) contribution is dropped.
      if (x == a || x == b) return 0.0;
      throw IntegrandError("integrand returned a non-finite value", x);
    }
    if (fv == 0.0) return 0.0;
    const double c = w * fv;
    if (!std::isfinite(c)) {
      throw IntegrandError("weighted integrand overflowed", x);
    }
    return c;
  };
  return run_de(node, kTanhSinhUMax, cfg);
}

IntegralResult integrate_finite(const Integrand& f, double a, double b,
                                const QuadratureConfig& cfg) {
  return integrate_finite(
      EndpointIntegrand(
          [&f](double x, double, double) -> double { return f(x); }),
      a, b, cfg);
}

SeriesResult sum_series(const SeriesTerm& term, const QuadratureConfig& cfg) {
  cfg.validate();
  SeriesResult res;
  KahanSum acc;
  double max_term = 0.0;
  double last_abs = std::numeric_limits<double>::infinity();
  int small_run = 0;
  long k = 0;
  bool converged = false;

  for (; k < cfg.max_evaluations; ++k) {
    const double t = term(k);
    if (!std::isfinite(t)) {
      throw SeriesOverflowError("series term is not finite", k);
    }
    if (std::abs(t) > kTermOverflowGuard) {
      throw SeriesOverflowError("series term magnitude exceeds safe range",
                                k);
    }
    acc.add(t);
    last_abs = std::abs(t);
    max_term = std::max(max_term, last_abs);
    const double tol =
        std::max(cfg.abs_tol, cfg.rel_tol * std::abs(acc.value()));
    if (last_abs <= tol) {
      if (++small_run >= 3 && k >= 3) {
        converged = true;
        ++k;  // count this evaluation
        break;
      }
    } else {
      small_run = 0;
    }
  }

  res.value = acc.value();
  res.error_estimate = last_abs;
  res.evaluations = k;
  res.converged = converged;
  res.max_term = max_term;
  return res;
}

}  // namespace mlcm
