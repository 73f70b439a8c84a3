#include <doctest.h>

#include <cmath>
#include <limits>

#include "mlcm/errors.hpp"
#include "mlcm/numerics.hpp"

using doctest::Approx;
using mlcm::QuadratureConfig;

namespace {
constexpr double kPi = 3.141592653589793238462643383279503;
}

TEST_SUITE("numerics") {
  TEST_CASE("config validation rejects nonsense") {
    QuadratureConfig bad;
    bad.abs_tol = -1.0;
    CHECK_THROWS_AS(bad.validate(), mlcm::DomainError);

    QuadratureConfig zero;
    zero.abs_tol = 0.0;
    zero.rel_tol = 0.0;
    CHECK_THROWS_AS(zero.validate(), mlcm::DomainError);

    QuadratureConfig refinements;
    refinements.max_refinements = 0;
    CHECK_THROWS_AS(refinements.validate(), mlcm::DomainError);

    QuadratureConfig nan_tol;
    nan_tol.rel_tol = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(nan_tol.validate(), mlcm::DomainError);

    CHECK_NOTHROW(QuadratureConfig{}.validate());
  }

  TEST_CASE("semi-infinite: exponential decay") {
    auto r = mlcm::integrate_semi_infinite([](double x) { return std::exp(-x); });
    CHECK(r.converged);
    CHECK(r.value == Approx(1.0).epsilon(1e-12));
    CHECK(r.evaluations > 0);
    CHECK(r.error_estimate <= std::max(1e-10, 1e-10 * std::abs(r.value)));
  }

  TEST_CASE("semi-infinite: Gaussian moment") {
    auto r = mlcm::integrate_semi_infinite([](double x) { return x * std::exp(-x * x); });
    CHECK(r.converged);
    CHECK(r.value == Approx(0.5).epsilon(1e-12));
  }

  TEST_CASE("semi-infinite: power singularity at the origin") {
    // int_0^inf x^{-1/2} e^{-x} dx = Gamma(1/2) = sqrt(pi)
    auto r = mlcm::integrate_semi_infinite(
        [](double x) { return std::exp(-x) / std::sqrt(x); });
    CHECK(r.converged);
    CHECK(r.value == Approx(std::sqrt(kPi)).epsilon(1e-12));
  }

  TEST_CASE("semi-infinite: divergent integrand reports non-convergence") {
    auto r = mlcm::integrate_semi_infinite([](double x) { return 1.0 / (1.0 + x); });
    CHECK_FALSE(r.converged);
  }

  TEST_CASE("semi-infinite: NaN away from the origin throws IntegrandError") {
    auto bad = [](double x) {
      return x > 1.0 ? std::numeric_limits<double>::quiet_NaN() : std::exp(-x);
    };
    CHECK_THROWS_AS((void)mlcm::integrate_semi_infinite(bad), mlcm::IntegrandError);
  }

  TEST_CASE("semi-infinite: non-finite values in the deep underflow zone are dropped") {
    // A 0 * inf = NaN produced only at abscissae below any physical scale
    // must not poison an otherwise clean integral.
    auto f = [](double x) {
      if (x < 1e-280) return std::numeric_limits<double>::quiet_NaN();
      return std::exp(-x);
    };
    auto r = mlcm::integrate_semi_infinite(f);
    CHECK(r.converged);
    CHECK(r.value == Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("finite: smooth integrand") {
    auto r = mlcm::integrate_finite([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(r.converged);
    CHECK(r.value == Approx(1.0 / 3.0).epsilon(1e-13));
  }

  TEST_CASE("finite: singularity at the left endpoint, plain overload") {
    auto r = mlcm::integrate_finite([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
    CHECK(r.converged);
    CHECK(r.value == Approx(2.0).epsilon(1e-11));
  }

  TEST_CASE("finite: two-sided singularity needs the endpoint-aware form") {
    // int_0^1 dx / sqrt(x(1-x)) = pi; dist_b near b avoids catastrophic
    // cancellation in 1-x.
    auto f = [](double, double da, double db) { return 1.0 / std::sqrt(da * db); };
    auto r = mlcm::integrate_finite(mlcm::EndpointIntegrand(f), 0.0, 1.0);
    CHECK(r.converged);
    CHECK(r.value == Approx(kPi).epsilon(1e-12));
  }

  TEST_CASE("finite: endpoint-aware and plain overloads agree on smooth data") {
    auto plain = mlcm::integrate_finite([](double x) { return std::cos(x); }, 0.0, 2.0);
    auto aware = mlcm::integrate_finite(
        mlcm::EndpointIntegrand([](double x, double, double) { return std::cos(x); }), 0.0,
        2.0);
    CHECK(plain.converged);
    CHECK(aware.converged);
    CHECK(plain.value == Approx(std::sin(2.0)).epsilon(1e-13));
    CHECK(aware.value == Approx(std::sin(2.0)).epsilon(1e-13));
  }

  TEST_CASE("finite: degenerate and reversed intervals are rejected") {
    auto f = [](double x) { return x; };
    CHECK_THROWS_AS((void)mlcm::integrate_finite(f, 1.0, 1.0), mlcm::DomainError);
    CHECK_THROWS_AS((void)mlcm::integrate_finite(f, 2.0, 1.0), mlcm::DomainError);
  }

  TEST_CASE("finite: NaN inside the interval throws IntegrandError with abscissa") {
    auto bad = [](double x) {
      return x > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0;
    };
    try {
      (void)mlcm::integrate_finite(bad, 0.0, 1.0);
      FAIL("expected IntegrandError");
    } catch (const mlcm::IntegrandError& e) {
      CHECK(e.abscissa() > 0.5);
      CHECK(e.abscissa() < 1.0);
    }
  }

  TEST_CASE("sum_series: geometric series") {
    // Stops once terms drop below the tolerance; the truncated tail is on
    // the order of the last term (~1e-10).
    auto r = mlcm::sum_series([](long k) { return std::pow(0.5, double(k)); });
    CHECK(r.converged);
    CHECK(r.value == Approx(2.0).epsilon(1e-9));
    CHECK(r.max_term == 1.0);
    CHECK(r.evaluations >= 4);
  }

  TEST_CASE("sum_series: alternating series with heavy cancellation") {
    // exp(-10) the hard way: terms up to 10^10/10! ~ 2756 cancel down to
    // 4.54e-5.  The floor here is the rounding of the terms themselves;
    // the compensated accumulator must not add to it.
    auto r = mlcm::sum_series([](long k) {
      double t = 1.0;
      for (long j = 1; j <= k; ++j) t *= -10.0 / double(j);
      return t;
    });
    CHECK(r.converged);
    CHECK(r.value == Approx(std::exp(-10.0)).epsilon(1e-7));
    CHECK(r.max_term > 1000.0);
  }

  TEST_CASE("sum_series: overflow-scale term throws with its index") {
    try {
      (void)mlcm::sum_series([](long k) { return k < 5 ? 1.0 : 1e300; });
      FAIL("expected SeriesOverflowError");
    } catch (const mlcm::SeriesOverflowError& e) {
      CHECK(e.index() == 5);
    }
  }

  TEST_CASE("sum_series: slow divergence exhausts the budget without converging") {
    QuadratureConfig cfg;
    cfg.max_evaluations = 1000;
    auto r = mlcm::sum_series([](long k) { return 1.0 / double(k + 1); }, cfg);
    CHECK_FALSE(r.converged);
    CHECK(r.evaluations >= 1000);
  }

  TEST_CASE("results are deterministic") {
    auto f = [](double x) { return std::exp(-x) / (1.0 + x * x); };
    auto a = mlcm::integrate_semi_infinite(f);
    auto b = mlcm::integrate_semi_infinite(f);
    CHECK(a.value == b.value);
    CHECK(a.error_estimate == b.error_estimate);
    CHECK(a.evaluations == b.evaluations);
  }
}
