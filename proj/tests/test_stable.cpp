#include <doctest.h>

#include <cmath>
#include <limits>

#include "mlcm/errors.hpp"
#include "mlcm/stable.hpp"

using doctest::Approx;
using mlcm::StableIndex;

namespace {

constexpr double kSqrtPi = 1.7724538509055160272982;

// Levy density: the alpha = 1/2 law in closed form.
double levy_density(double x) {
  return std::pow(x, -1.5) * std::exp(-1.0 / (4.0 * x)) / (2.0 * kSqrtPi);
}

double levy_cdf(double x) { return std::erfc(1.0 / (2.0 * std::sqrt(x))); }

}  // namespace

TEST_SUITE("stable") {
  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(StableIndex(0.0), mlcm::DomainError);
    CHECK_THROWS_AS(StableIndex(1.0), mlcm::DomainError);
    CHECK_THROWS_AS(StableIndex(1.3), mlcm::DomainError);
    CHECK_THROWS_AS(StableIndex(-0.2), mlcm::DomainError);
    CHECK_THROWS_AS(StableIndex(std::numeric_limits<double>::quiet_NaN()),
                    mlcm::DomainError);
    CHECK_NOTHROW(StableIndex(0.5));

    CHECK_THROWS_AS(mlcm::ScaledStable(StableIndex(0.5), 0.0), mlcm::DomainError);
    CHECK_THROWS_AS(mlcm::ScaledStable(StableIndex(0.5), -1.0), mlcm::DomainError);
    CHECK_THROWS_AS(
        mlcm::ScaledStable(StableIndex(0.5), std::numeric_limits<double>::infinity()),
        mlcm::DomainError);

    CHECK_THROWS_AS(mlcm::TiltParams(StableIndex(0.5), -0.5), mlcm::DomainError);
    CHECK_THROWS_AS(mlcm::TiltParams(StableIndex(0.5), -0.7), mlcm::DomainError);
    CHECK_NOTHROW(mlcm::TiltParams(StableIndex(0.5), -0.4));
    CHECK_NOTHROW(mlcm::TiltParams(StableIndex(0.5), 0.0));
  }

  TEST_CASE("density domain") {
    CHECK_THROWS_AS(mlcm::stable_density(StableIndex(0.5), 0.0), mlcm::DomainError);
    CHECK_THROWS_AS(mlcm::stable_density(StableIndex(0.5), -1.0), mlcm::DomainError);
    CHECK(mlcm::detail::stable_density_raw(0.5, -3.0) == 0.0);
    CHECK(mlcm::detail::stable_density_raw(0.5, 0.0) == 0.0);
  }

  TEST_CASE("alpha = 1/2 closed form across four orders of magnitude") {
    for (double x : {0.1, 0.3, 0.5, 1.0, 2.0, 5.0, 25.0}) {
      double f = mlcm::stable_density(StableIndex(0.5), x);
      CHECK(std::abs(f - levy_density(x)) <= 1e-11 * std::max(1.0, levy_density(x)));
    }
  }

  TEST_CASE("series-regime reference values") {
    struct Row {
      double alpha, x, f;
    };
    const Row rows[] = {
        {0.3, 0.3, 0.3957161872373272462059508},
        {0.3, 1.0, 0.117157002565916149307486},
        {0.3, 3.0, 0.03460370098406056052330154},
        {0.3, 0.05, 1.614995145697330083191506},
        {0.5, 0.3, 0.7461070052967973609674356},
        {0.5, 1.0, 0.219695644733861198523431},
        {0.5, 3.0, 0.0499484457833487670960412},
        {0.5, 0.05, 0.1700073320504068692872758},
        {0.5, 25.0, 0.002234303213577873886283165},
        {0.7, 0.3, 0.6331151806492999547427149},
        {0.7, 1.0, 0.3873950101465924375572043},
        {0.7, 3.0, 0.05000090402022236946907033},
    };
    for (const Row& r : rows) {
      double f = mlcm::stable_density(StableIndex(r.alpha), r.x);
      CHECK(f == Approx(r.f).epsilon(1e-9));
    }
  }

  TEST_CASE("left-tail integral-regime reference values") {
    struct Row {
      double alpha, x, f;
    };
    const Row rows[] = {
        {0.7, 0.12, 4.1613139238056292721e-7},
        {0.7, 0.05, 7.5082934735277842853e-60},
        {0.8, 0.3, 0.00076917218372696538147},
        {0.9, 0.5, 8.2039676753511462891e-8},
        {0.6, 0.08, 0.0074996605820751367939},
    };
    for (const Row& r : rows) {
      double f = mlcm::stable_density(StableIndex(r.alpha), r.x);
      CHECK(f == Approx(r.f).epsilon(5e-10));
    }
  }

  TEST_CASE("density underflows to exact zero beyond double range") {
    // -ln f_0.8(0.1) ~ 815: the true value ~8.5e-354 is not representable.
    CHECK(mlcm::stable_density(StableIndex(0.8), 0.1) == 0.0);
  }

  TEST_CASE("cancellation-log estimate matches the left-tail exponent") {
    // For alpha = 1/2 the exact tail exponent is 1/(4x).
    for (double x : {0.02, 0.1, 0.5}) {
      CHECK(mlcm::detail::series_cancellation_log(0.5, x)
            == Approx(1.0 / (4.0 * x)).epsilon(1e-12));
    }
  }

  TEST_CASE("cdf reference values") {
    CHECK(mlcm::stable_cdf(StableIndex(0.3), 1.0)
          == Approx(0.43244874100630497268).epsilon(1e-9));
    CHECK(mlcm::stable_cdf(StableIndex(0.7), 1.0)
          == Approx(0.53718723332616037482).epsilon(1e-9));
    CHECK(mlcm::stable_cdf(StableIndex(0.7), 0.4)
          == Approx(0.11728452933516295905).epsilon(1e-8));
  }

  TEST_CASE("cdf closed form at alpha = 1/2") {
    for (double x : {0.25, 1.0, 4.0}) {
      CHECK(std::abs(mlcm::stable_cdf(StableIndex(0.5), x) - levy_cdf(x)) <= 1e-9);
    }
  }

  TEST_CASE("cdf limits and range") {
    CHECK(mlcm::stable_cdf(StableIndex(0.5), std::numeric_limits<double>::infinity())
          == 1.0);
    double tail = mlcm::stable_cdf(StableIndex(0.5), 1e-3);
    CHECK(tail >= 0.0);
    CHECK(tail <= 2e-100);  // erfc(1/(2*sqrt(1e-3))) ~ 2.8e-110
    auto d = mlcm::stable_cdf_detailed(StableIndex(0.7), 2.0);
    CHECK(d.converged);
    CHECK(d.value >= 0.0);
    CHECK(d.value <= 1.0);
    CHECK(d.evaluations > 0);
  }

  TEST_CASE("cdf is monotone") {
    double prev = 0.0;
    for (double x = 0.2; x <= 4.01; x += 0.2) {
      double c = mlcm::stable_cdf(StableIndex(0.6), x);
      CHECK(c >= prev);
      prev = c;
    }
  }

  TEST_CASE("scaled density reduces to the base law at t = 1") {
    for (double x : {0.4, 1.0, 2.5}) {
      CHECK(mlcm::stable_density_scaled(mlcm::ScaledStable(StableIndex(0.6), 1.0), x)
            == mlcm::stable_density(StableIndex(0.6), x));
    }
  }

  TEST_CASE("scaled density obeys f_a(x|t) = f_a(x t^{-1/a}) t^{-1/a}") {
    StableIndex a(0.5);
    double t = 2.0;            // t^{-1/alpha} = 1/4
    for (double x : {0.8, 2.0, 6.0}) {
      double lhs = mlcm::stable_density_scaled(mlcm::ScaledStable(a, t), x);
      double rhs = mlcm::stable_density(a, 0.25 * x) * 0.25;
      CHECK(lhs == Approx(rhs).epsilon(1e-12));
    }
  }

  TEST_CASE("scaled density integrates to one") {
    mlcm::ScaledStable s(StableIndex(0.7), 1.7);
    auto r = mlcm::integrate_semi_infinite(
        [&s](double x) { return mlcm::stable_density_scaled(s, x); });
    CHECK(r.converged);
    CHECK(r.value == Approx(1.0).epsilon(1e-8));
  }

  TEST_CASE("tilted density: zero tilt is the scaled law") {
    mlcm::TiltParams p(StableIndex(0.6), 0.0);
    for (double x : {0.5, 1.0, 3.0}) {
      CHECK(mlcm::tilted_stable_density(p, x, 1.4)
            == Approx(mlcm::stable_density_scaled(mlcm::ScaledStable(StableIndex(0.6), 1.4),
                                                  x))
                   .epsilon(1e-13));
    }
  }

  TEST_CASE("tilted density normalizes for nonzero tilt") {
    mlcm::TiltParams p(StableIndex(0.5), 0.5);
    auto r = mlcm::integrate_semi_infinite(
        [&p](double x) { return mlcm::tilted_stable_density(p, x, 1.0); });
    CHECK(r.converged);
    CHECK(r.value == Approx(1.0).epsilon(1e-8));

    mlcm::TiltParams q(StableIndex(0.7), -0.3);
    auto r2 = mlcm::integrate_semi_infinite(
        [&q](double x) { return mlcm::tilted_stable_density(q, x, 2.0); });
    CHECK(r2.converged);
    CHECK(r2.value == Approx(1.0).epsilon(1e-8));
  }

  TEST_CASE("raw evaluator is consistent with the public density") {
    for (double x : {0.3, 1.0, 3.0}) {
      CHECK(mlcm::detail::stable_density_raw(0.7, x)
            == Approx(mlcm::stable_density(StableIndex(0.7), x)).epsilon(1e-12));
    }
  }
}
