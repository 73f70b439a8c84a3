#include <doctest.h>

#include <cmath>
#include <limits>

#include "mlcm/errors.hpp"
#include "mlcm/mittag_leffler.hpp"

using doctest::Approx;
using mlcm::MLParams;

TEST_SUITE("mittag_leffler") {
  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(MLParams(-0.1, 1.0, 1.0), mlcm::DomainError);
    CHECK_THROWS_AS(MLParams(0.5, 0.0, 1.0), mlcm::DomainError);
    CHECK_THROWS_AS(MLParams(0.5, -1.0, 1.0), mlcm::DomainError);
    CHECK_THROWS_AS(MLParams(0.5, 1.0, 0.0), mlcm::DomainError);
    CHECK_THROWS_AS(MLParams(std::numeric_limits<double>::quiet_NaN(), 1.0, 1.0),
                    mlcm::DomainError);
    CHECK_NOTHROW(MLParams(0.0, 1.0, 1.0));
    CHECK_NOTHROW(MLParams(1.5, 2.0, 0.5));

    CHECK(MLParams(0.5, 1.2, 1.5).cm_regime());
    CHECK_FALSE(MLParams(1.0, 1.0, 1.0).cm_regime());
    CHECK_FALSE(MLParams(0.5, 0.6, 1.5).cm_regime());

    CHECK_THROWS_AS(mlcm::RatePair(0.0, 1.0), mlcm::DomainError);
    CHECK_THROWS_AS(mlcm::RatePair(1.0, -1.0), mlcm::DomainError);
    CHECK_NOTHROW(mlcm::RatePair(1.0, 0.0));
  }

  TEST_CASE("exponential reduction at alpha = beta = gamma = 1") {
    MLParams p(1.0, 1.0, 1.0);
    CHECK(mlcm::ml_series(p, -1.0)
          == Approx(0.36787944117144232159552377).epsilon(1e-14));
    for (double x = 0.0; x <= 20.0; x += 2.5) {
      CHECK(std::abs(mlcm::ml_series(p, -x) - std::exp(-x)) <= 1e-13 * std::exp(-x) + 1e-18);
    }
    CHECK(mlcm::ml_series(p, 50.0) == Approx(std::exp(50.0)).epsilon(1e-13));
  }

  TEST_CASE("erfc reduction at alpha = 1/2") {
    MLParams p(0.5, 1.0, 1.0);
    for (double x = 0.0; x <= 5.0; x += 0.5) {
      double expected = std::exp(x * x) * std::erfc(x);
      CHECK(std::abs(mlcm::ml_series(p, -x) - expected) <= 1e-10);
    }
    CHECK(mlcm::ml_series(p, 1.0) == Approx(5.00898008076228346631).epsilon(1e-14));
  }

  TEST_CASE("one-parameter reference values") {
    CHECK(mlcm::ml_series(MLParams(0.5, 1.0, 1.0), -1.0)
          == Approx(0.42758357615580700441075034).epsilon(5e-15));
    CHECK(mlcm::ml_series(MLParams(0.5, 1.0, 1.0), -5.0)
          == Approx(0.11070463773306862637021209).epsilon(5e-14));
    CHECK(mlcm::ml_series(MLParams(0.7, 1.0, 1.0), -1.0)
          == Approx(0.39961197811559938436589388).epsilon(5e-15));
    CHECK(mlcm::ml_series(MLParams(0.7, 1.0, 1.0), -5.0)
          == Approx(0.077569357764769801692156224).epsilon(5e-14));
    CHECK(mlcm::ml_series(MLParams(0.3, 1.0, 1.0), -1.0)
          == Approx(0.45659440832969066900686688).epsilon(5e-15));
  }

  TEST_CASE("two- and three-parameter reference values") {
    CHECK(mlcm::ml_series(MLParams(0.5, 0.5, 1.0), -1.0)
          == Approx(0.13660600739194928253732911).epsilon(5e-15));
    CHECK(mlcm::ml_series(MLParams(0.5, 0.5, 1.0), -std::sqrt(0.5))
          == Approx(0.1942620155697109743436).epsilon(5e-15));
    CHECK(mlcm::ml_series(MLParams(0.5, 0.5, 1.0), -std::sqrt(2.0))
          == Approx(0.08872532356402331774996).epsilon(5e-14));
    CHECK(mlcm::ml_series(MLParams(0.5, 0.8, 2.0), -2.0)
          == Approx(0.010659214959418480158165782).epsilon(5e-13));
    CHECK(mlcm::ml_series(MLParams(0.5, 1.2, 1.5), -1.0)
          == Approx(0.33367719477485364287034263).epsilon(5e-15));
    CHECK(mlcm::ml_series(MLParams(0.5, 1.2, 1.5), -3.0)
          == Approx(0.092542917283081568408353285).epsilon(5e-14));
    CHECK(mlcm::ml_series(MLParams(0.5, 1.2, 1.5), -std::sqrt(2.0))
          == Approx(0.23545803521432923556437386).epsilon(5e-15));
    CHECK(mlcm::ml_series(MLParams(0.7, 1.5, 1.8), -1.0)
          == Approx(0.31406012130634817312321585).epsilon(5e-15));
    CHECK(mlcm::ml_series(MLParams(0.7, 1.5, 1.8), -3.0)
          == Approx(0.056537268276980552216114274).epsilon(5e-14));
  }

  TEST_CASE("value at x = 0 is 1/Gamma(beta)") {
    CHECK(mlcm::ml_series(MLParams(0.5, 1.2, 1.5), 0.0)
          == Approx(1.089124421058336307831).epsilon(1e-14));
    CHECK(mlcm::ml_series(MLParams(0.7, 1.5, 1.8), 0.0)
          == Approx(1.128379167095512573896).epsilon(1e-14));
    CHECK(mlcm::ml_series(MLParams(1.0, 1.0, 1.0), 0.0) == 1.0);
  }

  TEST_CASE("geometric reduction at alpha = 0") {
    // E^g_{0,b}(x) = (1-x)^{-g} / Gamma(b), |x| < 1.
    CHECK(mlcm::ml_series(MLParams(0.0, 1.0, 1.0), 0.5) == Approx(2.0).epsilon(1e-13));
    CHECK(mlcm::ml_series(MLParams(0.0, 1.0, 1.0), -0.5)
          == Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(mlcm::ml_series(MLParams(0.0, 1.0, 2.0), 0.5) == Approx(4.0).epsilon(1e-12));
    CHECK_THROWS_AS(mlcm::ml_series(MLParams(0.0, 1.0, 1.0), 1.0), mlcm::DomainError);
    CHECK_THROWS_AS(mlcm::ml_series(MLParams(0.0, 1.0, 1.0), -1.5), mlcm::DomainError);
  }

  TEST_CASE("range gate: |x| > 50 is refused") {
    CHECK_THROWS_AS(mlcm::ml_series(MLParams(0.5, 1.0, 1.0), -50.5),
                    mlcm::SeriesRangeError);
    CHECK_THROWS_AS(mlcm::ml_series(MLParams(1.0, 1.0, 1.0), 51.0),
                    mlcm::SeriesRangeError);
  }

  TEST_CASE("cancellation gate: deep alternation is refused with diagnostics") {
    // alpha = 1/2, x = -8: ln(max term / value) ~ 67, beyond the dd budget.
    try {
      (void)mlcm::ml_series(MLParams(0.5, 1.0, 1.0), -8.0);
      FAIL("expected CancellationError");
    } catch (const mlcm::CancellationError& e) {
      CHECK(e.max_term() > 1e20);
    }
    CHECK_THROWS_AS(mlcm::ml_series(MLParams(0.3, 1.0, 1.0), -4.0),
                    mlcm::CancellationError);
  }

  TEST_CASE("cancellation-log estimate") {
    MLParams p(0.5, 1.0, 1.0);
    CHECK(mlcm::ml_series_cancellation_log(p, -5.0) == Approx(28.0).epsilon(1e-12));
    CHECK(mlcm::ml_series_cancellation_log(p, 5.0) == 0.0);
    CHECK(mlcm::ml_series_cancellation_log(MLParams(1.0, 1.0, 1.0), -20.0)
          == Approx(43.0).epsilon(1e-12));
  }

  TEST_CASE("overflow gate: positive-axis blowup is refused") {
    // E_{1/2}(+50) has terms ~ e^2500.
    CHECK_THROWS_AS(mlcm::ml_series(MLParams(0.5, 1.0, 1.0), 50.0),
                    mlcm::SeriesOverflowError);
  }

  TEST_CASE("series diagnostics report cancellation magnitude") {
    auto r = mlcm::ml_series_detailed(MLParams(0.5, 1.0, 1.0), -5.0);
    CHECK(r.converged);
    CHECK(r.value == Approx(0.11070463773306862637021209).epsilon(1e-13));
    // ln kappa ~ 25: max term around e^25 * value.
    CHECK(r.max_term > 1e8 * r.value);
    CHECK(r.max_term < 1e14 * r.value);
    CHECK(r.evaluations > 10);
    CHECK(r.error_estimate <= 1e-13);

    auto pos = mlcm::ml_series_detailed(MLParams(1.0, 1.0, 1.0), 1.0);
    CHECK(pos.converged);
    CHECK(pos.max_term == 1.0);
  }

  TEST_CASE("determinism") {
    MLParams p(0.5, 1.2, 1.5);
    CHECK(mlcm::ml_series(p, -2.5) == mlcm::ml_series(p, -2.5));
  }

  TEST_CASE("Laplace transform closed form") {
    // (1,1,1), lambda = 1: 1/(1+s).
    CHECK(mlcm::ml_laplace_closed(MLParams(1.0, 1.0, 1.0), mlcm::RatePair(1.0, 1.0))
          == Approx(0.5).epsilon(1e-15));
    CHECK(mlcm::ml_laplace_closed(MLParams(1.0, 1.0, 1.0), mlcm::RatePair(2.0, 1.0))
          == Approx(1.0 / 3.0).epsilon(1e-15));
    // (1/2,1,1), lambda = 1: s^{-1/2}/(1+s^{1/2}).
    CHECK(mlcm::ml_laplace_closed(MLParams(0.5, 1.0, 1.0), mlcm::RatePair(1.0, 1.0))
          == Approx(0.5).epsilon(1e-15));
    CHECK(mlcm::ml_laplace_closed(MLParams(0.5, 1.0, 1.0), mlcm::RatePair(1.0, 4.0))
          == Approx(1.0 / 6.0).epsilon(1e-15));
    // s = 0 sits outside the transform domain.
    CHECK_THROWS_AS(
        mlcm::ml_laplace_closed(MLParams(0.5, 1.0, 1.0), mlcm::RatePair(1.0, 0.0)),
        mlcm::DomainError);
  }
}
