#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mlcm/ddouble.hpp"

namespace {

using mlcm::DD;

// Residual of a double-double value against a reference split into
// high/low parts (each pre-rounded to the nearest double).
double dd_residual(DD a, double ref_hi, double ref_lo) {
  return std::abs((a.hi - ref_hi) + (a.lo - ref_lo));
}

// Accumulated double-double rounding budget: ~3e-30 relative, i.e. still
// ~14 decimal digits beyond what plain double arithmetic could deliver.
void check_dd(DD a, double ref_hi, double ref_lo) {
  CHECK(dd_residual(a, ref_hi, ref_lo) <= 3e-30 * std::max(1.0, std::abs(ref_hi)));
}

}  // namespace

TEST_SUITE("ddouble") {
  TEST_CASE("error-free add/mul round trips") {
    DD a = mlcm::dd_add(DD(1.0), DD(1e-20));
    CHECK(a.hi == 1.0);
    CHECK(a.lo == doctest::Approx(1e-20).epsilon(1e-15));

    // (1+u)(1-u) = 1 - u^2 is exactly representable as a two-double sum.
    double u = std::ldexp(1.0, -30);
    DD p = mlcm::dd_mul(DD(1.0 + u), DD(1.0 - u));
    CHECK(dd_residual(p, 1.0, -u * u) == 0.0);
  }

  TEST_CASE("division reconstructs the dividend") {
    DD a{3.141592653589793, 1.2246467991473532e-16};
    DD b{1.4142135623730951, -9.667293313452913e-17};
    DD q = mlcm::dd_div(a, b);
    DD back = mlcm::dd_mul(q, b);
    CHECK(dd_residual(back, a.hi, a.lo) <= 1e-30 * std::abs(a.hi));
  }

  TEST_CASE("dd_exp matches high-precision references") {
    check_dd(mlcm::dd_exp(DD(1.0)), 2.718281828459045, 1.4456468917292502e-16);
    // exp of the double closest to -log(2): not exactly 1/2 because the
    // argument misses -log(2) by its own rounding.
    check_dd(mlcm::dd_exp(DD(-0.69314718055994531)), 0.5, 1.1595234069231498e-17);
    check_dd(mlcm::dd_exp(DD(-3.7)), 0.024723526470339388, -1.294857794723138e-18);
  }

  TEST_CASE("dd_exp underflows cleanly") {
    DD z = mlcm::dd_exp(DD(-800.0));
    CHECK(z.hi == 0.0);
    CHECK(z.lo == 0.0);
  }

  TEST_CASE("dd_log matches high-precision references") {
    check_dd(mlcm::dd_log(DD(30.0)), 3.4011973816621555, -8.574398976320894e-17);
    check_dd(mlcm::dd_log(DD(0.7)), -0.35667494393873245, 4.82556379937662e-18);
  }

  TEST_CASE("dd_log and dd_exp invert each other") {
    for (double x : {0.3, 1.7, 12.5, 400.0}) {
      DD r = mlcm::dd_exp(mlcm::dd_log(DD(x)));
      CHECK(dd_residual(r, x, 0.0) <= 3e-30 * x);
    }
  }

  TEST_CASE("dd_lgamma matches high-precision references") {
    struct Row {
      double x, hi, lo;
    };
    const Row rows[] = {
        {0.45, 0.6770871054774646, 2.155486514897196e-17},
        {7.3, 7.147892523022248, 3.798448773389085e-16},
        {123.456, 469.6055471299295, -2.149009266109741e-14},
        {0.1, 2.252712651734206, -8.214908571963665e-17},
        {30.0, 71.25703896716801, -5.6547469778977255e-15},
    };
    for (const Row& r : rows) {
      check_dd(mlcm::dd_lgamma(DD(r.x)), r.hi, r.lo);
    }
  }

  TEST_CASE("dd_lgamma recurrence lgamma(x+1) = lgamma(x) + log(x)") {
    for (double x : {0.3, 1.2, 5.5}) {
      // x + 1 must be formed exactly in dd; the double sum rounds and the
      // rounding would dominate the comparison.
      DD lhs = mlcm::dd_lgamma(mlcm::dd_add(DD(x), 1.0));
      DD rhs = mlcm::dd_add(mlcm::dd_lgamma(DD(x)), mlcm::dd_log(DD(x)));
      DD diff = mlcm::dd_sub(lhs, rhs);
      CHECK(std::abs(diff.hi) <= 1e-29 * std::max(1.0, std::abs(lhs.hi)));
    }
  }
}
