#include "mlcm/ddouble.hpp"

#include <array>
#include <cmath>

namespace mlcm {

namespace {

// 1/k! for k = 0..25 as exact-quotient double-doubles (k! is exact in dd up
// to 25! since its bit length stays under 106).
const std::array<DD, 26>& inv_factorials() {
  static const std::array<DD, 26> table = [] {
    std::array<DD, 26> t{};
    DD fact(1.0);
    t[0] = DD(1.0);
    for (int k = 1; k <= 25; ++k) {
      fact = dd_mul(fact, static_cast<double>(k));
      t[static_cast<std::size_t>(k)] = dd_div(DD(1.0), fact);
    }
    return t;
  }();
  return table;
}

}  // namespace

DD dd_exp(DD a) {
  if (a.hi < -745.0) return DD(0.0);
  // Range-reduce: a = n*ln2 + r with |r| <= ln2/2, then Taylor at r.
  double n = std::nearbyint(a.hi / kDDLn2.hi);
  DD r = dd_sub(a, dd_mul(kDDLn2, n));
  const auto& inv_fact = inv_factorials();
  DD p = inv_fact[25];
  for (int k = 24; k >= 0; --k) {
    p = dd_add(dd_mul(p, r), inv_fact[static_cast<std::size_t>(k)]);
  }
  return dd_ldexp(p, static_cast<int>(n));
}

DD dd_log(DD a) {
  // Seed with the double log, then one Newton-style correction:
  // ln a = r0 + ln(a e^{-r0}) and a e^{-r0} = 1 + d with |d| ~ 1e-16.
  double r0 = std::log(a.hi);
  DD d = dd_sub(dd_mul(a, dd_exp(DD(-r0))), 1.0);
  DD corr = dd_sub(d, dd_mul(dd_mul(d, d), 0.5));
  return dd_add(corr, r0);
}

namespace {

// Stirling-series coefficients B_{2n} / (2n (2n-1)), n = 1..14, dd-split.
constexpr std::array<DD, 14> kStirling = {{
    {0.08333333333333333, 4.625929269271485e-18},
    {-0.002777777777777778, 1.0601087908747154e-19},
    {0.0007936507936507937, 6.883823317368282e-22},
    {-0.0005952380952380953, 5.36938218754726e-20},
    {0.0008417508417508417, 3.6870174889237694e-20},
    {-0.0019175269175269176, 1.0675702776872475e-19},
    {0.00641025641025641, 2.2240044563805217e-19},
    {-0.029550653594771242, 4.861760957508855e-19},
    {0.17964437236883057, -6.401600482710946e-19},
    {-1.3924322169059011, 1.5837056989230303e-17},
    {13.402864044168393, -6.154114101993966e-16},
    {-156.84828462600203, 9.391823141715389e-15},
    {2193.1033333333335, -1.3339255626002948e-13},
    {-36108.77125372499, 5.897583353514365e-13},
}};

// ln Gamma(z) by the Stirling series; accurate to ~1e-35 relative for z >= 30.
DD lgamma_stirling(DD z) {
  DD lnz = dd_log(z);
  DD result = dd_sub(dd_mul(dd_sub(z, 0.5), lnz), z);
  result = dd_add(result, kDDLnSqrt2Pi);
  DD zinv = dd_div(DD(1.0), z);
  DD zinv2 = dd_mul(zinv, zinv);
  DD series = kStirling[13];
  for (int n = 12; n >= 0; --n) {
    series = dd_add(dd_mul(series, zinv2), kStirling[static_cast<std::size_t>(n)]);
  }
  return dd_add(result, dd_mul(series, zinv));
}

}  // namespace

DD dd_lgamma(DD z) {
  if (z.hi >= 30.0) return lgamma_stirling(z);
  // Lift into the Stirling region: ln G(z) = ln G(z+m) - sum ln(z+i).
  int m = static_cast<int>(30.0 - z.hi) + 1;
  DD shift(0.0);
  for (int i = 0; i < m; ++i) {
    shift = dd_add(shift, dd_log(dd_add(z, static_cast<double>(i))));
  }
  return dd_sub(lgamma_stirling(dd_add(z, static_cast<double>(m))), shift);
}

}  // namespace mlcm
