#pragma once

// Double-double ("dd") arithmetic: an unevaluated sum hi + lo of two doubles
// carrying ~31-32 significant decimal digits. Used by the Mittag-Leffler
// series, whose alternating terms cancel by factors up to ~e^43; plain double
// cannot meet the accuracy targets there. Only the operations the series
// recurrence needs are provided. All error-free transformations require that
// the compiler does not contract a*b +/- c into fma (see -ffp-contract=off in
// the top-level build); explicit std::fma is used where fusion is wanted.

#include <cmath>

namespace mlcm {

struct DD {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DD() = default;
  constexpr DD(double h, double l) : hi(h), lo(l) {}
  constexpr explicit DD(double h) : hi(h), lo(0.0) {}

  explicit operator double() const { return hi + lo; }
};

namespace dd_detail {

// Error-free sum: a + b = s + err exactly, any magnitudes.
inline DD two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

// Error-free sum assuming |a| >= |b|.
inline DD quick_two_sum(double a, double b) {
  double s = a + b;
  double err = b - (s - a);
  return {s, err};
}

// Error-free product via fused multiply-add.
inline DD two_prod(double a, double b) {
  double p = a * b;
  double err = std::fma(a, b, -p);
  return {p, err};
}

}  // namespace dd_detail

inline DD dd_add(DD a, DD b) {
  DD s = dd_detail::two_sum(a.hi, b.hi);
  DD t = dd_detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = dd_detail::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline DD dd_add(DD a, double b) {
  DD s = dd_detail::two_sum(a.hi, b);
  s.lo += a.lo;
  return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

inline DD dd_sub(DD a, DD b) { return dd_add(a, dd_neg(b)); }
inline DD dd_sub(DD a, double b) { return dd_add(a, -b); }
inline DD dd_sub(double a, DD b) { return dd_add(dd_neg(b), a); }

inline DD dd_mul(DD a, DD b) {
  DD p = dd_detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline DD dd_mul(DD a, double b) {
  DD p = dd_detail::two_prod(a.hi, b);
  p.lo += a.lo * b;
  return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline DD dd_div(DD a, DD b) {
  double q1 = a.hi / b.hi;
  DD r = dd_sub(a, dd_mul(b, q1));
  double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul(b, q2));
  double q3 = r.hi / b.hi;
  DD q = dd_detail::quick_two_sum(q1, q2);
  return dd_add(q, q3);
}

inline DD dd_div(DD a, double b) { return dd_div(a, DD(b)); }

inline DD dd_ldexp(DD a, int n) {
  return {std::ldexp(a.hi, n), std::ldexp(a.lo, n)};
}

inline double dd_abs_hi(DD a) { return std::fabs(a.hi); }

// Frequently used constants, split to double-double precision.
inline constexpr DD kDDLn2{0.6931471805599453, 2.3190468138462996e-17};
inline constexpr DD kDDLnSqrt2Pi{0.9189385332046728, -3.8782941580672414e-17};
inline constexpr DD kDDPi{3.141592653589793, 1.2246467991473532e-16};

// e^a. |a.hi| must stay below ~709 (caller's responsibility; the series
// recurrence only feeds it log-gamma differences of moderate size).
DD dd_exp(DD a);

// ln a for a.hi > 0.
DD dd_log(DD a);

// ln Gamma(z) for z.hi > 0: Stirling for z >= 30, argument lift below.
DD dd_lgamma(DD z);

}  // namespace mlcm
