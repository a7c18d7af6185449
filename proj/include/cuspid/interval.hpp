#pragma once

// Self-validated interval arithmetic over doubles.
//
// Rounding strategy: operations are computed in the default round-to-nearest
// mode and endpoints are nudged outward by one ulp only when the rounding
// error is provably nonzero. The error sign is recovered exactly (two-sum for
// +/-, fused multiply-add residuals for *, / and sqrt), so exact operations
// keep exact endpoints: [1,2]+[3,4] gives [4,6], not a widened box. Since
// round-to-nearest is within half an ulp of the true result, a single
// nextafter step always restores a rigorous bound. No rounding-mode state is
// touched, so every operation is a pure function and thread-safe.

#include <algorithm>
#include <cmath>
#include <limits>

#include "cuspid/errors.hpp"

namespace cuspid {

namespace rnd {

inline double next_down(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double next_up(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}

inline void check_finite(double x) {
  if (!std::isfinite(x)) throw OverflowToInfinity();
}

// exact rounding error of s = fl(a+b) (Knuth two-sum); a+b == s + err
inline double two_sum_err(double a, double b, double s) {
  double bv = s - a;
  double av = s - bv;
  return (a - av) + (b - bv);
}

inline double add_down(double a, double b) {
  double s = a + b;
  check_finite(s);
  double e = two_sum_err(a, b, s);
  return e < 0 ? next_down(s) : s;
}
inline double add_up(double a, double b) {
  double s = a + b;
  check_finite(s);
  double e = two_sum_err(a, b, s);
  return e > 0 ? next_up(s) : s;
}
inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

// The fma residual a*b - p is exact when p is normal; outside that range we
// give up on exactness detection and nudge unconditionally (still rigorous,
// since round-to-nearest is correctly rounded into the subnormal range too).
inline double mul_down(double a, double b) {
  double p = a * b;
  check_finite(p);
  if (a == 0.0 || b == 0.0) return 0.0;
  if (std::fpclassify(p) != FP_NORMAL) return next_down(p);
  double e = std::fma(a, b, -p);
  return e < 0 ? next_down(p) : p;
}
inline double mul_up(double a, double b) {
  double p = a * b;
  check_finite(p);
  if (a == 0.0 || b == 0.0) return 0.0;
  if (std::fpclassify(p) != FP_NORMAL) return next_up(p);
  double e = std::fma(a, b, -p);
  return e > 0 ? next_up(p) : p;
}

inline double div_down(double a, double b) {
  double q = a / b;
  check_finite(q);
  if (a == 0.0) return 0.0;
  if (std::fpclassify(q) != FP_NORMAL || std::fpclassify(a) != FP_NORMAL) return next_down(q);
  double r = std::fma(q, b, -a);  // q*b - a, exact
  // true - q = -r/b
  double sign = (r == 0.0) ? 0.0 : ((r < 0) == (b > 0) ? 1.0 : -1.0);
  return sign < 0 ? next_down(q) : q;
}
inline double div_up(double a, double b) {
  double q = a / b;
  check_finite(q);
  if (a == 0.0) return 0.0;
  if (std::fpclassify(q) != FP_NORMAL || std::fpclassify(a) != FP_NORMAL) return next_up(q);
  double r = std::fma(q, b, -a);
  double sign = (r == 0.0) ? 0.0 : ((r < 0) == (b > 0) ? 1.0 : -1.0);
  return sign > 0 ? next_up(q) : q;
}

inline double sqrt_down(double x) {
  double r = std::sqrt(x);
  check_finite(r);
  if (x == 0.0) return 0.0;
  if (std::fpclassify(r) != FP_NORMAL || std::fpclassify(x) != FP_NORMAL) return next_down(r);
  double e = std::fma(r, r, -x);  // r^2 - x, exact
  return e > 0 ? next_down(r) : r;
}
inline double sqrt_up(double x) {
  double r = std::sqrt(x);
  check_finite(r);
  if (x == 0.0) return 0.0;
  if (std::fpclassify(r) != FP_NORMAL || std::fpclassify(x) != FP_NORMAL) return next_up(r);
  double e = std::fma(r, r, -x);
  return e < 0 ? next_up(r) : r;
}

}  // namespace rnd

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  explicit Interval(double point) : lo(point), hi(point) { rnd::check_finite(point); }
  Interval(double l, double h) : lo(l), hi(h) {
    rnd::check_finite(l);
    rnd::check_finite(h);
    if (!(l <= h)) throw Error("invalid interval endpoints");
  }

  // [mid - rad, mid + rad] with outward rounding
  static Interval pm(double mid, double rad) {
    return Interval(rnd::sub_down(mid, rad), rnd::add_up(mid, rad));
  }

  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
  bool strictly_positive() const { return lo > 0.0; }
  bool strictly_negative() const { return hi < 0.0; }

  double mid() const {
    double m = 0.5 * (lo + hi);
    if (!std::isfinite(m)) m = 0.5 * lo + 0.5 * hi;
    return std::clamp(m, lo, hi);
  }
  // rigorous upper bound on the radius around mid()
  double rad() const {
    double m = mid();
    return std::max(rnd::sub_up(hi, m), rnd::sub_up(m, lo));
  }
  double width() const { return rnd::sub_up(hi, lo); }
};

inline Interval operator-(const Interval& a) { return Interval(-a.hi, -a.lo); }

inline Interval operator+(const Interval& a, const Interval& b) {
  return Interval(rnd::add_down(a.lo, b.lo), rnd::add_up(a.hi, b.hi));
}
inline Interval operator-(const Interval& a, const Interval& b) {
  return Interval(rnd::sub_down(a.lo, b.hi), rnd::sub_up(a.hi, b.lo));
}
inline Interval operator*(const Interval& a, const Interval& b) {
  double lo = std::min(std::min(rnd::mul_down(a.lo, b.lo), rnd::mul_down(a.lo, b.hi)),
                       std::min(rnd::mul_down(a.hi, b.lo), rnd::mul_down(a.hi, b.hi)));
  double hi = std::max(std::max(rnd::mul_up(a.lo, b.lo), rnd::mul_up(a.lo, b.hi)),
                       std::max(rnd::mul_up(a.hi, b.lo), rnd::mul_up(a.hi, b.hi)));
  return Interval(lo, hi);
}
inline Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw DivisionByZeroInterval();
  double lo = std::min(std::min(rnd::div_down(a.lo, b.lo), rnd::div_down(a.lo, b.hi)),
                       std::min(rnd::div_down(a.hi, b.lo), rnd::div_down(a.hi, b.hi)));
  double hi = std::max(std::max(rnd::div_up(a.lo, b.lo), rnd::div_up(a.lo, b.hi)),
                       std::max(rnd::div_up(a.hi, b.lo), rnd::div_up(a.hi, b.hi)));
  return Interval(lo, hi);
}

inline Interval operator+(const Interval& a, double b) { return a + Interval(b); }
inline Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
inline Interval operator-(const Interval& a, double b) { return a - Interval(b); }
inline Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
inline Interval operator*(const Interval& a, double b) { return a * Interval(b); }
inline Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
inline Interval operator/(const Interval& a, double b) { return a / Interval(b); }
inline Interval operator/(double a, const Interval& b) { return Interval(a) / b; }

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }

// largest absolute value over the interval (exact)
inline double mag(const Interval& a) { return std::max(std::fabs(a.lo), std::fabs(a.hi)); }
// smallest absolute value over the interval (exact)
inline double mig(const Interval& a) {
  if (a.contains_zero()) return 0.0;
  return std::min(std::fabs(a.lo), std::fabs(a.hi));
}

// tight square: never negative even when the interval straddles zero
inline Interval sqr(const Interval& a) {
  double lo_m = mig(a), hi_m = mag(a);
  return Interval(rnd::mul_down(lo_m, lo_m), rnd::mul_up(hi_m, hi_m));
}

inline Interval hull(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

// integer power; even exponents routed through sqr to stay tight across zero
inline Interval pow_int(const Interval& a, int k) {
  if (k < 0) return Interval(1.0) / pow_int(a, -k);
  if (k == 0) return Interval(1.0);
  if (k == 1) return a;
  if (k % 2 == 0) {
    Interval s = sqr(a);
    Interval r = s;
    for (int i = 2; i <= k / 2; ++i) r = r * s;
    return r;
  }
  return a * pow_int(a, k - 1);
}

inline Interval sqrt_iv(const Interval& a) {
  if (a.lo < 0.0) throw DomainError("sqrt of an interval with negative part");
  return Interval(rnd::sqrt_down(a.lo), rnd::sqrt_up(a.hi));
}

// ---------------------------------------------------------------------------
// scalar shims: allow the same templated expression code to run on doubles

inline double mag(double a) { return std::fabs(a); }
inline double sqr(double a) { return a * a; }
inline double pow_int(double a, int k) {
  if (k < 0) return 1.0 / pow_int(a, -k);
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= a;
  return r;
}

// rectangular complex enclosure
struct ComplexInterval {
  Interval re, im;

  ComplexInterval() = default;
  ComplexInterval(Interval r, Interval i) : re(r), im(i) {}
  explicit ComplexInterval(double r, double i = 0.0) : re(r), im(i) {}

  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
};

inline ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re + b.re, a.im + b.im};
}
inline ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re - b.re, a.im - b.im};
}
inline ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline ComplexInterval& operator+=(ComplexInterval& a, const ComplexInterval& b) { return a = a + b; }

// rigorous upper bound on |z| over the enclosure
inline double mod_up(const ComplexInterval& a) {
  Interval s = sqr(a.re) + sqr(a.im);
  return rnd::sqrt_up(s.hi);
}
// rigorous lower bound on |z| over the enclosure
inline double mod_down(const ComplexInterval& a) {
  Interval s = sqr(a.re) + sqr(a.im);
  return rnd::sqrt_down(s.lo);
}

}  // namespace cuspid
