#pragma once

// Midpoint-radius interval arithmetic with outward rounding by inflation.
// After every floating operation the radius is pushed up by the rounding
// error bound of the midpoint, so the exact result of an operation on members
// always lies in the result.
//
// Templated on the float type: double, and __float128 for the extended tier.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "tq/rational.hpp"
#include "tq/slp.hpp"

namespace tq {

using quad = __float128;

namespace iv {

template <class F>
struct FloatTraits;

template <>
struct FloatTraits<double> {
  static constexpr double u = 0x1p-53;
  static constexpr double eta = std::numeric_limits<double>::denorm_min();
};

template <>
struct FloatTraits<quad> {
  // 2^-113; eta is far above the quad underflow unit, which is all a bound needs.
  static constexpr double u_d = 0x1p-113;
  static inline const quad u = quad(u_d);
  static inline const quad eta = quad(std::numeric_limits<double>::denorm_min());
};

inline constexpr double u = FloatTraits<double>::u;
inline constexpr double eta = FloatTraits<double>::eta;

template <class F>
inline F fabs(F x) {
  return x < F(0) ? -x : x;
}

// Upper bound for a nonnegative quantity computed with a few roundings.
template <class F>
inline F up(F x) {
  return x * (F(1) + F(4) * FloatTraits<F>::u) + FloatTraits<F>::eta;
}

inline double up(double x) { return up<double>(x); }

// Lower bound for a nonnegative quantity computed with a few roundings.
template <class F>
inline F down(F x) {
  return x * (F(1) - F(4) * FloatTraits<F>::u) - FloatTraits<F>::eta;
}

}  // namespace iv

template <class F>
struct BasicInterval {
  F mid = F(0);
  F rad = F(0);

  BasicInterval() = default;
  BasicInterval(F m) : mid(m) {}
  BasicInterval(F m, F r) : mid(m), rad(r) {}
  template <class G>
    requires(!std::is_same_v<F, G> && std::is_same_v<G, int>)
  BasicInterval(G m) : mid(F(m)) {}

  F lower_bound() const { return mid - iv::up(rad); }  // not rounding-exact; for display
  F upper_bound() const { return mid + iv::up(rad); }

  bool contains_zero() const { return iv::fabs(mid) <= rad; }
};

using Interval = BasicInterval<double>;
using QInterval = BasicInterval<quad>;

template <class F>
inline BasicInterval<F> operator+(const BasicInterval<F>& a, const BasicInterval<F>& b) {
  const F m = a.mid + b.mid;
  return {m, iv::up(a.rad + b.rad + iv::FloatTraits<F>::u * iv::fabs(m))};
}

template <class F>
inline BasicInterval<F> operator-(const BasicInterval<F>& a, const BasicInterval<F>& b) {
  const F m = a.mid - b.mid;
  return {m, iv::up(a.rad + b.rad + iv::FloatTraits<F>::u * iv::fabs(m))};
}

template <class F>
inline BasicInterval<F> operator-(const BasicInterval<F>& a) {
  return {-a.mid, a.rad};
}

template <class F>
inline BasicInterval<F> operator*(const BasicInterval<F>& a, const BasicInterval<F>& b) {
  const F m = a.mid * b.mid;
  const F r = iv::fabs(a.mid) * b.rad + a.rad * iv::fabs(b.mid) + a.rad * b.rad + iv::FloatTraits<F>::u * iv::fabs(m);
  return {m, iv::up(r)};
}

/// Encloses an exact rational. `d` must be a nearest or truncated double of q.
inline Interval enclose(const Rational& q, double d) {
  if (q == d) return {d, 0.0};
  return {d, iv::up(2.0 * iv::u * std::abs(d))};
}

inline Interval enclose(const Rational& q) { return enclose(q, q.get_d()); }

/// Quad enclosure of a rational from a two-double split.
QInterval enclose_quad(const Rational& q);

/// Nearest-ish quad value of a rational (the midpoint of enclose_quad).
inline quad to_quad(const Rational& q) { return enclose_quad(q).mid; }

/// Double interval containing a quad interval.
inline Interval to_double(const QInterval& a) {
  const double m = static_cast<double>(a.mid);
  const quad shift = iv::fabs(a.mid - quad(m));
  return {m, iv::up(static_cast<double>(iv::up(shift + a.rad)))};
}

/// True when every point of a is strictly inside b (rounding-safe).
template <class F>
inline bool strictly_inside(const BasicInterval<F>& a, const BasicInterval<F>& b) {
  const F shift = iv::up(iv::fabs(a.mid - b.mid));
  return iv::up(shift + a.rad) < iv::down(b.rad);
}

template <class F>
inline bool disjoint(const BasicInterval<F>& a, const BasicInterval<F>& b) {
  return iv::down(iv::fabs(a.mid - b.mid)) > iv::up(a.rad + b.rad);
}

/// Enclosure of the union (conservative).
template <class F>
inline BasicInterval<F> hull(const BasicInterval<F>& a, const BasicInterval<F>& b) {
  const F lo = std::min(a.mid - a.rad, b.mid - b.rad);
  const F hi = std::max(a.mid + a.rad, b.mid + b.rad);
  const F m = F(0.5) * (lo + hi);
  return {m, iv::up(std::max(m - lo, hi - m) + iv::FloatTraits<F>::u * (iv::fabs(lo) + iv::fabs(hi)))};
}

/// Intersection, or nothing when the intervals are disjoint.
template <class F>
inline bool intersect(const BasicInterval<F>& a, const BasicInterval<F>& b, BasicInterval<F>& out) {
  if (disjoint(a, b)) return false;
  const F lo = std::max(a.mid - iv::up(a.rad), b.mid - iv::up(b.rad));
  const F hi = std::min(a.mid + iv::up(a.rad), b.mid + iv::up(b.rad));
  if (lo > hi) {
    out = {F(0.5) * (lo + hi), F(0)};
    return true;
  }
  const F m = F(0.5) * (lo + hi);
  out = {m, iv::up(std::max(m - lo, hi - m) + iv::FloatTraits<F>::u * (iv::fabs(lo) + iv::fabs(hi)))};
  return true;
}

/// Complex interval as a rectangle re + i im.
template <class F>
struct BasicCInterval {
  BasicInterval<F> re;
  BasicInterval<F> im;

  BasicCInterval() = default;
  BasicCInterval(F r) : re(r) {}
  BasicCInterval(const BasicInterval<F>& r, const BasicInterval<F>& i = BasicInterval<F>()) : re(r), im(i) {}
  BasicCInterval(std::complex<double> z, double rad = 0.0) : re(F(z.real()), F(rad)), im(F(z.imag()), F(rad)) {}

  std::complex<double> mid() const { return {static_cast<double>(re.mid), static_cast<double>(im.mid)}; }
  F max_rad() const { return std::max(re.rad, im.rad); }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
};

using CInterval = BasicCInterval<double>;
using QCInterval = BasicCInterval<quad>;

template <class F>
inline BasicCInterval<F> operator+(const BasicCInterval<F>& a, const BasicCInterval<F>& b) {
  return {a.re + b.re, a.im + b.im};
}
template <class F>
inline BasicCInterval<F> operator-(const BasicCInterval<F>& a, const BasicCInterval<F>& b) {
  return {a.re - b.re, a.im - b.im};
}
template <class F>
inline BasicCInterval<F> operator-(const BasicCInterval<F>& a) {
  return {-a.re, -a.im};
}
template <class F>
inline BasicCInterval<F> operator*(const BasicCInterval<F>& a, const BasicCInterval<F>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

template <class F>
inline BasicCInterval<F> conj(const BasicCInterval<F>& a) {
  return {a.re, -a.im};
}

template <class F>
inline bool strictly_inside(const BasicCInterval<F>& a, const BasicCInterval<F>& b) {
  return strictly_inside(a.re, b.re) && strictly_inside(a.im, b.im);
}

template <class F>
inline bool disjoint(const BasicCInterval<F>& a, const BasicCInterval<F>& b) {
  return disjoint(a.re, b.re) || disjoint(a.im, b.im);
}

template <class F>
inline BasicCInterval<F> hull(const BasicCInterval<F>& a, const BasicCInterval<F>& b) {
  return {hull(a.re, b.re), hull(a.im, b.im)};
}

inline CInterval to_double(const QCInterval& a) { return {to_double(a.re), to_double(a.im)}; }

namespace slp {

template <>
struct ScalarTraits<Interval> {
  static Interval from_constant(const Rational& q, double d) { return enclose(q, d); }
  static bool is_zero(const Interval& v) { return v.mid == 0.0 && v.rad == 0.0; }
};

template <>
struct ScalarTraits<CInterval> {
  static CInterval from_constant(const Rational& q, double d) { return CInterval(enclose(q, d)); }
  static bool is_zero(const CInterval& v) {
    return ScalarTraits<Interval>::is_zero(v.re) && ScalarTraits<Interval>::is_zero(v.im);
  }
};

template <>
struct ScalarTraits<QCInterval> {
  static QCInterval from_constant(const Rational& q, double d) {
    if (q == d) return QCInterval(QInterval(quad(d)));
    return QCInterval(enclose_quad(q));
  }
  static bool is_zero(const QCInterval& v) {
    return v.re.mid == 0 && v.re.rad == 0 && v.im.mid == 0 && v.im.rad == 0;
  }
};

template <>
struct ScalarTraits<std::complex<quad>> {
  static std::complex<quad> from_constant(const Rational& q, double d) {
    if (q == d) return {quad(d), quad(0)};
    return {to_quad(q), quad(0)};
  }
  static bool is_zero(const std::complex<quad>& v) { return v.real() == 0 && v.imag() == 0; }
};

}  // namespace slp

}  // namespace tq
