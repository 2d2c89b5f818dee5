#include "doctest.h"

#include <cmath>

#include "test_support.hpp"
#include "tq/interval.hpp"

using namespace tq;

namespace {

Rational exact(double d) { return Rational(d); }

// Exact value of a quad, split into three doubles.
Rational exact(quad q) {
  const double a = static_cast<double>(q);
  const quad r1 = q - quad(a);
  const double b = static_cast<double>(r1);
  const quad r2 = r1 - quad(b);
  const double c = static_cast<double>(r2);
  REQUIRE(r2 == quad(c));
  return Rational(a) + Rational(b) + Rational(c);
}

template <class F>
bool member(const Rational& v, const BasicInterval<F>& a) {
  return abs(v - exact(a.mid)) <= exact(a.rad);
}

// A random interval with an awkward midpoint and radius.
Interval random_interval(Rng& rng) {
  const double scale = std::ldexp(1.0, static_cast<int>(rng.integer(-30, 30)));
  const double m = rng.gaussian() * scale;
  const double r = rng.uniform() < 0.2 ? 0.0 : std::abs(rng.gaussian()) * scale * std::ldexp(1.0, -static_cast<int>(rng.integer(0, 50)));
  return {m, r};
}

// Exact member: an endpoint or an interior point.
Rational random_member(Rng& rng, const Interval& a) {
  const Rational m = exact(a.mid), r = exact(a.rad);
  switch (rng.integer(0, 2)) {
    case 0: return m - r;
    case 1: return m + r;
    default: return m + r * Rational(rng.integer(-1000, 1000), 1000);
  }
}

}  // namespace

TEST_CASE("interval operations enclose exact results") {
  Rng rng(7);
  for (int k = 0; k < 100000; ++k) {
    const Interval a = random_interval(rng), b = random_interval(rng);
    const Rational x = random_member(rng, a), y = random_member(rng, b);
    REQUIRE(member(x + y, a + b));
    REQUIRE(member(x - y, a - b));
    REQUIRE(member(x * y, a * b));
    REQUIRE(member(-x, -a));
  }
}

TEST_CASE("quad intervals enclose exact results") {
  Rng rng(8);
  for (int k = 0; k < 20000; ++k) {
    const Interval a0 = random_interval(rng), b0 = random_interval(rng);
    const QInterval a(quad(a0.mid) + quad(a0.mid) * quad(0x1p-70), quad(a0.rad));
    const QInterval b(quad(b0.mid) - quad(b0.mid) * quad(0x1p-80), quad(b0.rad));
    const Rational ra = exact(a.rad), rb = exact(b.rad);
    const Rational x = exact(a.mid) + ra * Rational(rng.integer(-10, 10), 10);
    const Rational y = exact(b.mid) + rb * Rational(rng.integer(-10, 10), 10);
    REQUIRE(member(x + y, a + b));
    REQUIRE(member(x - y, a - b));
    REQUIRE(member(x * y, a * b));
  }
}

TEST_CASE("complex interval multiplication encloses exact products") {
  Rng rng(9);
  for (int k = 0; k < 20000; ++k) {
    const CInterval a(random_interval(rng), random_interval(rng));
    const CInterval b(random_interval(rng), random_interval(rng));
    const Rational ar = random_member(rng, a.re), ai = random_member(rng, a.im);
    const Rational br = random_member(rng, b.re), bi = random_member(rng, b.im);
    const CInterval p = a * b;
    REQUIRE(member(ar * br - ai * bi, p.re));
    REQUIRE(member(ar * bi + ai * br, p.im));
  }
}

TEST_CASE("rational enclosures") {
  Rng rng(10);
  for (int k = 0; k < 5000; ++k) {
    Rational q(rng.integer(-1000000, 1000000), rng.integer(1, 999999));
    q.canonicalize();
    CHECK(member(q, enclose(q)));
    const QInterval e = enclose_quad(q);
    CHECK(member(q, e));
    CHECK(static_cast<double>(e.rad) <= 1e-30 * std::max(1.0, std::abs(q.get_d())));
    CHECK(member(q, to_double(e)));
  }
  CHECK(enclose(Rational(3, 4)).rad == 0.0);
  CHECK(enclose(Rational(1, 3)).rad > 0.0);
  CHECK(enclose_quad(Rational(5, 8)).rad == quad(0));
}

TEST_CASE("containment, disjointness and hull") {
  const Interval a{1.0, 0.5}, b{1.1, 0.1}, c{3.0, 0.5};
  CHECK(strictly_inside(b, a));
  CHECK_FALSE(strictly_inside(a, b));
  CHECK_FALSE(strictly_inside(a, a));
  CHECK(disjoint(a, c));
  CHECK_FALSE(disjoint(a, b));
  const Interval h = hull(a, c);
  CHECK(h.mid - h.rad <= 0.5);
  CHECK(h.mid + h.rad >= 3.5);
  CHECK(Interval{0.0, 0.0}.contains_zero());
  CHECK_FALSE(Interval{1e-300, 1e-301}.contains_zero());

  const CInterval z(std::complex<double>(1.0, 2.0), 0.25);
  CHECK(disjoint(z, conj(z)));
  CHECK_FALSE(disjoint(z, z));
  const CInterval w = hull(z, conj(z));
  CHECK(w.im.contains_zero());
}
