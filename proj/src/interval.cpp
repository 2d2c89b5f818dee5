#include "tq/interval.hpp"

namespace tq {

QInterval enclose_quad(const Rational& q) {
  const double d1 = q.get_d();
  const Rational r = q - Rational(d1);
  if (r == 0) return {quad(d1), quad(0)};
  const double d2 = r.get_d();
  const quad m = quad(d1) + quad(d2);
  // Rounding of the quad sum plus the truncation of d2.
  quad err = iv::FloatTraits<quad>::u * iv::fabs(m);
  if (r != d2) err = err + quad(0x1p-52) * iv::fabs(quad(d2));
  return {m, iv::up(err)};
}

}  // namespace tq
