#pragma once

// Tangency conditions on a quadric X:
//   point   P X P^T                       degree 1
//   line    l wedge2(X) l^T               degree 2
//   plane   h wedge3(X) h^T               degree 3
//   quadric disc_t det(U + t X)           degree 12 (the Hurwitz form)

#include <array>
#include <span>
#include <utility>

#include "tq/exact.hpp"
#include "tq/geometry.hpp"
#include "tq/poly.hpp"
#include "tq/slp.hpp"

namespace tq {

/// Coefficients c0..c4 of det(U + t X) in t. c0 = det U and c4 = det X are
/// taken directly; c1, c2, c3 come from the values at t = +-1, +-2.
template <class S>
std::array<S, 5> pencil_coefficients(const SymQuadric<S>& U, const SymQuadric<S>& X) {
  const auto pencil_det = [&](long t) {
    SymQuadric<S> W;
    for (std::size_t i = 0; i < 10; ++i) W.x[i] = U.x[i] + slp::scaled(X.x[i], Rational(t));
    return det4(W);
  };
  const S c0 = det4(U);
  const S c4 = det4(X);
  const S f1 = pencil_det(1), fm1 = pencil_det(-1), f2 = pencil_det(2), fm2 = pencil_det(-2);
  const S c2 = slp::scaled(f1 + fm1, Rational(1, 2)) - c0 - c4;
  const S odd1 = slp::scaled(f1 - fm1, Rational(1, 2));
  const S odd2 = slp::scaled(f2 - fm2, Rational(1, 2));
  const S c3 = slp::scaled(odd2 - slp::scaled(odd1, Rational(2)), Rational(1, 6));
  const S c1 = odd1 - c3;
  return {c0, c1, c2, c3, c4};
}

/// Discriminant of c0 + c1 t + c2 t^2 + c3 t^3 + c4 t^4 (16 monomials,
/// isobaric of weight 12).
template <class S>
S quartic_discriminant(const std::array<S, 5>& c) {
  const S &e = c[0], &d = c[1], &cc = c[2], &b = c[3], &a = c[4];
  using slp::scaled;
  const S a2 = a * a, b2 = b * b, c2 = cc * cc, d2 = d * d, e2 = e * e;
  S acc = scaled(a2 * a * e2 * e, Rational(256));
  acc = acc - scaled(a2 * b * d * e2, Rational(192));
  acc = acc - scaled(a2 * c2 * e2, Rational(128));
  acc = acc + scaled(a2 * cc * d2 * e, Rational(144));
  acc = acc - scaled(a2 * d2 * d2, Rational(27));
  acc = acc + scaled(a * b2 * cc * e2, Rational(144));
  acc = acc - scaled(a * b2 * d2 * e, Rational(6));
  acc = acc - scaled(a * b * c2 * d * e, Rational(80));
  acc = acc + scaled(a * b * cc * d2 * d, Rational(18));
  acc = acc + scaled(a * c2 * c2 * e, Rational(16));
  acc = acc - scaled(a * c2 * cc * d2, Rational(4));
  acc = acc - scaled(b2 * b2 * e2, Rational(27));
  acc = acc + scaled(b2 * b * cc * d * e, Rational(18));
  acc = acc - scaled(b2 * b * d2 * d, Rational(4));
  acc = acc - scaled(b2 * c2 * cc * e, Rational(4));
  acc = acc + b2 * c2 * d2;
  return acc;
}

/// Sigma(U, X): tangency of the quadrics U and X.
template <class S>
S hurwitz_form(const SymQuadric<S>& U, const SymQuadric<S>& X) {
  return quartic_discriminant(pencil_coefficients(U, X));
}

/// Condition value for a figure of the given kind. `params` holds the figure
/// coordinates.
template <class S>
S condition_value(FigureKind kind, const SymQuadric<S>& X, std::span<const S> params) {
  switch (kind) {
    case FigureKind::point: {
      ProjPoint<S> P;
      std::copy(params.begin(), params.end(), P.p.begin());
      return point_form(X, P);
    }
    case FigureKind::line: {
      PluckerLine<S> L;
      std::copy(params.begin(), params.end(), L.l.begin());
      return line_form(wedge2_upper(X), L);
    }
    case FigureKind::plane: {
      ProjPlane<S> H;
      std::copy(params.begin(), params.end(), H.h.begin());
      return plane_form(wedge3_upper(X), H);
    }
    case FigureKind::quadric: {
      SymQuadric<S> U;
      std::copy(params.begin(), params.end(), U.x.begin());
      return hurwitz_form(U, X);
    }
  }
  throw std::logic_error("unreachable figure kind");
}

constexpr int condition_degree(FigureKind kind) {
  switch (kind) {
    case FigureKind::point: return 1;
    case FigureKind::line: return 2;
    case FigureKind::plane: return 3;
    case FigureKind::quadric: return 12;
  }
  return 0;
}

/// A single tangency condition as a straight-line program. Tape inputs are the
/// ten entries of X followed by the figure coordinates.
class ConditionProgram {
 public:
  explicit ConditionProgram(Figure figure);

  int degree() const { return condition_degree(figure_.kind()); }
  const Figure& figure() const { return figure_; }
  const slp::Tape& tape() const { return tape_; }

  template <class T>
  T evaluate(std::span<const T, 10> x) const {
    const auto in = inputs<T>(x);
    T out[1];
    tape_.evaluate<T>(in, out);
    return out[0];
  }

  /// Value and the ten partial derivatives in the entries of X.
  template <class T>
  std::pair<T, std::array<T, 10>> gradient(std::span<const T, 10> x) const {
    const auto in = inputs<T>(x);
    std::vector<T> seeds(in.size() * 10, slp::ScalarTraits<T>::from_constant(Rational(0), 0.0));
    for (std::size_t i = 0; i < 10; ++i) seeds[i * 10 + i] = slp::ScalarTraits<T>::from_constant(Rational(1), 1.0);
    T value[1];
    std::array<T, 10> grad;
    tape_.forward<T>(in, seeds, 10, value, grad);
    return {value[0], grad};
  }

 private:
  template <class T>
  std::vector<T> inputs(std::span<const T, 10> x) const {
    std::vector<T> in(x.begin(), x.end());
    for (const auto& q : figure_.coords()) in.push_back(slp::ScalarTraits<T>::from_constant(q, q.get_d()));
    return in;
  }

  Figure figure_;
  slp::Tape tape_;
};

ConditionProgram point_condition(const ProjPoint<Rational>& P);
ConditionProgram line_condition(const PluckerLine<Rational>& L);
ConditionProgram plane_condition(const ProjPlane<Rational>& H);
ConditionProgram quadric_condition(const SymQuadric<Rational>& U);

/// Exact coefficients of det(U + t X).
std::array<Rational, 5> coefficients_of_pencil(const SymQuadric<Rational>& U, const SymQuadric<Rational>& X);

/// The quadrics U_eps = V^-1 diag(eps^3, eps^2, eps, 1) V^-T degenerating to
/// the flag spanned by the first three rows of V.
struct DegenerationFamily {
  Mat<Rational, 4, 4> V;
  Flag<Rational> flag;
  SymQuadric<PolyQ> quadric;  // entries are polynomials in eps

  /// Throws std::domain_error when V is singular.
  explicit DegenerationFamily(const Mat<Rational, 4, 4>& V);

  SymQuadric<Rational> at(const Rational& eps) const;
};

struct LeadingForm {
  int order = -1;            ///< eps-adic order of Sigma(U_eps, X); -1 if identically zero
  Rational coefficient;      ///< lowest nonzero coefficient
  PolyQ sigma;               ///< Sigma(U_eps, X) in eps
  std::array<int, 5> pencil_orders{};  ///< eps-adic orders of c0..c4
};

/// Sigma(U_eps, X) computed exactly as a polynomial in eps.
LeadingForm leading_form(const Mat<Rational, 4, 4>& V, const SymQuadric<Rational>& X);

/// det(V)^-12 (P X P^T)^2 det(L X L^T)^2 det(H X H^T)^2 with L, H the first
/// two and three rows of V, by direct matrix products.
Rational flag_factor_product(const Mat<Rational, 4, 4>& V, const SymQuadric<Rational>& X);

}  // namespace tq
