#pragma once

// Points, lines, planes and quadrics in projective 3-space.
//
// Coordinate conventions:
//   line   l = (l12, l13, l14, l23, l24, l34), lij the 2x2 minors of a 2x4 span
//   plane  h = (h234, -h134, h124, -h123),    hijk the 3x3 minors of a 3x4 span
//   quadric X symmetric 4x4, stored as the 10 upper entries row by row
//
// Rows and columns of wedge2(X) follow the line order and those of wedge3(X)
// the plane order, with signs chosen so that
//   det(L X L^T) = l wedge2(X) l^T   and   det(H X H^T) = h wedge3(X) h^T.
// With these signs wedge3(X) is the adjugate of X.

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "tq/rational.hpp"
#include "tq/slp.hpp"

namespace tq {

/// Raised when a spanning matrix is rank deficient or a figure has all
/// coordinates zero.
class DegenerateFigure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Index of x_ij (0-based, any order) in the 10-entry upper storage.
constexpr int sym_index(int i, int j) {
  if (i > j) std::swap(i, j);
  return i * 4 - i * (i - 1) / 2 + (j - i);
}

/// Column pairs in line order: 12 13 14 23 24 34 (0-based).
inline constexpr std::array<std::array<int, 2>, 6> kLinePairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
/// Column triples in plane order: 234 134 124 123 (0-based), with the signs
/// that turn minors into plane coordinates.
inline constexpr std::array<std::array<int, 3>, 4> kPlaneTriples{{{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}};
inline constexpr std::array<int, 4> kPlaneSigns{1, -1, 1, -1};

template <class S>
struct ProjPoint {
  std::array<S, 4> p;
};

template <class S>
struct PluckerLine {
  std::array<S, 6> l;
};

template <class S>
struct ProjPlane {
  std::array<S, 4> h;
};

template <class S>
struct SymQuadric {
  std::array<S, 10> x;
  const S& operator()(int i, int j) const { return x[static_cast<std::size_t>(sym_index(i, j))]; }
  S& operator()(int i, int j) { return x[static_cast<std::size_t>(sym_index(i, j))]; }
};

template <class S>
struct Flag {
  ProjPoint<S> point;
  PluckerLine<S> line;
  ProjPlane<S> plane;
};

template <class S, std::size_t R, std::size_t C>
using Mat = std::array<std::array<S, C>, R>;

// ---------------------------------------------------------------------------
// Generic formulas. Instantiated with Rational, double and slp::Expr, so they
// use only +, -, * and slp::scaled.

template <class S>
S det2(const S& a, const S& b, const S& c, const S& d) {
  return a * d - b * c;
}

/// Minor of the symmetric X on rows r0,r1 and columns c0,c1.
template <class S>
S sym_minor2(const SymQuadric<S>& X, std::array<int, 2> r, std::array<int, 2> c) {
  return X(r[0], c[0]) * X(r[1], c[1]) - X(r[0], c[1]) * X(r[1], c[0]);
}

template <class S>
S sym_minor3(const SymQuadric<S>& X, std::array<int, 3> r, std::array<int, 3> c) {
  const S m0 = X(r[1], c[1]) * X(r[2], c[2]) - X(r[1], c[2]) * X(r[2], c[1]);
  const S m1 = X(r[1], c[0]) * X(r[2], c[2]) - X(r[1], c[2]) * X(r[2], c[0]);
  const S m2 = X(r[1], c[0]) * X(r[2], c[1]) - X(r[1], c[1]) * X(r[2], c[0]);
  return X(r[0], c[0]) * m0 - X(r[0], c[1]) * m1 + X(r[0], c[2]) * m2;
}

template <class S>
S det4(const SymQuadric<S>& X) {
  // Laplace expansion along the first two rows.
  S acc = sym_minor2<S>(X, {0, 1}, {0, 1}) * sym_minor2<S>(X, {2, 3}, {2, 3});
  acc = acc - sym_minor2<S>(X, {0, 1}, {0, 2}) * sym_minor2<S>(X, {2, 3}, {1, 3});
  acc = acc + sym_minor2<S>(X, {0, 1}, {0, 3}) * sym_minor2<S>(X, {2, 3}, {1, 2});
  acc = acc + sym_minor2<S>(X, {0, 1}, {1, 2}) * sym_minor2<S>(X, {2, 3}, {0, 3});
  acc = acc - sym_minor2<S>(X, {0, 1}, {1, 3}) * sym_minor2<S>(X, {2, 3}, {0, 2});
  acc = acc + sym_minor2<S>(X, {0, 1}, {2, 3}) * sym_minor2<S>(X, {2, 3}, {0, 1});
  return acc;
}

/// wedge2(X) as the 21 upper entries of the 6x6 matrix, row by row.
template <class S>
std::array<S, 21> wedge2_upper(const SymQuadric<S>& X) {
  std::array<S, 21> y;
  std::size_t k = 0;
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = a; b < 6; ++b) y[k++] = sym_minor2<S>(X, kLinePairs[a], kLinePairs[b]);
  return y;
}

/// wedge3(X) (the adjugate) as the 10 upper entries of the 4x4 matrix.
template <class S>
std::array<S, 10> wedge3_upper(const SymQuadric<S>& X) {
  std::array<S, 10> z;
  std::size_t k = 0;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a; b < 4; ++b) {
      const S m = sym_minor3<S>(X, kPlaneTriples[a], kPlaneTriples[b]);
      z[k++] = kPlaneSigns[a] * kPlaneSigns[b] > 0 ? m : S(-m);
    }
  return z;
}

/// v M v^T for a symmetric M given by its upper entries, M of size n.
template <class S, std::size_t N, std::size_t U>
S symmetric_form(const std::array<S, U>& upper, const std::array<S, N>& v) {
  static_assert(U == N * (N + 1) / 2);
  S diag = v[0] * v[0] * upper[0];
  S off = v[0] * v[1] * upper[1];
  std::size_t k = 0;
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = a; b < N; ++b, ++k) {
      if (k < 2) continue;
      if (a == b)
        diag = diag + v[a] * v[a] * upper[k];
      else
        off = off + v[a] * v[b] * upper[k];
    }
  return diag + slp::scaled(off, Rational(2));
}

template <class S>
S point_form(const SymQuadric<S>& X, const ProjPoint<S>& P) {
  return symmetric_form<S, 4, 10>(X.x, P.p);
}

/// l wedge2(X) l^T from precomputed wedge2 entries.
template <class S>
S line_form(const std::array<S, 21>& Y, const PluckerLine<S>& L) {
  return symmetric_form<S, 6, 21>(Y, L.l);
}

/// h wedge3(X) h^T from precomputed wedge3 entries.
template <class S>
S plane_form(const std::array<S, 10>& Z, const ProjPlane<S>& H) {
  return symmetric_form<S, 4, 10>(Z, H.h);
}

// ---------------------------------------------------------------------------
// Typed operations.

/// Six ordered 2x2 minors of the 2x4 matrix M.
template <class S>
PluckerLine<S> plucker_from_span(const Mat<S, 2, 4>& M) {
  PluckerLine<S> L;
  bool zero = true;
  for (std::size_t a = 0; a < 6; ++a) {
    const auto [i, j] = kLinePairs[a];
    L.l[a] = det2(M[0][i], M[0][j], M[1][i], M[1][j]);
    zero = zero && L.l[a] == S(0);
  }
  if (zero) throw DegenerateFigure("plucker_from_span: rows do not span a line");
  return L;
}

/// Plane coordinates (h234, -h134, h124, -h123) of the 3x4 matrix M.
template <class S>
ProjPlane<S> plane_from_span(const Mat<S, 3, 4>& M) {
  ProjPlane<S> H;
  bool zero = true;
  for (std::size_t a = 0; a < 4; ++a) {
    const auto& c = kPlaneTriples[a];
    const S m = M[0][c[0]] * det2(M[1][c[1]], M[1][c[2]], M[2][c[1]], M[2][c[2]]) -
                M[0][c[1]] * det2(M[1][c[0]], M[1][c[2]], M[2][c[0]], M[2][c[2]]) +
                M[0][c[2]] * det2(M[1][c[0]], M[1][c[1]], M[2][c[0]], M[2][c[1]]);
    H.h[a] = kPlaneSigns[a] > 0 ? m : S(-m);
    zero = zero && H.h[a] == S(0);
  }
  if (zero) throw DegenerateFigure("plane_from_span: rows do not span a plane");
  return H;
}

/// l12 l34 - l13 l24 + l14 l23.
template <class S>
S plucker_relation(const PluckerLine<S>& L) {
  return L.l[0] * L.l[5] - L.l[1] * L.l[4] + L.l[2] * L.l[3];
}

/// The lines tangent to the twisted cubic (1 : t : t^2 : t^3).
template <class S>
PluckerLine<S> twisted_cubic_tangent(const S& t) {
  const S t2 = t * t;
  return {{S(1), S(2) * t, S(3) * t2, t2, S(2) * t2 * t, t2 * t2}};
}

namespace detail {
// Unsigned plane minors h_{ijk} recovered from plane coordinates.
template <class S>
struct PlaneMinors {
  S h234, h134, h124, h123;
};
template <class S>
PlaneMinors<S> plane_minors(const ProjPlane<S>& H) {
  return {H.h[0], S(-H.h[1]), H.h[2], S(-H.h[3])};
}
}  // namespace detail

/// P in H: one residual.
template <class S>
std::vector<S> incidence_point_plane(const ProjPoint<S>& P, const ProjPlane<S>& H) {
  const auto m = detail::plane_minors(H);
  const auto& p = P.p;
  return {p[0] * m.h234 - p[1] * m.h134 + p[2] * m.h124 - p[3] * m.h123};
}

/// P on L: four residuals.
template <class S>
std::vector<S> incidence_point_line(const ProjPoint<S>& P, const PluckerLine<S>& L) {
  const auto& p = P.p;
  const S &l12 = L.l[0], &l13 = L.l[1], &l14 = L.l[2], &l23 = L.l[3], &l24 = L.l[4], &l34 = L.l[5];
  return {p[0] * l23 - p[1] * l13 + p[2] * l12, p[0] * l24 - p[1] * l14 + p[3] * l12,
          p[0] * l34 - p[2] * l14 + p[3] * l13, p[1] * l34 - p[2] * l24 + p[3] * l23};
}

/// L in H: four residuals.
template <class S>
std::vector<S> incidence_line_plane(const PluckerLine<S>& L, const ProjPlane<S>& H) {
  const auto m = detail::plane_minors(H);
  const S &l12 = L.l[0], &l13 = L.l[1], &l14 = L.l[2], &l23 = L.l[3], &l24 = L.l[4], &l34 = L.l[5];
  return {l12 * m.h134 - l13 * m.h124 + l14 * m.h123, l12 * m.h234 - l23 * m.h124 + l24 * m.h123,
          l13 * m.h234 - l23 * m.h134 + l34 * m.h123, l14 * m.h234 - l24 * m.h134 + l34 * m.h124};
}

/// The flag given by the first one, two and three rows of V.
template <class S>
Flag<S> flag_from_rows(const Mat<S, 4, 4>& V) {
  return {ProjPoint<S>{V[0]}, plucker_from_span<S>({V[0], V[1]}), plane_from_span<S>({V[0], V[1], V[2]})};
}

/// The nine incidence residuals of a flag followed by the Plücker relation.
template <class S>
std::vector<S> flag_residuals(const Flag<S>& f) {
  std::vector<S> out = incidence_point_plane(f.point, f.plane);
  for (auto&& v : incidence_point_line(f.point, f.line)) out.push_back(v);
  for (auto&& v : incidence_line_plane(f.line, f.plane)) out.push_back(v);
  out.push_back(plucker_relation(f.line));
  return out;
}

/// Full symmetric 6x6 second exterior power.
template <class S>
Mat<S, 6, 6> wedge2(const SymQuadric<S>& X) {
  const auto y = wedge2_upper(X);
  Mat<S, 6, 6> Y;
  std::size_t k = 0;
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = a; b < 6; ++b, ++k) Y[a][b] = Y[b][a] = y[k];
  return Y;
}

/// Full symmetric 4x4 third exterior power (equal to adj(X)).
template <class S>
Mat<S, 4, 4> wedge3(const SymQuadric<S>& X) {
  const auto z = wedge3_upper(X);
  Mat<S, 4, 4> Z;
  std::size_t k = 0;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a; b < 4; ++b, ++k) Z[a][b] = Z[b][a] = z[k];
  return Z;
}

/// A point (X, Y, Z) of P^9 x P^20 x P^9.
template <class S>
struct CompleteQuadricPoint {
  SymQuadric<S> x;
  Mat<S, 6, 6> y;
  Mat<S, 4, 4> z;

  /// y_{ij,kl} with 1-based column labels, e.g. y(1,2,3,4) = y_{12,34}.
  const S& y_at(int i, int j, int k, int l) const { return y[line_slot(i, j)][line_slot(k, l)]; }
  S& y_at(int i, int j, int k, int l) { return y[line_slot(i, j)][line_slot(k, l)]; }

  /// Unsigned 3x3 minor label z_{ijk,lmn} (1-based, increasing triples).
  S z_at(std::array<int, 3> rows, std::array<int, 3> cols) const {
    const std::size_t a = plane_slot(rows), b = plane_slot(cols);
    const S& v = z[a][b];
    return kPlaneSigns[a] * kPlaneSigns[b] > 0 ? v : S(-v);
  }

  static std::size_t line_slot(int i, int j) {
    for (std::size_t a = 0; a < 6; ++a)
      if (kLinePairs[a][0] == i - 1 && kLinePairs[a][1] == j - 1) return a;
    throw std::invalid_argument("bad line label");
  }
  static std::size_t plane_slot(std::array<int, 3> t) {
    for (std::size_t a = 0; a < 4; ++a)
      if (kPlaneTriples[a][0] == t[0] - 1 && kPlaneTriples[a][1] == t[1] - 1 && kPlaneTriples[a][2] == t[2] - 1)
        return a;
    throw std::invalid_argument("bad plane label");
  }
};

template <class S>
CompleteQuadricPoint<S> complete_quadric(const SymQuadric<S>& X) {
  return {X, wedge2(X), wedge3(X)};
}

/// One representative generator of the complete-quadrics ideal from each of
/// the degree classes (010), (020), (101), (011), (110), in that order.
template <class S>
std::array<S, 5> generator_check(const CompleteQuadricPoint<S>& q) {
  const auto y = [&](int i, int j, int k, int l) -> const S& { return q.y_at(i, j, k, l); };
  const auto z = [&](std::array<int, 3> r, std::array<int, 3> c) { return q.z_at(r, c); };
  const auto& x = q.x;
  return {
      y(1, 2, 3, 4) - y(1, 3, 2, 4) + y(1, 4, 2, 3),
      y(1, 2, 2, 4) * y(2, 4, 3, 4) - y(1, 3, 2, 4) * y(2, 4, 2, 4) + y(1, 4, 2, 4) * y(2, 3, 2, 4),
      x(0, 0) * z({1, 2, 3}, {2, 3, 4}) - x(0, 1) * z({1, 2, 3}, {1, 3, 4}) + x(0, 2) * z({1, 2, 3}, {1, 2, 4}) -
          x(0, 3) * z({1, 2, 3}, {1, 2, 3}),
      y(1, 2, 1, 3) * z({1, 2, 3}, {1, 3, 4}) - y(1, 3, 1, 3) * z({1, 2, 3}, {1, 2, 4}) +
          y(1, 3, 1, 4) * z({1, 2, 3}, {1, 2, 3}),
      x(0, 0) * y(1, 2, 2, 3) - x(0, 1) * y(1, 2, 1, 3) + x(0, 2) * y(1, 2, 1, 2),
  };
}

// ---------------------------------------------------------------------------
// Runtime figures.

enum class FigureKind { point, line, plane, quadric };

constexpr std::size_t coordinate_count(FigureKind k) {
  switch (k) {
    case FigureKind::point: return 4;
    case FigureKind::line: return 6;
    case FigureKind::plane: return 4;
    case FigureKind::quadric: return 10;
  }
  return 0;
}

std::string to_string(FigureKind k);
FigureKind figure_kind_from_string(const std::string& s);

/// A figure with rational coordinates. `exact()` records whether the data was
/// given as exact rationals (serialized back as "a/b" strings) or as floats.
class Figure {
 public:
  Figure(FigureKind kind, std::vector<Rational> coords, bool exact = true);

  static Figure from_doubles(FigureKind kind, const std::vector<double>& coords);
  static Figure point(const ProjPoint<Rational>& P) { return {FigureKind::point, {P.p.begin(), P.p.end()}}; }
  static Figure line(const PluckerLine<Rational>& L) { return {FigureKind::line, {L.l.begin(), L.l.end()}}; }
  static Figure plane(const ProjPlane<Rational>& H) { return {FigureKind::plane, {H.h.begin(), H.h.end()}}; }
  static Figure quadric(const SymQuadric<Rational>& U) { return {FigureKind::quadric, {U.x.begin(), U.x.end()}}; }

  FigureKind kind() const { return kind_; }
  const std::vector<Rational>& coords() const { return coords_; }
  bool exact() const { return exact_; }
  std::vector<double> to_double() const;

  /// Rescaled so that the largest-magnitude coordinate is 1 (exactly).
  Figure normalized() const;

  ProjPoint<Rational> as_point() const;
  PluckerLine<Rational> as_line() const;
  ProjPlane<Rational> as_plane() const;
  SymQuadric<Rational> as_quadric() const;

  /// |l12 l34 - l13 l24 + l14 l23| / |l|^2 for lines, 0 otherwise.
  double grassmannian_residual() const;

 private:
  FigureKind kind_;
  std::vector<Rational> coords_;
  bool exact_;
};

/// Warning text when a line is off the Grassmannian beyond `relative_tol`.
std::optional<std::string> grassmannian_warning(const Figure& f, double relative_tol = 1e-6);

/// Incidence polynomials for the pairs (point, plane), (point, line)
/// or (line, plane), in either argument order. Throws std::invalid_argument
/// for other pairs.
std::vector<Rational> incidence_residuals(const Figure& a, const Figure& b);

nlohmann::json to_json(const Figure& f);
Figure figure_from_json(const nlohmann::json& j);

}  // namespace tq
