#include "doctest.h"

#include "test_support.hpp"
#include "tq/exact.hpp"
#include "tq/geometry.hpp"

using namespace tq;
using tq::testing::random_quadric;
using tq::testing::random_rational;
using tq::testing::random_rows;

namespace {

MatrixQ as_matrix(const SymQuadric<Rational>& X) {
  MatrixQ m(4, std::vector<Rational>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = X(i, j);
  return m;
}

template <std::size_t R>
MatrixQ as_matrix(const Mat<Rational, R, 4>& A) {
  MatrixQ m;
  for (const auto& row : A) m.emplace_back(row.begin(), row.end());
  return m;
}

// det(A X A^T) straight from the definition.
template <std::size_t R>
Rational restricted_det(const Mat<Rational, R, 4>& A, const SymQuadric<Rational>& X) {
  const MatrixQ a = as_matrix(A);
  return determinant(multiply(multiply(a, as_matrix(X)), transpose(a)));
}

Mat<Rational, 4, 4> random_invertible(Rng& rng) {
  for (;;) {
    auto V = random_rows<4>(rng);
    if (sgn(determinant(as_matrix(V))) != 0) return V;
  }
}

}  // namespace

TEST_CASE("plucker_from_span on coordinate lines and twisted cubic tangents") {
  const Mat<Rational, 2, 4> e12{{{1, 0, 0, 0}, {0, 1, 0, 0}}};
  CHECK(plucker_from_span(e12).l == std::array<Rational, 6>{1, 0, 0, 0, 0, 0});
  const Mat<Rational, 2, 4> e34{{{0, 0, 1, 0}, {0, 0, 0, 1}}};
  CHECK(plucker_from_span(e34).l == std::array<Rational, 6>{0, 0, 0, 0, 0, 1});

  for (long k = -3; k <= 3; ++k) {
    Rational t(k, 2);
    t.canonicalize();
    const Mat<Rational, 2, 4> tangent{{{1, t, t * t, t * t * t}, {0, 1, 2 * t, 3 * t * t}}};
    CHECK(plucker_from_span(tangent).l == twisted_cubic_tangent(t).l);
  }
}

TEST_CASE("plucker_from_span rejects rank-deficient spans") {
  const Mat<Rational, 2, 4> M{{{1, 2, 3, 4}, {2, 4, 6, 8}}};
  CHECK_THROWS_AS(plucker_from_span(M), DegenerateFigure);
  const Mat<Rational, 3, 4> H{{{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 0, 0}}};
  CHECK_THROWS_AS(plane_from_span(H), DegenerateFigure);
}

TEST_CASE("spans of random rational matrices satisfy the Plücker relation exactly") {
  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const auto M = random_rows<2>(rng);
    try {
      CHECK(sgn(plucker_relation(plucker_from_span(M))) == 0);
    } catch (const DegenerateFigure&) {
    }
  }
}

TEST_CASE("plane_from_span sign convention") {
  const Mat<Rational, 3, 4> e123{{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}};
  CHECK(plane_from_span(e123).h == std::array<Rational, 4>{0, 0, 0, -1});
  const Mat<Rational, 3, 4> e234{{{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
  CHECK(plane_from_span(e234).h == std::array<Rational, 4>{1, 0, 0, 0});

  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto M = random_rows<3>(rng);
    ProjPlane<Rational> H;
    try {
      H = plane_from_span(M);
    } catch (const DegenerateFigure&) {
      continue;
    }
    for (const auto& row : M) CHECK(sgn(incidence_point_plane(ProjPoint<Rational>{row}, H)[0]) == 0);
  }
}

TEST_CASE("incidence residuals") {
  const Figure P = Figure::point({{1, 0, 0, 0}});
  const Figure x4 = Figure::plane({{0, 0, 0, 1}});
  CHECK(incidence_residuals(P, x4) == std::vector<Rational>{0});

  const Figure Q = Figure::point({{0, 0, 0, 1}});
  const Figure l12 = Figure::line({{1, 0, 0, 0, 0, 0}});
  CHECK(incidence_residuals(Q, l12) == std::vector<Rational>{0, 1, 0, 0});
  CHECK(incidence_residuals(l12, Q) == std::vector<Rational>{0, 1, 0, 0});

  CHECK_THROWS_AS(incidence_residuals(P, Q), std::invalid_argument);
  CHECK_THROWS_AS(incidence_residuals(x4, x4), std::invalid_argument);

  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto V = random_invertible(rng);
    for (const auto& r : flag_residuals(flag_from_rows(V))) CHECK(sgn(r) == 0);
  }
}

TEST_CASE("incidence residuals scale with the figures") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    ProjPoint<Rational> P{random_rows<1>(rng)[0]};
    const auto L = plucker_from_span(random_rows<2>(rng));
    const Rational a = random_rational(rng) + 25, b = random_rational(rng) - 25;
    ProjPoint<Rational> aP = P;
    for (auto& v : aP.p) v *= a;
    PluckerLine<Rational> bL = L;
    for (auto& v : bL.l) v *= b;
    const auto r0 = incidence_point_line(P, L);
    const auto r1 = incidence_point_line(aP, bL);
    for (std::size_t i = 0; i < r0.size(); ++i) CHECK(r1[i] == a * b * r0[i]);
  }
}

TEST_CASE("exterior powers of diagonal and identity quadrics") {
  SymQuadric<Rational> I{};
  for (int i = 0; i < 4; ++i) I(i, i) = 1;
  const auto Y = wedge2(I);
  const auto Z = wedge3(I);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) CHECK(Y[a][b] == (a == b ? 1 : 0));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(Z[a][b] == (a == b ? 1 : 0));

  SymQuadric<Rational> D{};
  D(0, 0) = 2, D(1, 1) = 3, D(2, 2) = 5, D(3, 3) = 7;
  const auto YD = wedge2(D);
  const std::array<Rational, 6> expected{6, 10, 14, 15, 21, 35};
  for (int a = 0; a < 6; ++a) CHECK(YD[a][a] == expected[a]);
}

TEST_CASE("exterior powers reproduce restricted determinants exactly") {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto X = random_quadric(rng);
    const auto A2 = random_rows<2>(rng);
    const auto A3 = random_rows<3>(rng);
    try {
      const auto L = plucker_from_span(A2);
      CHECK(line_form(wedge2_upper(X), L) == restricted_det(A2, X));
      const auto H = plane_from_span(A3);
      CHECK(plane_form(wedge3_upper(X), H) == restricted_det(A3, X));
    } catch (const DegenerateFigure&) {
    }
  }
}

TEST_CASE("wedge3 is the adjugate") {
  Rng rng(19);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto X = random_quadric(rng);
    const auto Z = wedge3(X);
    const Rational d = determinant(as_matrix(X));
    CHECK(d == det4(X));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Rational s = 0;
        for (int k = 0; k < 4; ++k) s += X(i, k) * Z[k][j];
        CHECK(s == (i == j ? d : Rational(0)));
      }
  }
}

TEST_CASE("generators of the complete quadrics vanish on the image") {
  SymQuadric<Rational> I{};
  for (int i = 0; i < 4; ++i) I(i, i) = 1;
  for (const auto& g : generator_check(complete_quadric(I))) CHECK(sgn(g) == 0);

  Rng rng(23);
  for (int trial = 0; trial < 1000; ++trial)
    for (const auto& g : generator_check(complete_quadric(random_quadric(rng)))) CHECK(sgn(g) == 0);

  auto off = complete_quadric(I);
  for (auto& row : off.y) row.fill(0);
  off.y_at(1, 2, 3, 4) = 1;
  off.y_at(3, 4, 1, 2) = 1;
  CHECK(generator_check(off)[0] == 1);
}

TEST_CASE("twisted cubic tangents lie on the Grassmannian") {
  CHECK(twisted_cubic_tangent(Rational(0)).l == std::array<Rational, 6>{1, 0, 0, 0, 0, 0});
  const auto t1 = twisted_cubic_tangent(Rational(1));
  CHECK(t1.l == std::array<Rational, 6>{1, 2, 3, 1, 2, 1});
  CHECK(sgn(plucker_relation(t1)) == 0);
  const auto t2 = twisted_cubic_tangent(Rational(2));
  CHECK(t2.l == std::array<Rational, 6>{1, 4, 12, 4, 16, 16});
  CHECK(sgn(plucker_relation(t2)) == 0);
}

TEST_CASE("figure JSON and validation") {
  const Figure L(FigureKind::line, {Rational(-92, 159), Rational(-92, 293), Rational(120, 307), Rational(77, 256),
                                    Rational(76, 391), Rational(96, 311)});
  const Figure back = figure_from_json(to_json(L));
  CHECK(back.coords() == L.coords());
  CHECK(back.exact());
  CHECK(grassmannian_warning(L, 1.0) == std::nullopt);
  CHECK(grassmannian_warning(Figure::line(twisted_cubic_tangent(Rational(3)))) == std::nullopt);

  const auto j = nlohmann::json::parse(R"({"kind": "point", "coords": [1.5, "2/3", 4, -1]})");
  const Figure P = figure_from_json(j);
  CHECK_FALSE(P.exact());
  CHECK(P.coords()[0] == Rational(3, 2));
  CHECK(P.coords()[1] == Rational(2, 3));

  CHECK_THROWS_AS(Figure(FigureKind::plane, {0, 0, 0, 0}), DegenerateFigure);
  CHECK_THROWS_AS(Figure(FigureKind::plane, {1, 2, 3}), std::invalid_argument);

  const Figure F = Figure::from_doubles(FigureKind::point, {0.5, -4.0, 2.0, 1.0});
  CHECK(F.coords()[1] == -1);
  CHECK(F.coords()[0] == Rational(1, 8));
}
