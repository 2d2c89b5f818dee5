#include "doctest.h"

#include <cmath>

#include "test_support.hpp"
#include "tq/conditions.hpp"
#include "tq/exact.hpp"

using namespace tq;
using tq::testing::random_complex;
using tq::testing::random_quadric;
using tq::testing::random_rational;
using tq::testing::random_rows;

namespace {

// Coefficients of det(U + t X) by Leibniz expansion over polynomial entries.
std::array<Rational, 5> pencil_by_leibniz(const SymQuadric<Rational>& U, const SymQuadric<Rational>& X) {
  std::array<int, 4> perm{0, 1, 2, 3};
  PolyQ det;
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inversions += perm[i] > perm[j];
    PolyQ term(inversions % 2 ? -1 : 1);
    for (int i = 0; i < 4; ++i) term *= PolyQ(std::vector<Rational>{U(i, perm[i]), X(i, perm[i])});
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::array<Rational, 5> c;
  for (std::size_t k = 0; k < 5; ++k) c[k] = det.coefficient(k);
  return c;
}

// Discriminant of the quartic as Res(f, f') / lc(f), via the 7x7 Sylvester matrix.
Rational discriminant_by_resultant(const std::array<Rational, 5>& c) {
  // f = c4 t^4 + ... + c0, f' = 4 c4 t^3 + 3 c3 t^2 + 2 c2 t + c1.
  const std::array<Rational, 5> f{c[4], c[3], c[2], c[1], c[0]};
  const std::array<Rational, 4> g{4 * c[4], 3 * c[3], 2 * c[2], c[1]};
  MatrixQ s(7, std::vector<Rational>(7, Rational(0)));
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 5; ++k) s[r][r + k] = f[k];
  for (int r = 0; r < 4; ++r)
    for (int k = 0; k < 4; ++k) s[3 + r][r + k] = g[k];
  return determinant(s) / c[4];
}

SymQuadric<Rational> identity() {
  SymQuadric<Rational> I{};
  for (int i = 0; i < 4; ++i) I(i, i) = 1;
  return I;
}

SymQuadric<Rational> scale(const SymQuadric<Rational>& X, const Rational& s) {
  SymQuadric<Rational> Y = X;
  for (auto& v : Y.x) v *= s;
  return Y;
}

Rational evaluate(const ConditionProgram& c, const SymQuadric<Rational>& X) {
  return c.evaluate<Rational>(std::span<const Rational, 10>(X.x));
}

Rational power(const Rational& x, int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

TEST_CASE("point condition") {
  const auto c = point_condition({{1, 0, 0, 0}});
  CHECK(c.degree() == 1);
  Rng rng(1);
  const auto X = random_quadric(rng);
  CHECK(evaluate(c, X) == X(0, 0));
  CHECK(evaluate(point_condition({{1, 1, 0, 0}}), identity()) == 2);
  CHECK(evaluate(point_condition({{1, 2, 8, 7}}), identity()) == 118);
}

TEST_CASE("line and plane conditions on coordinate figures") {
  Rng rng(2);
  const auto l = line_condition({{1, 0, 0, 0, 0, 0}});
  const auto h = plane_condition({{0, 0, 0, 1}});
  CHECK(l.degree() == 2);
  CHECK(h.degree() == 3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto X = random_quadric(rng);
    CHECK(evaluate(l, X) == X(0, 0) * X(1, 1) - X(0, 1) * X(0, 1));
    MatrixQ m(3, std::vector<Rational>(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = X(i, j);
    CHECK(evaluate(h, X) == determinant(m));
  }
}

TEST_CASE("line condition equals the bordered determinant") {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto A = random_rows<2>(rng);
    const auto X = random_quadric(rng);
    PluckerLine<Rational> L;
    try {
      L = plucker_from_span(A);
    } catch (const DegenerateFigure&) {
      continue;
    }
    MatrixQ a{{A[0].begin(), A[0].end()}, {A[1].begin(), A[1].end()}};
    MatrixQ x(4, std::vector<Rational>(4));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) x[i][j] = X(i, j);
    CHECK(evaluate(line_condition(L), X) == determinant(multiply(multiply(a, x), transpose(a))));
  }
}

TEST_CASE("coefficients of the pencil") {
  CHECK(coefficients_of_pencil(identity(), identity()) == std::array<Rational, 5>{1, 4, 6, 4, 1});
  SymQuadric<Rational> E{};
  E(0, 0) = 1;
  CHECK(coefficients_of_pencil(identity(), E) == std::array<Rational, 5>{1, 1, 0, 0, 0});

  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto U = random_quadric(rng);
    const auto X = random_quadric(rng);
    const auto c = coefficients_of_pencil(U, X);
    CHECK(c == pencil_by_leibniz(U, X));
    // Interpolation check at t = 3.
    SymQuadric<Rational> W;
    for (std::size_t i = 0; i < 10; ++i) W.x[i] = U.x[i] + 3 * X.x[i];
    CHECK(det4(W) == c[0] + 3 * c[1] + 9 * c[2] + 27 * c[3] + 81 * c[4]);
  }
}

TEST_CASE("quadric condition: self tangency, bidegree (12,12), resultant oracle, symmetry") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto U = random_quadric(rng);
    CHECK(sgn(evaluate(quadric_condition(U), U)) == 0);
  }
  for (int trial = 0; trial < 30; ++trial) {
    const auto U = random_quadric(rng);
    const auto X = random_quadric(rng);
    Rational lambda = random_rational(rng);
    if (sgn(lambda) == 0) lambda = 3;
    const Rational sigma = evaluate(quadric_condition(U), X);
    CHECK(quadric_condition(U).degree() == 12);
    CHECK(evaluate(quadric_condition(scale(U, lambda)), X) == power(lambda, 12) * sigma);
    CHECK(evaluate(quadric_condition(U), scale(X, lambda)) == power(lambda, 12) * sigma);
    CHECK(sigma == discriminant_by_resultant(pencil_by_leibniz(U, X)));
    CHECK(sigma == evaluate(quadric_condition(X), U));
  }
}

TEST_CASE("conditions are homogeneous of their degree") {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto X = random_quadric(rng);
    const Rational lambda = Rational(trial + 2, 3);
    const std::vector<ConditionProgram> programs{
        point_condition({random_rows<1>(rng)[0]}),
        line_condition(plucker_from_span(random_rows<2>(rng))),
        plane_condition(plane_from_span(random_rows<3>(rng))),
        quadric_condition(random_quadric(rng)),
    };
    for (const auto& c : programs)
      CHECK(evaluate(c, scale(X, lambda)) == power(lambda, c.degree()) * evaluate(c, X));
  }
}

TEST_CASE("condition gradients match central differences") {
  Rng rng(7);
  using cd = std::complex<double>;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ConditionProgram> programs{
        point_condition({random_rows<1>(rng)[0]}),
        line_condition(plucker_from_span(random_rows<2>(rng))),
        plane_condition(plane_from_span(random_rows<3>(rng))),
    };
    if (trial % 5 == 0) {
      SymQuadric<Rational> U;
      for (auto& v : U.x) v = random_rational(rng, 5, 4);
      programs.push_back(quadric_condition(U));
    }
    std::array<cd, 10> x;
    for (auto& v : x) v = 0.3 * random_complex(rng);
    for (const auto& c : programs) {
      const auto [value, grad] = c.gradient<cd>(std::span<const cd, 10>(x));
      CHECK(std::abs(value - c.evaluate<cd>(std::span<const cd, 10>(x))) <= 1e-12 * (1 + std::abs(value)));
      for (std::size_t i = 0; i < 10; ++i) {
        const double h = 1e-6;
        auto xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        const cd fd = (c.evaluate<cd>(std::span<const cd, 10>(xp)) - c.evaluate<cd>(std::span<const cd, 10>(xm))) / (2 * h);
        double scale_ref = 0;
        for (const auto& g : grad) scale_ref = std::max(scale_ref, std::abs(g));
        CHECK(std::abs(fd - grad[i]) <= 1e-6 * scale_ref);
      }
    }
  }
}

TEST_CASE("degeneration to a flag: leading form of order 8") {
  Mat<Rational, 4, 4> I{};
  for (int i = 0; i < 4; ++i) I[i][i] = 1;
  const auto lf = leading_form(I, identity());
  CHECK(lf.order == 8);
  CHECK(lf.coefficient == 1);
  CHECK(lf.pencil_orders == std::array<int, 5>{6, 3, 1, 0, 0});

  Rng rng(8);
  auto X = random_quadric(rng);
  X(0, 0) = 0;
  CHECK(leading_form(I, X).order >= 9);

  for (int trial = 0; trial < 5; ++trial) {
    Mat<Rational, 4, 4> V;
    for (auto& row : V)
      for (auto& v : row) v = random_rational(rng, 6, 3);
    try {
      const auto f = leading_form(V, random_quadric(rng));
      (void)f;
    } catch (const std::domain_error&) {
      continue;
    }
    const auto Y = random_quadric(rng);
    const auto g = leading_form(V, Y);
    CHECK(g.order == 8);
    CHECK(g.coefficient == flag_factor_product(V, Y));
  }
}

TEST_CASE("degeneration family reproduces its defining product") {
  Rng rng(9);
  Mat<Rational, 4, 4> V;
  for (;;) {
    for (auto& row : V)
      for (auto& v : row) v = random_rational(rng, 6, 3);
    MatrixQ m;
    for (const auto& row : V) m.emplace_back(row.begin(), row.end());
    if (sgn(determinant(m)) != 0) break;
  }
  const DegenerationFamily family(V);
  const Rational eps(1, 3);
  MatrixQ Vm;
  for (const auto& row : V) Vm.emplace_back(row.begin(), row.end());
  const MatrixQ Vi = inverse(Vm);
  MatrixQ D(4, std::vector<Rational>(4, Rational(0)));
  D[0][0] = eps * eps * eps, D[1][1] = eps * eps, D[2][2] = eps, D[3][3] = 1;
  const MatrixQ U = multiply(multiply(Vi, D), transpose(Vi));
  const auto Ue = family.at(eps);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(Ue(i, j) == U[i][j]);

  Mat<Rational, 4, 4> singular{};
  CHECK_THROWS_AS(DegenerationFamily{singular}, std::domain_error);
}
