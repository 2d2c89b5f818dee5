#include "tq/checks.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "tq/conditions.hpp"
#include "tq/exact.hpp"
#include "tq/geometry.hpp"
#include "tq/random.hpp"

namespace tq {

namespace {

Rational rnd(Rng& rng, long range = 20, long max_den = 9) {
  Rational q(rng.integer(-range, range), rng.integer(1, max_den));
  q.canonicalize();
  return q;
}

SymQuadric<Rational> rnd_quadric(Rng& rng) {
  SymQuadric<Rational> X;
  for (auto& v : X.x) v = rnd(rng);
  return X;
}

template <std::size_t R>
Mat<Rational, R, 4> rnd_rows(Rng& rng) {
  Mat<Rational, R, 4> M;
  for (auto& row : M)
    for (auto& v : row) v = rnd(rng);
  return M;
}

MatrixQ as_matrix(const SymQuadric<Rational>& X) {
  MatrixQ m(4, std::vector<Rational>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = X(i, j);
  return m;
}

template <std::size_t R>
MatrixQ rows_of(const Mat<Rational, R, 4>& A, std::size_t n = R) {
  MatrixQ m;
  for (std::size_t r = 0; r < n; ++r) m.emplace_back(A[r].begin(), A[r].end());
  return m;
}

Rational restricted_det(const MatrixQ& a, const SymQuadric<Rational>& X) {
  return determinant(multiply(multiply(a, as_matrix(X)), transpose(a)));
}

std::string show(const SymQuadric<Rational>& X) {
  std::ostringstream s;
  s << "X=[";
  for (std::size_t i = 0; i < 10; ++i) s << (i ? "," : "") << X.x[i].get_str();
  s << "]";
  return s.str();
}

template <std::size_t R>
std::string show(const Mat<Rational, R, 4>& A) {
  std::ostringstream s;
  s << "[";
  for (std::size_t r = 0; r < R; ++r) {
    s << (r ? ";" : "");
    for (std::size_t c = 0; c < 4; ++c) s << (c ? "," : "") << A[r][c].get_str();
  }
  s << "]";
  return s.str();
}

// det(U + tX) by Leibniz expansion over polynomial entries.
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

// Res(f, f') / lc(f) from the 7x7 Sylvester matrix.
Rational discriminant_by_resultant(const std::array<Rational, 5>& c) {
  const std::array<Rational, 5> f{c[4], c[3], c[2], c[1], c[0]};
  const std::array<Rational, 4> g{4 * c[4], 3 * c[3], 2 * c[2], c[1]};
  MatrixQ s(7, std::vector<Rational>(7, Rational(0)));
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t k = 0; k < 5; ++k) s[r][r + k] = f[k];
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t k = 0; k < 4; ++k) s[3 + r][r + k] = g[k];
  return determinant(s) / c[4];
}

Rational sigma(const SymQuadric<Rational>& U, const SymQuadric<Rational>& X) {
  return quadric_condition(U).evaluate<Rational>(std::span<const Rational, 10>(X.x));
}

Rational power(const Rational& x, int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

SymQuadric<Rational> scaled(SymQuadric<Rational> X, const Rational& s) {
  for (auto& v : X.x) v *= s;
  return X;
}

// Runs `trial` n times; a false return records the witness and stops.
CheckOutcome run(const std::string& name, int n, const std::function<bool(std::string&)>& trial) {
  CheckOutcome c{name, true, 0, {}};
  for (int k = 0; k < n; ++k) {
    ++c.trials;
    std::string w;
    if (!trial(w)) {
      c.pass = false;
      c.witness = w;
      break;
    }
  }
  return c;
}

bool all_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) == 0; });
}

}  // namespace

nlohmann::json to_json(const CheckOutcome& c) {
  nlohmann::json j{{"name", c.name}, {"pass", c.pass}, {"trials", c.trials}};
  if (!c.witness.empty()) j["witness"] = c.witness;
  return j;
}

bool all_pass(const std::vector<CheckOutcome>& v) {
  return std::all_of(v.begin(), v.end(), [](const CheckOutcome& c) { return c.pass; });
}

std::vector<CheckOutcome> check_degeneration(int trials, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CheckOutcome> out;
  out.push_back(run("degeneration order and leading coefficient", trials, [&](std::string& w) {
    Mat<Rational, 4, 4> V;
    do V = rnd_rows<4>(rng);
    while (sgn(determinant(rows_of(V))) == 0);
    const auto X = rnd_quadric(rng);
    const auto lf = leading_form(V, X);
    const Rational dv = determinant(rows_of(V));
    const Rational p = restricted_det(rows_of(V, 1), X);
    const Rational l = restricted_det(rows_of(V, 2), X);
    const Rational h = restricted_det(rows_of(V, 3), X);
    const Rational expected = p * p * l * l * h * h / power(dv, 12);
    if (lf.order == 8 && lf.coefficient == expected) return true;
    w = "V=" + show(V) + " " + show(X) + " order " + std::to_string(lf.order);
    return false;
  }));
  return out;
}

std::vector<CheckOutcome> check_identities(std::uint64_t seed, int generator_trials, int sigma_trials) {
  Rng rng(seed);
  std::vector<CheckOutcome> out;

  out.push_back(run("plucker relation and incidences", 200, [&](std::string& w) {
    const auto A = rnd_rows<3>(rng);
    Mat<Rational, 2, 4> A2{A[0], A[1]};
    try {
      const auto L = plucker_from_span(A2);
      const auto H = plane_from_span(A);
      ProjPoint<Rational> P;
      const Rational a = rnd(rng), b = rnd(rng);
      for (std::size_t i = 0; i < 4; ++i) P.p[i] = a * A[0][i] + b * A[1][i];
      bool ok = sgn(plucker_relation(L)) == 0 && all_zero(incidence_point_line(P, L)) &&
                all_zero(incidence_line_plane(L, H));
      for (const auto& row : A) ok = ok && all_zero(incidence_point_plane(ProjPoint<Rational>{row}, H));
      if (!ok) w = "A=" + show(A);
      return ok;
    } catch (const DegenerateFigure&) {
      return true;
    }
  }));

  out.push_back(run("exterior powers restrict to determinants", 200, [&](std::string& w) {
    const auto X = rnd_quadric(rng);
    const auto A = rnd_rows<3>(rng);
    Mat<Rational, 2, 4> A2{A[0], A[1]};
    try {
      const bool ok = line_form(wedge2_upper(X), plucker_from_span(A2)) == restricted_det(rows_of(A2), X) &&
                      plane_form(wedge3_upper(X), plane_from_span(A)) == restricted_det(rows_of(A), X);
      if (!ok) w = show(X) + " A=" + show(A);
      return ok;
    } catch (const DegenerateFigure&) {
      return true;
    }
  }));

  out.push_back(run("third exterior power is the adjugate", 200, [&](std::string& w) {
    const auto X = rnd_quadric(rng);
    const auto Z = wedge3(X);
    const Rational d = determinant(as_matrix(X));
    bool ok = d == det4(X);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Rational s = 0;
        for (int k = 0; k < 4; ++k) s += X(i, k) * Z[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        ok = ok && s == (i == j ? d : Rational(0));
      }
    if (!ok) w = show(X);
    return ok;
  }));

  out.push_back(run("complete quadrics generators vanish", generator_trials, [&](std::string& w) {
    const auto X = rnd_quadric(rng);
    for (const auto& g : generator_check(complete_quadric(X)))
      if (sgn(g) != 0) {
        w = show(X);
        return false;
      }
    return true;
  }));

  out.push_back(run("Sigma has bidegree (12,12)", sigma_trials, [&](std::string& w) {
    const auto U = rnd_quadric(rng), X = rnd_quadric(rng);
    Rational lambda = rnd(rng);
    if (sgn(lambda) == 0) lambda = 3;
    const Rational s = sigma(U, X);
    const bool ok =
        sigma(scaled(U, lambda), X) == power(lambda, 12) * s && sigma(U, scaled(X, lambda)) == power(lambda, 12) * s;
    if (!ok) w = "U " + show(U) + " " + show(X) + " lambda=" + lambda.get_str();
    return ok;
  }));

  out.push_back(run("Sigma equals the resultant discriminant", sigma_trials, [&](std::string& w) {
    const auto U = rnd_quadric(rng), X = rnd_quadric(rng);
    const auto c = pencil_by_leibniz(U, X);
    if (sgn(c[4]) == 0) return true;
    const bool ok = sigma(U, X) == discriminant_by_resultant(c);
    if (!ok) w = "U " + show(U) + " " + show(X);
    return ok;
  }));

  return out;
}

}  // namespace tq
