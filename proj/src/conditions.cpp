#include "tq/conditions.hpp"

#include <map>
#include <mutex>

namespace tq {

namespace {

slp::Tape record_condition(FigureKind kind) {
  const std::size_t k = coordinate_count(kind);
  slp::Builder b(10 + k);
  SymQuadric<slp::Expr> X;
  for (std::size_t i = 0; i < 10; ++i) X.x[i] = b.input(i);
  std::vector<slp::Expr> params;
  for (std::size_t i = 0; i < k; ++i) params.push_back(b.input(10 + i));
  b.add_output(condition_value<slp::Expr>(kind, X, params));
  return std::move(b).build();
}

const slp::Tape& condition_tape(FigureKind kind) {
  static std::mutex mutex;
  static std::map<FigureKind, slp::Tape> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(kind);
  if (it == cache.end()) it = cache.emplace(kind, record_condition(kind)).first;
  return it->second;
}

MatrixQ to_matrix(const SymQuadric<Rational>& X) {
  MatrixQ m(4, std::vector<Rational>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = X(i, j);
  return m;
}

MatrixQ rows_of(const Mat<Rational, 4, 4>& V, std::size_t count) {
  MatrixQ m;
  for (std::size_t i = 0; i < count; ++i) m.emplace_back(V[i].begin(), V[i].end());
  return m;
}

}  // namespace

ConditionProgram::ConditionProgram(Figure figure) : figure_(std::move(figure)), tape_(condition_tape(figure_.kind())) {}

ConditionProgram point_condition(const ProjPoint<Rational>& P) { return ConditionProgram(Figure::point(P)); }
ConditionProgram line_condition(const PluckerLine<Rational>& L) { return ConditionProgram(Figure::line(L)); }
ConditionProgram plane_condition(const ProjPlane<Rational>& H) { return ConditionProgram(Figure::plane(H)); }
ConditionProgram quadric_condition(const SymQuadric<Rational>& U) { return ConditionProgram(Figure::quadric(U)); }

std::array<Rational, 5> coefficients_of_pencil(const SymQuadric<Rational>& U, const SymQuadric<Rational>& X) {
  return pencil_coefficients<Rational>(U, X);
}

DegenerationFamily::DegenerationFamily(const Mat<Rational, 4, 4>& V_in) : V(V_in) {
  const MatrixQ Vm = rows_of(V, 4);
  if (sgn(determinant(Vm)) == 0) throw std::domain_error("degeneration needs an invertible V");
  flag = flag_from_rows(V);
  const MatrixQ Vinv = inverse(Vm);
  const std::array<PolyQ, 4> diag{PolyQ::monomial(1, 3), PolyQ::monomial(1, 2), PolyQ::monomial(1, 1), PolyQ(1)};
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      PolyQ entry;
      for (std::size_t k = 0; k < 4; ++k) entry += PolyQ(Rational(Vinv[i][k] * Vinv[j][k])) * diag[k];
      quadric(i, j) = entry;
    }
}

SymQuadric<Rational> DegenerationFamily::at(const Rational& eps) const {
  SymQuadric<Rational> U;
  for (std::size_t i = 0; i < 10; ++i) U.x[i] = quadric.x[i](eps);
  return U;
}

LeadingForm leading_form(const Mat<Rational, 4, 4>& V, const SymQuadric<Rational>& X) {
  const DegenerationFamily family(V);
  std::vector<PolyQ> in;
  for (const auto& q : X.x) in.emplace_back(q);
  for (const auto& p : family.quadric.x) in.push_back(p);
  const auto out = condition_tape(FigureKind::quadric).evaluate<PolyQ>(in);

  LeadingForm lf;
  lf.sigma = out[0];
  lf.order = lf.sigma.order();
  lf.coefficient = lf.order < 0 ? Rational(0) : lf.sigma.coefficient(static_cast<std::size_t>(lf.order));

  SymQuadric<PolyQ> Xp;
  for (std::size_t i = 0; i < 10; ++i) Xp.x[i] = PolyQ(X.x[i]);
  const auto c = pencil_coefficients<PolyQ>(family.quadric, Xp);
  for (std::size_t i = 0; i < 5; ++i) lf.pencil_orders[i] = c[i].order();
  return lf;
}

Rational flag_factor_product(const Mat<Rational, 4, 4>& V, const SymQuadric<Rational>& X) {
  const MatrixQ Xm = to_matrix(X);
  const auto restricted = [&](std::size_t k) {
    const MatrixQ A = rows_of(V, k);
    return determinant(multiply(multiply(A, Xm), transpose(A)));
  };
  const Rational p = restricted(1), l = restricted(2), h = restricted(3);
  Rational detv = determinant(rows_of(V, 4));
  Rational scale = 1;
  for (int i = 0; i < 12; ++i) scale /= detv;
  return Rational(scale * p * p * l * l * h * h);
}

}  // namespace tq
