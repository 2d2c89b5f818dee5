#include "tq/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tq {

std::string to_string(FigureKind k) {
  switch (k) {
    case FigureKind::point: return "point";
    case FigureKind::line: return "line";
    case FigureKind::plane: return "plane";
    case FigureKind::quadric: return "quadric";
  }
  return "?";
}

FigureKind figure_kind_from_string(const std::string& s) {
  if (s == "point") return FigureKind::point;
  if (s == "line") return FigureKind::line;
  if (s == "plane") return FigureKind::plane;
  if (s == "quadric") return FigureKind::quadric;
  throw std::invalid_argument("unknown figure kind: " + s);
}

Figure::Figure(FigureKind kind, std::vector<Rational> coords, bool exact)
    : kind_(kind), coords_(std::move(coords)), exact_(exact) {
  if (coords_.size() != coordinate_count(kind_))
    throw std::invalid_argument(to_string(kind_) + " needs " + std::to_string(coordinate_count(kind_)) +
                                " coordinates, got " + std::to_string(coords_.size()));
  if (std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return sgn(q) == 0; }))
    throw DegenerateFigure(to_string(kind_) + " with all coordinates zero");
}

Figure Figure::from_doubles(FigureKind kind, const std::vector<double>& coords) {
  std::vector<Rational> q;
  q.reserve(coords.size());
  for (double d : coords) q.push_back(rational_from_double(d));
  return Figure(kind, std::move(q), false).normalized();
}

std::vector<double> Figure::to_double() const {
  std::vector<double> out;
  out.reserve(coords_.size());
  for (const auto& q : coords_) out.push_back(q.get_d());
  return out;
}

Figure Figure::normalized() const {
  Rational largest = 0;
  for (const auto& q : coords_)
    if (abs(q) > abs(largest)) largest = q;
  std::vector<Rational> out;
  out.reserve(coords_.size());
  const Rational scale = abs(largest);
  for (const auto& q : coords_) out.push_back(Rational(q / scale));
  if (!exact_) {
    // Floating data: keep coordinates representable as doubles.
    for (auto& q : out) q = rational_from_double(q.get_d());
  }
  return Figure(kind_, std::move(out), exact_);
}

ProjPoint<Rational> Figure::as_point() const {
  if (kind_ != FigureKind::point) throw std::invalid_argument("figure is not a point");
  ProjPoint<Rational> P;
  std::copy(coords_.begin(), coords_.end(), P.p.begin());
  return P;
}

PluckerLine<Rational> Figure::as_line() const {
  if (kind_ != FigureKind::line) throw std::invalid_argument("figure is not a line");
  PluckerLine<Rational> L;
  std::copy(coords_.begin(), coords_.end(), L.l.begin());
  return L;
}

ProjPlane<Rational> Figure::as_plane() const {
  if (kind_ != FigureKind::plane) throw std::invalid_argument("figure is not a plane");
  ProjPlane<Rational> H;
  std::copy(coords_.begin(), coords_.end(), H.h.begin());
  return H;
}

SymQuadric<Rational> Figure::as_quadric() const {
  if (kind_ != FigureKind::quadric) throw std::invalid_argument("figure is not a quadric");
  SymQuadric<Rational> U;
  std::copy(coords_.begin(), coords_.end(), U.x.begin());
  return U;
}

double Figure::grassmannian_residual() const {
  if (kind_ != FigureKind::line) return 0.0;
  const auto L = as_line();
  Rational norm2 = 0;
  for (const auto& q : L.l) norm2 += q * q;
  return std::fabs(Rational(plucker_relation(L) / norm2).get_d());
}

std::optional<std::string> grassmannian_warning(const Figure& f, double relative_tol) {
  const double r = f.grassmannian_residual();
  if (r <= relative_tol) return std::nullopt;
  std::ostringstream os;
  os << "line is off the Grassmannian: relative Plücker residual " << r << " exceeds " << relative_tol;
  return os.str();
}

std::vector<Rational> incidence_residuals(const Figure& a, const Figure& b) {
  using K = FigureKind;
  if (a.kind() == K::point && b.kind() == K::plane) return incidence_point_plane(a.as_point(), b.as_plane());
  if (a.kind() == K::plane && b.kind() == K::point) return incidence_point_plane(b.as_point(), a.as_plane());
  if (a.kind() == K::point && b.kind() == K::line) return incidence_point_line(a.as_point(), b.as_line());
  if (a.kind() == K::line && b.kind() == K::point) return incidence_point_line(b.as_point(), a.as_line());
  if (a.kind() == K::line && b.kind() == K::plane) return incidence_line_plane(a.as_line(), b.as_plane());
  if (a.kind() == K::plane && b.kind() == K::line) return incidence_line_plane(b.as_line(), a.as_plane());
  throw std::invalid_argument("no incidence relation between a " + to_string(a.kind()) + " and a " +
                              to_string(b.kind()));
}

nlohmann::json to_json(const Figure& f) {
  nlohmann::json coords = nlohmann::json::array();
  for (const auto& q : f.coords()) {
    if (f.exact())
      coords.push_back(to_string(q));
    else
      coords.push_back(q.get_d());
  }
  return {{"kind", to_string(f.kind())}, {"coords", coords}};
}

Figure figure_from_json(const nlohmann::json& j) {
  const FigureKind kind = figure_kind_from_string(j.at("kind").get<std::string>());
  const auto& c = j.at("coords");
  if (!c.is_array()) throw std::invalid_argument("figure coords must be an array");
  std::vector<Rational> coords;
  bool exact = true;
  for (const auto& v : c) {
    if (v.is_string()) {
      coords.push_back(parse_rational(v.get<std::string>()));
    } else if (v.is_number_integer()) {
      coords.emplace_back(v.get<long>());
    } else if (v.is_number()) {
      coords.push_back(rational_from_double(v.get<double>()));
      exact = false;
    } else {
      throw std::invalid_argument("figure coordinate must be a number or an \"a/b\" string");
    }
  }
  return Figure(kind, std::move(coords), exact);
}

}  // namespace tq
