#include "tq/polysys.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "tq/conditions.hpp"

namespace tq {

std::string Signature::to_string() const {
  std::ostringstream os;
  os << alpha << ',' << beta << ',' << gamma << ',' << delta;
  return os.str();
}

Signature Signature::parse(const std::string& text) {
  std::vector<int> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad signature: " + text);
    }
  }
  if (v.size() == 3) v.push_back(0);
  if (v.size() != 4) throw std::invalid_argument("signature needs 3 or 4 entries: " + text);
  Signature s{v[0], v[1], v[2], v[3]};
  if (!s.valid()) throw std::invalid_argument("signature entries must be nonnegative and sum to 9: " + text);
  return s;
}

Signature TangencyInstance::signature() const {
  return {static_cast<int>(points.size()), static_cast<int>(lines.size()), static_cast<int>(planes.size()),
          static_cast<int>(quadrics.size())};
}

void TangencyInstance::validate() const {
  const auto check = [](const std::vector<Figure>& v, FigureKind k) {
    for (const auto& f : v)
      if (f.kind() != k) throw std::invalid_argument("figure of kind " + to_string(f.kind()) + " in the " + to_string(k) + " list");
  };
  check(points, FigureKind::point);
  check(lines, FigureKind::line);
  check(planes, FigureKind::plane);
  check(quadrics, FigureKind::quadric);
  if (!signature().valid())
    throw std::invalid_argument("an instance needs exactly nine figures, got signature " + signature().to_string());
}

std::vector<Figure> TangencyInstance::figures() const {
  std::vector<Figure> all;
  for (const auto* v : {&points, &lines, &planes, &quadrics}) all.insert(all.end(), v->begin(), v->end());
  return all;
}

std::vector<std::string> TangencyInstance::warnings() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (auto w = grassmannian_warning(lines[i])) out.push_back("line " + std::to_string(i) + ": " + *w);
  return out;
}

nlohmann::json to_json(const TangencyInstance& inst) {
  nlohmann::json j;
  const auto put = [&](const char* key, const std::vector<Figure>& v) {
    j[key] = nlohmann::json::array();
    for (const auto& f : v) j[key].push_back(to_json(f));
  };
  put("points", inst.points);
  put("lines", inst.lines);
  put("planes", inst.planes);
  put("quadrics", inst.quadrics);
  return j;
}

TangencyInstance instance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("instance JSON must be an object");
  TangencyInstance inst;
  const auto get = [&](const char* key, FigureKind kind, std::vector<Figure>& dst) {
    if (!j.contains(key)) return;
    for (const auto& item : j.at(key)) {
      if (item.is_array()) {
        dst.push_back(figure_from_json(nlohmann::json{{"kind", to_string(kind)}, {"coords", item}}));
      } else {
        dst.push_back(figure_from_json(item));
      }
    }
  };
  get("points", FigureKind::point, inst.points);
  get("lines", FigureKind::line, inst.lines);
  get("planes", FigureKind::plane, inst.planes);
  get("quadrics", FigureKind::quadric, inst.quadrics);
  inst.validate();
  return inst;
}

TangencyInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return instance_from_json(j);
}

void save_instance(const TangencyInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json(inst).dump(2) << '\n';
}

namespace {

template <std::size_t R>
Mat<Rational, R, 4> gaussian_rows(Rng& rng) {
  Mat<Rational, R, 4> M;
  for (auto& row : M)
    for (auto& v : row) v = dyadic_gaussian(rng);
  return M;
}

}  // namespace

Rational dyadic_gaussian(Rng& rng) {
  const double g = std::round(rng.gaussian() * 1048576.0);
  return Rational(rational_from_double(g) / 1048576);
}

Figure random_figure(FigureKind kind, Rng& rng) {
  for (;;) {
    try {
      switch (kind) {
        case FigureKind::point: return Figure::point({gaussian_rows<1>(rng)[0]});
        case FigureKind::line: return Figure::line(plucker_from_span(gaussian_rows<2>(rng)));
        case FigureKind::plane: return Figure::plane(plane_from_span(gaussian_rows<3>(rng)));
        case FigureKind::quadric: {
          SymQuadric<Rational> U;
          for (auto& v : U.x) v = dyadic_gaussian(rng);
          return Figure::quadric(U);
        }
      }
    } catch (const DegenerateFigure&) {
    }
  }
}

TangencyInstance random_instance(const Signature& sig, Rng& rng) {
  if (!sig.valid()) throw std::invalid_argument("invalid signature " + sig.to_string());
  TangencyInstance inst;
  for (int i = 0; i < sig.alpha; ++i) inst.points.push_back(random_figure(FigureKind::point, rng));
  for (int i = 0; i < sig.beta; ++i) inst.lines.push_back(random_figure(FigureKind::line, rng));
  for (int i = 0; i < sig.gamma; ++i) inst.planes.push_back(random_figure(FigureKind::plane, rng));
  for (int i = 0; i < sig.delta; ++i) inst.quadrics.push_back(random_figure(FigureKind::quadric, rng));
  return inst;
}

std::array<cd, 10> random_real_chart(Rng& rng) {
  std::array<cd, 10> c;
  for (auto& v : c) v = rng.gaussian();
  return c;
}

namespace {

std::size_t param_count(const Signature& s) {
  return 4 * s.alpha + 6 * s.beta + 4 * s.gamma + 10 * s.delta;
}

slp::Tape record_system(const Signature& sig, bool det) {
  using slp::Expr;
  const std::size_t nv = det ? 11 : 10;
  const std::size_t off = det ? 1 : 0;
  slp::Builder b(nv + param_count(sig) + 10);
  SymQuadric<Expr> X;
  for (std::size_t i = 0; i < 10; ++i) X.x[i] = b.input(off + i);
  std::size_t next = nv;
  const auto take = [&](std::size_t k) {
    std::vector<Expr> v;
    for (std::size_t i = 0; i < k; ++i) v.push_back(b.input(next++));
    return v;
  };

  for (int i = 0; i < sig.alpha; ++i) {
    const auto v = take(4);
    b.add_output(point_form(X, ProjPoint<Expr>{{v[0], v[1], v[2], v[3]}}));
  }
  if (sig.beta > 0) {
    const auto Y = wedge2_upper(X);
    for (int i = 0; i < sig.beta; ++i) {
      const auto v = take(6);
      b.add_output(line_form(Y, PluckerLine<Expr>{{v[0], v[1], v[2], v[3], v[4], v[5]}}));
    }
  }
  if (sig.gamma > 0) {
    const auto Z = wedge3_upper(X);
    for (int i = 0; i < sig.gamma; ++i) {
      const auto v = take(4);
      b.add_output(plane_form(Z, ProjPlane<Expr>{{v[0], v[1], v[2], v[3]}}));
    }
  }
  for (int i = 0; i < sig.delta; ++i) {
    const auto v = take(10);
    SymQuadric<Expr> U;
    std::copy(v.begin(), v.end(), U.x.begin());
    b.add_output(hurwitz_form(U, X));
  }
  const auto c = take(10);
  Expr chart = c[0] * X.x[0];
  for (std::size_t i = 1; i < 10; ++i) chart = chart + c[i] * X.x[i];
  b.add_output(chart - Rational(1));
  if (det) b.add_output(b.input(0) - det4(X));
  return std::move(b).build();
}

std::shared_ptr<const slp::Tape> system_tape(const Signature& sig, bool det) {
  static std::mutex mutex;
  static std::map<std::pair<Signature, bool>, std::shared_ptr<const slp::Tape>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{sig, det}];
  if (!slot) slot = std::make_shared<const slp::Tape>(record_system(sig, det));
  return slot;
}

}  // namespace

std::uint64_t SlpSystem::total_degree() const {
  std::uint64_t d = 1;
  for (int k : degrees_) d *= static_cast<std::uint64_t>(k);
  return d;
}

std::vector<cd> SlpSystem::params() const {
  std::vector<cd> p(figure_params_d_);
  p.insert(p.end(), chart_.begin(), chart_.end());
  return p;
}

void SlpSystem::evaluate_jacobian(std::span<const cd> x, std::span<const cd> p, Eigen::VectorXcd& F,
                                  Eigen::MatrixXcd& J, std::span<const cd> dp, Eigen::VectorXcd* Fp) const {
  if (x.size() != n_ || p.size() != num_params()) throw std::invalid_argument("SlpSystem: dimension mismatch");
  const bool with_p = Fp != nullptr;
  if (with_p && dp.size() != p.size()) throw std::invalid_argument("SlpSystem: parameter direction has wrong size");
  const std::size_t m = n_ + (with_p ? 1 : 0);
  const std::size_t n_in = n_ + p.size();

  thread_local std::vector<cd> in, seeds, out, derivs;
  in.assign(x.begin(), x.end());
  in.insert(in.end(), p.begin(), p.end());
  seeds.assign(n_in * m, cd(0.0));
  for (std::size_t i = 0; i < n_; ++i) seeds[i * m + i] = 1.0;
  if (with_p)
    for (std::size_t j = 0; j < p.size(); ++j) seeds[(n_ + j) * m + n_] = dp[j];
  out.resize(n_);
  derivs.resize(n_ * m);
  tape_->forward<cd>(in, seeds, m, out, derivs);

  F.resize(static_cast<Eigen::Index>(n_));
  J.resize(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
  if (with_p) Fp->resize(static_cast<Eigen::Index>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    F[static_cast<Eigen::Index>(i)] = out[i];
    for (std::size_t j = 0; j < n_; ++j) J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = derivs[i * m + j];
    if (with_p) (*Fp)[static_cast<Eigen::Index>(i)] = derivs[i * m + n_];
  }
}

Eigen::VectorXcd SlpSystem::evaluate(const Eigen::VectorXcd& x) const {
  if (static_cast<std::size_t>(x.size()) != n_) throw std::invalid_argument("SlpSystem: dimension mismatch");
  std::vector<cd> in(x.data(), x.data() + x.size());
  const auto p = params();
  in.insert(in.end(), p.begin(), p.end());
  const auto out = tape_->evaluate<cd>(in);
  return Eigen::Map<const Eigen::VectorXcd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

Eigen::MatrixXcd SlpSystem::jacobian(const Eigen::VectorXcd& x) const {
  if (static_cast<std::size_t>(x.size()) != n_) throw std::invalid_argument("SlpSystem: dimension mismatch");
  Eigen::VectorXcd F;
  Eigen::MatrixXcd J;
  const auto p = params();
  evaluate_jacobian(std::span<const cd>(x.data(), n_), p, F, J);
  return J;
}

std::vector<CInterval> SlpSystem::interval_params() const {
  std::vector<CInterval> p;
  for (const auto& q : figure_params_) p.emplace_back(enclose(q));
  for (const auto& c : chart_) p.emplace_back(c);
  return p;
}

std::vector<CInterval> SlpSystem::evaluate_interval(std::span<const CInterval> x) const {
  if (x.size() != n_) throw std::invalid_argument("SlpSystem: dimension mismatch");
  std::vector<CInterval> in(x.begin(), x.end());
  const auto p = interval_params();
  in.insert(in.end(), p.begin(), p.end());
  return tape_->evaluate<CInterval>(in);
}

std::vector<CInterval> SlpSystem::jacobian_interval(std::span<const CInterval> x) const {
  if (x.size() != n_) throw std::invalid_argument("SlpSystem: dimension mismatch");
  std::vector<CInterval> in(x.begin(), x.end());
  const auto p = interval_params();
  in.insert(in.end(), p.begin(), p.end());
  std::vector<CInterval> seeds(in.size() * n_);
  for (std::size_t i = 0; i < n_; ++i) seeds[i * n_ + i] = CInterval(1.0);
  std::vector<CInterval> out(n_), J(n_ * n_);
  tape_->forward<CInterval>(in, seeds, n_, out, J);
  return J;
}

SlpSystem SlpSystem::with_chart(const std::array<cd, 10>& chart) const {
  SlpSystem s = *this;
  s.chart_ = chart;
  return s;
}

SlpSystem assemble(const TangencyInstance& instance, std::uint64_t chart_seed) {
  instance.validate();
  SlpSystem s;
  s.sig_ = instance.signature();
  s.n_ = 10;
  for (const auto& f : instance.figures()) {
    const Figure g = f.normalized();
    s.degrees_.push_back(condition_degree(g.kind()));
    for (const auto& q : g.coords()) {
      s.figure_params_.push_back(q);
      s.figure_params_d_.emplace_back(q.get_d());
    }
  }
  s.degrees_.push_back(1);
  Rng rng(chart_seed);
  for (auto& c : s.chart_) c = rng.unit_complex();
  s.tape_ = system_tape(s.sig_, false);
  return s;
}

SlpSystem with_det_variable(const SlpSystem& s) {
  if (s.has_det_) throw std::logic_error("system already has the determinant variable");
  SlpSystem t = s;
  t.has_det_ = true;
  t.n_ = 11;
  t.degrees_.push_back(4);
  t.tape_ = system_tape(s.sig_, true);
  return t;
}

}  // namespace tq
