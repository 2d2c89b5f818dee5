#include "tq/homotopy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace tq {

void TrackerSettings::validate() const {
  const double positives[] = {initial_step, max_step, min_step, newton_tol, step_expansion, step_contraction,
                              endpoint_tol, singular_condition_threshold, real_tol, diverge_norm, det_tol, dedup_tol};
  for (double v : positives)
    if (!(v > 0.0)) throw std::invalid_argument("tracker tolerances must be positive");
  if (!(min_step < initial_step)) throw std::invalid_argument("min_step must be below initial_step");
  if (max_newton_iters < 1) throw std::invalid_argument("max_newton_iters must be at least 1");
  if (!(step_contraction < 1.0) || !(step_expansion > 1.0)) throw std::invalid_argument("bad step factors");
}

nlohmann::json to_json(const TrackerSettings& s) {
  return {{"initial_step", s.initial_step},
          {"max_step", s.max_step},
          {"min_step", s.min_step},
          {"newton_tol", s.newton_tol},
          {"max_newton_iters", s.max_newton_iters},
          {"step_expansion", s.step_expansion},
          {"step_contraction", s.step_contraction},
          {"endpoint_tol", s.endpoint_tol},
          {"singular_condition_threshold", s.singular_condition_threshold},
          {"real_tol", s.real_tol},
          {"rng_seed", s.rng_seed},
          {"chart_seed", s.chart_seed},
          {"threads", s.threads},
          {"max_steps", s.max_steps},
          {"diverge_norm", s.diverge_norm},
          {"det_tol", s.det_tol},
          {"dedup_tol", s.dedup_tol},
          {"retry_failure_rate", s.retry_failure_rate},
          {"singular_t", s.singular_t}};
}

TrackerSettings settings_from_json(const nlohmann::json& j, TrackerSettings s) {
  const auto read = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  read("initial_step", s.initial_step);
  read("max_step", s.max_step);
  read("min_step", s.min_step);
  read("newton_tol", s.newton_tol);
  read("max_newton_iters", s.max_newton_iters);
  read("step_expansion", s.step_expansion);
  read("step_contraction", s.step_contraction);
  read("endpoint_tol", s.endpoint_tol);
  read("singular_condition_threshold", s.singular_condition_threshold);
  read("real_tol", s.real_tol);
  read("rng_seed", s.rng_seed);
  read("chart_seed", s.chart_seed);
  read("threads", s.threads);
  read("max_steps", s.max_steps);
  read("diverge_norm", s.diverge_norm);
  read("det_tol", s.det_tol);
  read("dedup_tol", s.dedup_tol);
  read("retry_failure_rate", s.retry_failure_rate);
  read("singular_t", s.singular_t);
  s.validate();
  return s;
}

std::string to_string(PathStatus s) {
  switch (s) {
    case PathStatus::converged: return "converged";
    case PathStatus::singular_endpoint: return "singular_endpoint";
    case PathStatus::diverged: return "diverged";
    case PathStatus::failed: return "failed";
  }
  return "?";
}

namespace {

PathStatus status_from_string(const std::string& s) {
  for (auto st : {PathStatus::converged, PathStatus::singular_endpoint, PathStatus::diverged, PathStatus::failed})
    if (to_string(st) == s) return st;
  throw std::invalid_argument("unknown path status " + s);
}

nlohmann::json complex_json(cd z) { return nlohmann::json::array({z.real(), z.imag()}); }
cd complex_from(const nlohmann::json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace

nlohmann::json to_json(const TrackedSolution& s) {
  nlohmann::json x = nlohmann::json::array();
  for (Eigen::Index i = 0; i < s.x.size(); ++i) x.push_back(complex_json(s.x[i]));
  return {{"path_index", s.path_index}, {"status", to_string(s.status)}, {"x", x},
          {"det", complex_json(s.det_value)}, {"residual", s.residual}, {"condition", s.condition_estimate},
          {"real", s.is_real_estimate}, {"t_end", s.t_end}};
}

TrackedSolution solution_from_json(const nlohmann::json& j) {
  TrackedSolution s;
  const auto& x = j.at("x");
  s.x.resize(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) s.x[static_cast<Eigen::Index>(i)] = complex_from(x[i]);
  s.path_index = j.value("path_index", -1);
  s.status = status_from_string(j.at("status").get<std::string>());
  if (j.contains("det")) s.det_value = complex_from(j.at("det"));
  s.residual = j.value("residual", 0.0);
  s.condition_estimate = j.value("condition", 0.0);
  s.is_real_estimate = j.value("real", false);
  s.t_end = j.value("t_end", 0.0);
  return s;
}

std::optional<cd> PolySystem::det(std::span<const cd> x) const {
  SymQuadric<cd> X;
  const std::size_t off = s_.x_offset();
  for (std::size_t i = 0; i < 10; ++i) X.x[i] = x[off + i];
  return det4(X);
}

std::optional<Eigen::Matrix4cd> PolySystem::quadric(std::span<const cd> x) const {
  Eigen::Matrix4cd X;
  const std::size_t off = s_.x_offset();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) X(i, j) = x[off + static_cast<std::size_t>(sym_index(i, j))];
  return X;
}

void TotalDegreeStart::evaluate(std::span<const cd> x, Eigen::VectorXcd& F, Eigen::MatrixXcd& J) const {
  const auto n = static_cast<Eigen::Index>(d_.size());
  F.resize(n);
  J.setZero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int d = d_[static_cast<std::size_t>(i)];
    cd p = 1.0;
    for (int k = 0; k < d - 1; ++k) p *= x[static_cast<std::size_t>(i)];
    F[i] = p * x[static_cast<std::size_t>(i)] - r_[static_cast<std::size_t>(i)];
    J(i, i) = static_cast<double>(d) * p;
  }
}

std::uint64_t TotalDegreeStart::solution_count() const {
  std::uint64_t c = 1;
  for (int d : d_) c *= static_cast<std::uint64_t>(d);
  return c;
}

Eigen::VectorXcd TotalDegreeStart::solution(std::uint64_t k) const {
  Eigen::VectorXcd x(static_cast<Eigen::Index>(d_.size()));
  for (std::size_t i = 0; i < d_.size(); ++i) {
    const auto d = static_cast<std::uint64_t>(d_[i]);
    const std::uint64_t digit = k % d;
    k /= d;
    const double root_mod = std::pow(std::abs(r_[i]), 1.0 / static_cast<double>(d));
    const double angle = (std::arg(r_[i]) + 2.0 * std::numbers::pi * static_cast<double>(digit)) / static_cast<double>(d);
    x[static_cast<Eigen::Index>(i)] = std::polar(root_mod, angle);
  }
  return x;
}

void StraightLineHomotopy::evaluate(std::span<const cd> x, double t, Eigen::VectorXcd& H, Eigen::MatrixXcd& Hx,
                                    Eigen::VectorXcd& Ht) const {
  thread_local Eigen::VectorXcd G, F;
  thread_local Eigen::MatrixXcd JG, JF;
  g_.evaluate(x, G, JG);
  f_.evaluate(x, F, JF);
  H = gamma_ * t * G + (1.0 - t) * F;
  Hx = gamma_ * t * JG + (1.0 - t) * JF;
  Ht = gamma_ * G - F;
}

ParameterHomotopy::ParameterHomotopy(const SlpSystem& s, std::vector<cd> p0, std::vector<cd> p1, cd gamma)
    : s_(s), p0_(std::move(p0)), p1_(std::move(p1)), gamma_(gamma) {
  if (p0_.size() != s.num_params() || p1_.size() != s.num_params())
    throw std::invalid_argument("parameter homotopy: parameter vectors have the wrong size");
  const std::size_t nf = s.figure_params().size();
  for (std::size_t i = nf; i < p0_.size(); ++i)
    if (p0_[i] != p1_[i]) throw std::invalid_argument("parameter homotopy: both ends must share the chart");
  dp_.assign(p0_.size(), cd(0.0));
  for (std::size_t i = 0; i < nf; ++i) dp_[i] = gamma_ * p0_[i] - p1_[i];
}

void ParameterHomotopy::evaluate(std::span<const cd> x, double t, Eigen::VectorXcd& H, Eigen::MatrixXcd& Hx,
                                 Eigen::VectorXcd& Ht) const {
  thread_local std::vector<cd> p;
  p = p1_;
  const std::size_t nf = s_.figure_params().size();
  for (std::size_t i = 0; i < nf; ++i) p[i] = t * gamma_ * p0_[i] + (1.0 - t) * p1_[i];
  s_.evaluate_jacobian(x, p, H, Hx, dp_, &Ht);
}

namespace {

double max_abs(const Eigen::VectorXcd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

std::span<const cd> as_span(const Eigen::VectorXcd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

// Newton accuracy is limited by roughly cond * u; the pivots of the LU give a
// cheap estimate of cond.
double attainable_tol(const Eigen::PartialPivLU<Eigen::MatrixXcd>& lu, double tol) {
  const auto d = lu.matrixLU().diagonal().cwiseAbs();
  const double lo = d.minCoeff(), hi = d.maxCoeff();
  if (!(lo > 0.0)) return tol;
  return std::max(tol, 1e-15 * hi / lo);
}

// Condition number of J with row i divided by |x|^(d_i - 1), which makes the
// rows of a homogeneous system comparable.
double scaled_condition(Eigen::MatrixXcd J, const std::vector<int>& degrees, const Eigen::VectorXcd& x) {
  const double s = std::max(1.0, max_abs(x));
  for (Eigen::Index i = 0; i < J.rows(); ++i) {
    const int d = static_cast<std::size_t>(i) < degrees.size() ? degrees[static_cast<std::size_t>(i)] : 1;
    if (d > 1) J.row(i) /= std::pow(s, d - 1);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0.0;
  const double smin = sv[sv.size() - 1];
  if (!(smin > 0.0) || !std::isfinite(smin)) return std::numeric_limits<double>::infinity();
  return sv[0] / smin;
}

double scaled_residual(const Eigen::VectorXcd& F, const std::vector<int>& degrees, const Eigen::VectorXcd& x) {
  const double s = std::max(1.0, max_abs(x));
  double r = 0.0;
  for (Eigen::Index i = 0; i < F.size(); ++i) {
    const int d = static_cast<std::size_t>(i) < degrees.size() ? degrees[static_cast<std::size_t>(i)] : 1;
    r = std::max(r, std::abs(F[i]) / std::pow(s, d));
  }
  return r;
}

void classify_endpoint(const System& target, TrackedSolution& sol, const TrackerSettings& st, bool reached_zero) {
  Eigen::VectorXcd F;
  Eigen::MatrixXcd J;
  const auto degrees = target.degrees();
  bool newton_converged = false;
  if (reached_zero) {
    Eigen::VectorXcd y = sol.x;
    for (int k = 0; k < 8; ++k) {
      target.evaluate(as_span(y), F, J);
      const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(J);
      const Eigen::VectorXcd dx = lu.solve(-F);
      if (!dx.allFinite()) break;
      y += dx;
      const double scale = std::max(1.0, y.norm());
      if (dx.norm() <= 1e-14 * scale) {
        newton_converged = true;
        break;
      }
      if (k >= 2 && dx.norm() <= attainable_tol(lu, st.newton_tol) * scale) newton_converged = true;
    }
    if (y.allFinite()) sol.x = y;
  }
  target.evaluate(as_span(sol.x), F, J);
  sol.residual = scaled_residual(F, degrees, sol.x);
  sol.condition_estimate = scaled_condition(J, degrees, sol.x);
  if (auto d = target.det(as_span(sol.x))) sol.det_value = *d;
  sol.is_real_estimate = reality_defect(sol.x) < st.real_tol;

  if (!sol.x.allFinite() || max_abs(sol.x) > st.diverge_norm) {
    sol.status = PathStatus::diverged;
    return;
  }
  if (reached_zero && newton_converged && sol.condition_estimate < st.singular_condition_threshold &&
      sol.residual < st.endpoint_tol) {
    // X is degenerate when its smallest singular value is within the
    // forward error of the solution.
    bool degenerate = false;
    if (const auto X = target.quadric(as_span(sol.x))) {
      const Eigen::Vector4d sv = Eigen::JacobiSVD<Eigen::Matrix4cd>(*X).singularValues();
      const double floor = std::max(st.det_tol, sol.condition_estimate * 0x1p-53);
      degenerate = !(sv[3] > floor * sv[0]);
    }
    sol.status = degenerate ? PathStatus::singular_endpoint : PathStatus::converged;
    return;
  }
  sol.status = (reached_zero || sol.t_end < st.singular_t) ? PathStatus::singular_endpoint : PathStatus::failed;
}

}  // namespace

TrackedSolution track(const Homotopy& h, const System& target, const Eigen::VectorXcd& x0,
                      const TrackerSettings& st) {
  TrackedSolution sol;
  Eigen::VectorXcd x = x0;
  double t = 1.0;
  double step = std::min(st.initial_step, st.max_step);
  int streak = 0;

  Eigen::VectorXcd H, Ht, v1, v2, v3, v4;
  Eigen::MatrixXcd Hx;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu;

  const auto velocity = [&](const Eigen::VectorXcd& y, double tt, Eigen::VectorXcd& v) {
    h.evaluate(as_span(y), tt, H, Hx, Ht);
    lu.compute(Hx);
    v = lu.solve(-Ht);
    return v.allFinite();
  };

  const auto correct = [&](Eigen::VectorXcd& y, double tt) {
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < st.max_newton_iters; ++k) {
      h.evaluate(as_span(y), tt, H, Hx, Ht);
      lu.compute(Hx);
      const Eigen::VectorXcd dx = lu.solve(-H);
      if (!dx.allFinite()) return false;
      const double nd = dx.norm();
      y += dx;
      const double scale = std::max(1.0, y.norm());
      if (k == 0 && nd > 1e-2 * scale) return false;
      if (nd <= attainable_tol(lu, st.newton_tol) * scale) return true;
      if (k > 0 && nd > 0.25 * prev) return false;
      prev = nd;
    }
    return false;
  };

  bool reached_zero = false;
  bool diverged = false;
  while (true) {
    if (++sol.steps > st.max_steps) break;
    double dt = std::min({step, t, st.max_step});
    double t1 = t - dt;
    if (t1 < 1e-14) {
      t1 = 0.0;
      dt = t;
    }
    Eigen::VectorXcd y;
    bool ok = velocity(x, t, v1);
    if (ok) ok = velocity(x - 0.5 * dt * v1, t - 0.5 * dt, v2);
    if (ok) ok = velocity(x - 0.5 * dt * v2, t - 0.5 * dt, v3);
    if (ok) ok = velocity(x - dt * v3, t1, v4);
    if (ok) {
      y = x - (dt / 6.0) * (v1 + 2.0 * v2 + 2.0 * v3 + v4);
      ok = correct(y, t1);
    }
    if (ok) {
      x = y;
      t = t1;
      if (max_abs(x) > st.diverge_norm) {
        diverged = true;
        break;
      }
      if (t == 0.0) {
        reached_zero = true;
        break;
      }
      if (++streak >= 3) {
        step *= st.step_expansion;
        streak = 0;
      }
    } else {
      step *= st.step_contraction;
      streak = 0;
      if (step < st.min_step * std::min(1.0, t)) break;
    }
  }

  sol.x = x;
  sol.t_end = t;
  if (diverged) {
    sol.status = PathStatus::diverged;
    sol.residual = std::numeric_limits<double>::infinity();
    return sol;
  }
  // A stall close to t = 0 still gets Newton on the target; only a
  // well-conditioned limit counts as converged.
  classify_endpoint(target, sol, st, reached_zero || t < st.singular_t);
  return sol;
}

TrackedSolution track_path(const System& start, const System& target, const Eigen::VectorXcd& x0, cd gamma,
                           const TrackerSettings& settings) {
  const StraightLineHomotopy h(start, target, gamma);
  return track(h, target, x0, settings);
}

std::size_t SolveReport::count(PathStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(solutions.begin(), solutions.end(), [&](const TrackedSolution& t) { return t.status == s; }));
}

std::vector<TrackedSolution> SolveReport::converged() const {
  std::vector<TrackedSolution> out;
  for (const auto& s : solutions)
    if (s.status == PathStatus::converged) out.push_back(s);
  return out;
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& task) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

namespace {

bool same_point(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, double tol) {
  return max_abs(a - b) <= tol * std::max(1.0, std::max(max_abs(a), max_abs(b)));
}

// Groups of converged paths that landed on the same point.
std::vector<std::vector<std::size_t>> duplicate_groups(const std::vector<TrackedSolution>& sols, double tol) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < sols.size(); ++i)
    if (sols[i].status == PathStatus::converged) idx.push_back(i);
  std::vector<int> group(sols.size(), -1);
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    if (group[idx[a]] >= 0) continue;
    std::vector<std::size_t> g{idx[a]};
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      if (group[idx[b]] < 0 && same_point(sols[idx[a]].x, sols[idx[b]].x, tol)) {
        g.push_back(idx[b]);
        group[idx[b]] = 1;
      }
    if (g.size() > 1) groups.push_back(std::move(g));
  }
  return groups;
}

SolveReport total_degree_attempt(const SlpSystem& s, const TrackerSettings& st, std::uint64_t seed) {
  Rng rng(seed);
  SolveReport rep;
  rep.gamma = rng.unit_complex();
  std::vector<cd> r(s.n());
  for (auto& v : r) v = rng.unit_complex();
  const TotalDegreeStart start(s.degrees(), r);
  const PolySystem target(s);
  rep.paths = start.solution_count();
  rep.solutions.resize(rep.paths);
  const auto run = [&](std::size_t k, const TrackerSettings& settings) {
    TrackedSolution sol = track_path(start, target, start.solution(k), rep.gamma, settings);
    sol.path_index = static_cast<int>(k);
    rep.solutions[k] = std::move(sol);
  };
  parallel_for(rep.paths, st.threads, [&](std::size_t k) { run(k, st); });

  auto groups = duplicate_groups(rep.solutions, st.dedup_tol);
  if (!groups.empty()) {
    TrackerSettings careful = st;
    careful.max_step = st.max_step * 0.1;
    careful.initial_step = std::min(st.initial_step, careful.max_step) * 0.1;
    careful.min_step = std::min(st.min_step, careful.initial_step * 0.01);
    std::vector<std::size_t> redo;
    for (const auto& g : groups) redo.insert(redo.end(), g.begin(), g.end());
    parallel_for(redo.size(), st.threads, [&](std::size_t i) { run(redo[i], careful); });
    for (const auto& g : duplicate_groups(rep.solutions, st.dedup_tol))
      for (std::size_t i = 1; i < g.size(); ++i) rep.solutions[g[i]].status = PathStatus::failed;
  }
  return rep;
}

}  // namespace

SolveReport solve_total_degree(const SlpSystem& s, const TrackerSettings& st) {
  st.validate();
  if (s.has_det_variable()) throw std::invalid_argument("solve_total_degree expects the system without D");
  SolveReport best = total_degree_attempt(s, st, st.rng_seed);
  const auto failure_rate = [](const SolveReport& r) {
    return r.paths ? static_cast<double>(r.count(PathStatus::failed)) / static_cast<double>(r.paths) : 0.0;
  };
  if (failure_rate(best) > st.retry_failure_rate) {
    SolveReport again = total_degree_attempt(s, st, derive_seed(st.rng_seed, 1));
    again.attempts = 2;
    if (failure_rate(again) < failure_rate(best)) {
      best = std::move(again);
    } else {
      best.attempts = 2;
    }
  }
  return best;
}

SolveReport parameter_homotopy(const SlpSystem& s0, const std::vector<TrackedSolution>& solutions0,
                               const SlpSystem& s1, const TrackerSettings& st) {
  st.validate();
  if (s0.signature() != s1.signature() || s0.has_det_variable() != s1.has_det_variable())
    throw std::invalid_argument("parameter homotopy needs systems of the same signature");
  if (s0.chart() != s1.chart()) throw std::invalid_argument("parameter homotopy needs a common chart");
  Rng rng(derive_seed(st.rng_seed, 7));
  SolveReport rep;
  rep.gamma = rng.unit_complex();
  const ParameterHomotopy h(s0, s0.params(), s1.params(), rep.gamma);
  const PolySystem target(s1);
  rep.paths = solutions0.size();
  rep.solutions.resize(solutions0.size());
  parallel_for(solutions0.size(), st.threads, [&](std::size_t k) {
    TrackedSolution sol = track(h, target, solutions0[k].x, st);
    sol.path_index = solutions0[k].path_index;
    rep.solutions[k] = std::move(sol);
  });
  for (const auto& g : duplicate_groups(rep.solutions, st.dedup_tol))
    for (std::size_t i = 1; i < g.size(); ++i) rep.solutions[g[i]].status = PathStatus::failed;
  std::sort(rep.solutions.begin(), rep.solutions.end(),
            [](const TrackedSolution& a, const TrackedSolution& b) { return a.path_index < b.path_index; });
  return rep;
}

SolveReport parameter_homotopy(const TangencyInstance& instance0, const std::vector<TrackedSolution>& solutions0,
                               const TangencyInstance& instance1, const TrackerSettings& st) {
  const SlpSystem s0 = assemble(instance0, st.chart_seed);
  const SlpSystem s1 = assemble(instance1, st.chart_seed);
  return parameter_homotopy(s0, solutions0, s1, st);
}

namespace {

// Unit vector (s, c) minimizing |s a + c b| for a = Re x, b = Im x, and the
// minimum squared norm.
std::pair<std::array<double, 2>, double> best_rotation(const Eigen::VectorXcd& x) {
  const Eigen::VectorXd a = x.real(), b = x.imag();
  Eigen::Matrix2d M;
  M << a.dot(a), a.dot(b), a.dot(b), b.dot(b);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(M);
  const Eigen::Vector2d v = es.eigenvectors().col(0);
  return {{v[0], v[1]}, std::max(0.0, es.eigenvalues()[0])};
}

}  // namespace

double reality_defect(const Eigen::VectorXcd& x) {
  const double n = x.norm();
  if (n == 0.0) return 0.0;
  return std::sqrt(best_rotation(x).second) / n;
}

Eigen::VectorXcd phase_aligned(const Eigen::VectorXcd& x) {
  // Im(e^{i theta} x) = sin(theta) a + cos(theta) b.
  const auto [v, _] = best_rotation(x);
  const cd phase(v[1], v[0]);
  Eigen::VectorXcd y = x * phase;
  Eigen::Index k = 0;
  y.cwiseAbs().maxCoeff(&k);
  if (y[k].real() < 0) y = -y;
  return y;
}

std::size_t count_real(const std::vector<TrackedSolution>& solutions, double real_tol) {
  return static_cast<std::size_t>(std::count_if(solutions.begin(), solutions.end(), [&](const TrackedSolution& s) {
    return s.status == PathStatus::converged && reality_defect(s.x) < real_tol;
  }));
}

}  // namespace tq
