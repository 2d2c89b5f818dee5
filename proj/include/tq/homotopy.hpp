#pragma once

// Predictor-corrector path tracking in double precision.

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "tq/polysys.hpp"

namespace tq {

struct TrackerSettings {
  double initial_step = 0.1;
  double max_step = 0.1;
  double min_step = 1e-7;           // relative to the remaining t below t = 1
  double newton_tol = 1e-10;
  int max_newton_iters = 3;
  double step_expansion = 1.5;
  double step_contraction = 0.5;
  double endpoint_tol = 1e-9;
  double singular_condition_threshold = 1e12;
  double real_tol = 1e-6;
  std::uint64_t rng_seed = 1;
  std::uint64_t chart_seed = 1;
  int threads = 0;                  // 0: hardware concurrency
  int max_steps = 20000;            // per path
  double diverge_norm = 1e7;
  double det_tol = 1e-13;           // sigma_min(X) / sigma_max(X) below this counts as degenerate
  double dedup_tol = 1e-8;
  double retry_failure_rate = 0.05;
  double singular_t = 1e-3;         // a stall below this t is a singular endpoint

  void validate() const;
};

nlohmann::json to_json(const TrackerSettings& s);
/// Reads any subset of the fields; the rest keep their defaults.
TrackerSettings settings_from_json(const nlohmann::json& j, TrackerSettings base = {});

enum class PathStatus { converged, singular_endpoint, diverged, failed };
std::string to_string(PathStatus s);

struct TrackedSolution {
  Eigen::VectorXcd x;
  int path_index = -1;
  double residual = 0.0;
  double condition_estimate = 0.0;
  PathStatus status = PathStatus::failed;
  cd det_value{0.0, 0.0};
  bool is_real_estimate = false;
  double t_end = 1.0;  // where tracking stopped
  int steps = 0;
};

nlohmann::json to_json(const TrackedSolution& s);
TrackedSolution solution_from_json(const nlohmann::json& j);

/// A square system F(x) with Jacobian.
class System {
 public:
  virtual ~System() = default;
  virtual std::size_t n() const = 0;
  virtual void evaluate(std::span<const cd> x, Eigen::VectorXcd& F, Eigen::MatrixXcd& J) const = 0;
  virtual std::vector<int> degrees() const { return std::vector<int>(n(), 1); }
  /// det X for tangency systems.
  virtual std::optional<cd> det(std::span<const cd>) const { return std::nullopt; }
  /// The symmetric matrix X for tangency systems.
  virtual std::optional<Eigen::Matrix4cd> quadric(std::span<const cd>) const { return std::nullopt; }
};

/// A tangency system with its own parameters.
class PolySystem : public System {
 public:
  explicit PolySystem(const SlpSystem& s) : s_(s), p_(s.params()) {}
  PolySystem(const SlpSystem& s, std::vector<cd> p) : s_(s), p_(std::move(p)) {}
  std::size_t n() const override { return s_.n(); }
  void evaluate(std::span<const cd> x, Eigen::VectorXcd& F, Eigen::MatrixXcd& J) const override {
    s_.evaluate_jacobian(x, p_, F, J);
  }
  std::vector<int> degrees() const override { return s_.degrees(); }
  std::optional<cd> det(std::span<const cd> x) const override;
  std::optional<Eigen::Matrix4cd> quadric(std::span<const cd> x) const override;

 private:
  const SlpSystem& s_;
  std::vector<cd> p_;
};

/// x_i^{d_i} - r_i.
class TotalDegreeStart : public System {
 public:
  TotalDegreeStart(std::vector<int> degrees, std::vector<cd> r) : d_(std::move(degrees)), r_(std::move(r)) {}
  std::size_t n() const override { return d_.size(); }
  void evaluate(std::span<const cd> x, Eigen::VectorXcd& F, Eigen::MatrixXcd& J) const override;
  std::vector<int> degrees() const override { return d_; }
  std::uint64_t solution_count() const;
  /// Start solution number k in mixed radix over the degrees.
  Eigen::VectorXcd solution(std::uint64_t k) const;

 private:
  std::vector<int> d_;
  std::vector<cd> r_;
};

/// A system given by a callback, mostly for small tests.
class FunctionSystem : public System {
 public:
  using Fn = std::function<void(std::span<const cd>, Eigen::VectorXcd&, Eigen::MatrixXcd&)>;
  FunctionSystem(std::size_t n, Fn fn) : n_(n), fn_(std::move(fn)) {}
  std::size_t n() const override { return n_; }
  void evaluate(std::span<const cd> x, Eigen::VectorXcd& F, Eigen::MatrixXcd& J) const override { fn_(x, F, J); }

 private:
  std::size_t n_;
  Fn fn_;
};

/// H(x, t) with t running from 1 down to 0.
class Homotopy {
 public:
  virtual ~Homotopy() = default;
  virtual std::size_t n() const = 0;
  virtual void evaluate(std::span<const cd> x, double t, Eigen::VectorXcd& H, Eigen::MatrixXcd& Hx,
                        Eigen::VectorXcd& Ht) const = 0;
};

/// gamma t G(x) + (1 - t) F(x).
class StraightLineHomotopy : public Homotopy {
 public:
  StraightLineHomotopy(const System& start, const System& target, cd gamma)
      : g_(start), f_(target), gamma_(gamma) {}
  std::size_t n() const override { return f_.n(); }
  void evaluate(std::span<const cd> x, double t, Eigen::VectorXcd& H, Eigen::MatrixXcd& Hx,
                Eigen::VectorXcd& Ht) const override;

 private:
  const System& g_;
  const System& f_;
  cd gamma_;
};

/// F(x; p(t)) with p(t) = t gamma p0 + (1 - t) p1 on the figure coordinates,
/// chart fixed.
class ParameterHomotopy : public Homotopy {
 public:
  ParameterHomotopy(const SlpSystem& s, std::vector<cd> p0, std::vector<cd> p1, cd gamma);
  std::size_t n() const override { return s_.n(); }
  void evaluate(std::span<const cd> x, double t, Eigen::VectorXcd& H, Eigen::MatrixXcd& Hx,
                Eigen::VectorXcd& Ht) const override;

 private:
  const SlpSystem& s_;
  std::vector<cd> p0_, p1_, dp_;
  cd gamma_;
};

/// Tracks x0 from t = 1 to t = 0 and classifies the endpoint against
/// `target` (the system at t = 0).
TrackedSolution track(const Homotopy& h, const System& target, const Eigen::VectorXcd& x0,
                      const TrackerSettings& settings);

TrackedSolution track_path(const System& start, const System& target, const Eigen::VectorXcd& x0, cd gamma,
                           const TrackerSettings& settings);

struct SolveReport {
  std::vector<TrackedSolution> solutions;  // one per path, sorted by path_index
  std::uint64_t paths = 0;
  cd gamma{1.0, 0.0};
  int attempts = 1;
  std::size_t count(PathStatus s) const;
  /// Converged solutions (nonsingular, det X != 0).
  std::vector<TrackedSolution> converged() const;
};

SolveReport solve_total_degree(const SlpSystem& s, const TrackerSettings& settings);

/// Moves converged solutions of `s0` to the system with the figure
/// coordinates of `s1`. Both must share the signature and chart.
SolveReport parameter_homotopy(const SlpSystem& s0, const std::vector<TrackedSolution>& solutions0,
                               const SlpSystem& s1, const TrackerSettings& settings);

SolveReport parameter_homotopy(const TangencyInstance& instance0, const std::vector<TrackedSolution>& solutions0,
                               const TangencyInstance& instance1, const TrackerSettings& settings);

/// Imaginary norm of x after the best unit phase rotation, relative to |x|.
double reality_defect(const Eigen::VectorXcd& x);

/// x rotated by the unit phase that makes it closest to real.
Eigen::VectorXcd phase_aligned(const Eigen::VectorXcd& x);

std::size_t count_real(const std::vector<TrackedSolution>& solutions, double real_tol);

/// Runs `task(i)` for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& task);

}  // namespace tq
