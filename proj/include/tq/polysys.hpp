#pragma once

// Square polynomial systems for a tangency problem: one condition per figure
// on the ten entries of X, a linear chart sum c_i x_i = 1, and optionally an
// extra variable D with the equation D - det X = 0.
//
// A single tape serves all instances of a signature. Its inputs are
//   [D?] x_0..x_9 | figure coordinates | chart coefficients c_0..c_9
// so instances, and points along a parameter homotopy, differ only in inputs.

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "tq/geometry.hpp"
#include "tq/interval.hpp"
#include "tq/random.hpp"
#include "tq/slp.hpp"

namespace tq {

using cd = std::complex<double>;

struct Signature {
  int alpha = 0;  // points
  int beta = 0;   // lines
  int gamma = 0;  // planes
  int delta = 0;  // quadrics

  bool valid() const { return alpha >= 0 && beta >= 0 && gamma >= 0 && delta >= 0 && alpha + beta + gamma + delta == 9; }
  std::string to_string() const;
  /// "a,b,g" or "a,b,g,d".
  static Signature parse(const std::string& text);
  auto operator<=>(const Signature&) const = default;
};

struct TangencyInstance {
  std::vector<Figure> points;
  std::vector<Figure> lines;
  std::vector<Figure> planes;
  std::vector<Figure> quadrics;

  Signature signature() const;
  /// Throws std::invalid_argument unless there are nine figures of the right kinds.
  void validate() const;
  /// Figures in equation order: points, lines, planes, quadrics.
  std::vector<Figure> figures() const;
  /// Grassmannian warnings for lines that are not decomposable.
  std::vector<std::string> warnings() const;
};

nlohmann::json to_json(const TangencyInstance& inst);
TangencyInstance instance_from_json(const nlohmann::json& j);
TangencyInstance load_instance(const std::string& path);
void save_instance(const TangencyInstance& inst, const std::string& path);

/// Gaussian real figures with dyadic coordinates; lines and planes are spans
/// of Gaussian vectors so they are exact Plücker/plane coordinates.
TangencyInstance random_instance(const Signature& sig, Rng& rng);

Figure random_figure(FigureKind kind, Rng& rng);

/// Gaussian rounded to a multiple of 2^-20.
Rational dyadic_gaussian(Rng& rng);

class SlpSystem {
 public:
  std::size_t n() const { return n_; }
  const std::vector<int>& degrees() const { return degrees_; }
  std::uint64_t total_degree() const;
  bool has_det_variable() const { return has_det_; }
  const Signature& signature() const { return sig_; }
  const std::array<cd, 10>& chart() const { return chart_; }
  /// Offset of x_0 within the variable vector.
  std::size_t x_offset() const { return has_det_ ? 1 : 0; }
  const slp::Tape& tape() const { return *tape_; }
  const std::shared_ptr<const slp::Tape>& tape_ptr() const { return tape_; }

  /// Normalized exact figure coordinates in equation order.
  const std::vector<Rational>& figure_params() const { return figure_params_; }
  /// Figure coordinates as complex doubles followed by the chart.
  std::vector<cd> params() const;
  std::size_t num_params() const { return figure_params_.size() + 10; }

  Eigen::VectorXcd evaluate(const Eigen::VectorXcd& x) const;
  Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& x) const;

  /// Residual and Jacobian at (x, p). When `dp` is given, `Fp` receives the
  /// derivative of F in the parameter direction dp.
  void evaluate_jacobian(std::span<const cd> x, std::span<const cd> p, Eigen::VectorXcd& F, Eigen::MatrixXcd& J,
                         std::span<const cd> dp = {}, Eigen::VectorXcd* Fp = nullptr) const;

  /// Interval evaluation with rigorous enclosures of the exact figure
  /// coordinates. The chart is taken as exact doubles.
  std::vector<CInterval> interval_params() const;
  std::vector<CInterval> evaluate_interval(std::span<const CInterval> x) const;
  /// Interval Jacobian, row-major n x n.
  std::vector<CInterval> jacobian_interval(std::span<const CInterval> x) const;

  /// Same equations with a different chart.
  SlpSystem with_chart(const std::array<cd, 10>& chart) const;

 private:
  friend SlpSystem assemble(const TangencyInstance& instance, std::uint64_t chart_seed);
  friend SlpSystem with_det_variable(const SlpSystem& s);

  std::size_t n_ = 10;
  std::vector<int> degrees_;
  bool has_det_ = false;
  Signature sig_;
  std::array<cd, 10> chart_{};
  std::vector<Rational> figure_params_;
  std::vector<cd> figure_params_d_;
  std::shared_ptr<const slp::Tape> tape_;
};

/// The ten-variable system: nine conditions and a random unit-modulus complex
/// chart drawn from chart_seed.
SlpSystem assemble(const TangencyInstance& instance, std::uint64_t chart_seed);

/// Appends D with the equation D - det X = 0. Throws std::logic_error if D is
/// already present.
SlpSystem with_det_variable(const SlpSystem& s);

/// Random real chart coefficients (Gaussian doubles).
std::array<cd, 10> random_real_chart(Rng& rng);

}  // namespace tq
