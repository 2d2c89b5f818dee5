#pragma once

// Krawczyk certification of approximate solutions over complex interval
// arithmetic, and the distinct / real / nondegenerate verdicts.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "tq/homotopy.hpp"
#include "tq/interval.hpp"
#include "tq/polysys.hpp"
#include "tq/slp.hpp"

namespace tq {

/// A square system for certification: the tape takes n variables followed by
/// exactly known parameters.
struct CertSystem {
  std::shared_ptr<const slp::Tape> tape;
  std::size_t n = 0;
  std::vector<Rational> params;
  std::optional<std::size_t> det_index;  // coordinate holding D = det X
  bool real = true;                       // all coefficients real

  /// From a tangency system with the determinant variable. Nonreal chart
  /// coefficients make the system nonreal.
  static CertSystem from(const SlpSystem& s11);

  void evaluate(std::span<const cd> x, Eigen::VectorXcd& F, Eigen::MatrixXcd& J) const;
};

enum class Reality { real, nonreal, unknown };
std::string to_string(Reality r);

struct CertificateBox {
  std::vector<CInterval> intervals;  // D first for tangency systems
  Eigen::VectorXcd solution_approx;
  bool certified = false;
  Reality real = Reality::unknown;
  bool nondegenerate = false;
  bool distinct = false;             // set by verdicts
  bool extended = false;             // needed the quad tier
  double inflation = 0.0;            // final radius
  int attempts = 0;
  int path_index = -1;
  std::vector<QCInterval> qintervals;  // quad box when extended
};

nlohmann::json to_json(const CertificateBox& b);

struct CertifySettings {
  double inflation_factor = 100.0;  // times the Newton step at the approximation
  double inflation_floor = 1e-12;   // relative to max(1, |x|)
  int max_attempts = 8;
  bool extended = true;             // quad refinement and quad intervals when double fails
  int threads = 0;
  std::uint64_t chart_seed = 1;

  void validate() const;
};

nlohmann::json to_json(const CertifySettings& s);
CertifySettings certify_settings_from_json(const nlohmann::json& j, CertifySettings base = {});

/// Krawczyk test with adaptive radius starting from `inflation` around x.
CertificateBox krawczyk_certify(const CertSystem& s, const Eigen::VectorXcd& x, double inflation,
                                const CertifySettings& settings = {});
CertificateBox krawczyk_certify(const SlpSystem& s11, const Eigen::VectorXcd& x, double inflation,
                                const CertifySettings& settings = {});

/// Starting radius: inflation_factor times the Newton step, with the floor.
double default_inflation(const CertSystem& s, const Eigen::VectorXcd& x, const CertifySettings& settings);

/// K(B) inside the interior of B for the fixed box B centred at its midpoint.
bool krawczyk_box_test(const CertSystem& s, const std::vector<CInterval>& box);
bool krawczyk_box_test(const CertSystem& s, const std::vector<QCInterval>& box);

/// 0 outside the interval for D.
bool nondegeneracy_check(const CertificateBox& box, std::size_t det_index = 0);

struct CertificationSummary {
  std::size_t given = 0;
  std::size_t certified = 0;
  std::size_t certified_real = 0;
  std::size_t distinct = 0;
  std::size_t distinct_real = 0;
  std::size_t nondegenerate = 0;
  std::size_t nonreal = 0;  // certified and proven nonreal
  std::size_t real_unknown = 0;

  std::string to_text() const;
};

nlohmann::json to_json(const CertificationSummary& s);

/// Fills distinct and real on the boxes and counts.
CertificationSummary verdicts(const CertSystem& s, std::vector<CertificateBox>& boxes);

/// Moves ten-variable solutions (any chart) into the chart of s11 and
/// appends D.
Eigen::VectorXcd to_chart_with_det(const Eigen::VectorXcd& x10, const SlpSystem& s11);

struct CertificationReport {
  SlpSystem system;  // real chart, with D
  std::vector<CertificateBox> boxes;
  CertificationSummary summary;
  std::size_t certified_nondegenerate_distinct() const;
};

nlohmann::json to_json(const CertificationReport& r);

/// Certifies the converged and singular endpoints of a solve in a real chart
/// chosen from chart_seed.
CertificationReport certify_solutions(const TangencyInstance& instance, const SolveReport& report,
                                      const CertifySettings& settings);

struct SolveCertifyReport {
  SolveReport solve;  // candidates of every pass, path indices offset per pass
  CertificationReport certification;
  int passes = 1;
};

/// Total-degree solve and certification. While fewer than `expected`
/// distinct nondegenerate solutions are certified, solves again with a fresh
/// gamma (up to `max_passes` solves in all) and certifies the merged
/// candidates; duplicates fall out of the distinctness test.
SolveCertifyReport solve_and_certify(const TangencyInstance& instance, const TrackerSettings& tracker,
                                     const CertifySettings& certify, std::optional<std::size_t> expected = std::nullopt,
                                     int max_passes = 3);

}  // namespace tq
