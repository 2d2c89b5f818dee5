#pragma once

// Counts of quadrics tangent to nine figures: the triangle (no quadric
// conditions), the pyramid above it, the aggregates over the triangle and the
// nine-flag systems.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "tq/certify.hpp"
#include "tq/geometry.hpp"
#include "tq/homotopy.hpp"
#include "tq/polysys.hpp"

namespace tq {

enum class Provenance { quoted, bezout, census, recurrence };
std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

struct CountEntry {
  std::uint64_t count = 0;
  Provenance provenance = Provenance::census;
  std::string note;
};

class UnknownDependency : public std::runtime_error {
 public:
  explicit UnknownDependency(const Signature& s)
      : std::runtime_error("unknown count for signature " + s.to_string()), missing(s) {}
  Signature missing;
};

class IncompleteTriangle : public std::runtime_error {
 public:
  explicit IncompleteTriangle(std::vector<Signature> m);
  std::vector<Signature> missing;
};

class InconsistentCensus : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 2^beta 3^gamma when delta = 0, alpha >= 4 and gamma <= 2.
std::optional<std::uint64_t> bezout_count(const Signature& s);

/// 9! / (alpha! beta! gamma!) for delta = 0.
std::uint64_t trinomial9(const Signature& s);

/// The 55 signatures with delta = 0.
std::vector<Signature> triangle_signatures();

class CountTable {
 public:
  /// Quoted triangle entries and the Bezout region.
  static CountTable builtin();

  const CountEntry* find(const Signature& s) const;
  std::optional<std::uint64_t> get(const Signature& s) const;
  void set(const Signature& s, std::uint64_t count, Provenance p, std::string note = {});
  /// Keeps existing entries whose provenance ranks at least as high.
  void merge(const CountTable& other);
  const std::map<Signature, CountEntry>& entries() const { return entries_; }

  std::vector<Signature> missing_triangle() const;
  bool triangle_complete() const { return missing_triangle().empty(); }

  /// Copies known delta = 0 entries to their duals (alpha and gamma swapped)
  /// where those are unknown.
  void fill_duals();

  /// Violations of the Bezout, duality, bound and recurrence invariants.
  std::vector<std::string> check() const;

  nlohmann::json to_json() const;
  static CountTable from_json(const nlohmann::json& j);
  static CountTable load(const std::string& path);
  void save(const std::string& path) const;

 private:
  std::map<Signature, CountEntry> entries_;
};

/// Twice the sum of the three entries below; memoized with provenance
/// recurrence. delta = 0 entries must be present. Throws UnknownDependency.
std::uint64_t pyramid_entry(CountTable& table, const Signature& s);

/// 2^9 times the trinomial-weighted triangle sum. Throws IncompleteTriangle.
std::uint64_t q9_aggregate(const CountTable& table);
/// The trinomial-weighted triangle sum.
std::uint64_t flag_power_aggregate(const CountTable& table);

struct CensusSettings {
  int trials = 3;
  std::uint64_t seed = 1;
  std::uint64_t path_budget = 50000;
  int reruns = 2;        // fresh gamma passes for trials below the best count
  int replacements = 2;  // fresh instances for trials still below it
  TrackerSettings tracker;
  CertifySettings certify;
};

struct CensusTrial {
  std::uint64_t instance_seed = 0;
  std::size_t certified = 0;  // distinct nondegenerate certified solutions
  std::size_t real = 0;
  std::size_t converged = 0;
  std::size_t failed = 0;
  int reruns = 0;
  double seconds = 0.0;
};

struct CensusResult {
  Signature signature;
  std::uint64_t count = 0;
  std::vector<CensusTrial> trials;
  std::vector<CensusTrial> replaced;  // ill-conditioned instances set aside
};

nlohmann::json to_json(const CensusResult& r);

/// Solves and certifies random real instances; all trials must agree.
/// Throws InconsistentCensus on disagreement and std::runtime_error when the
/// path budget or the path failure rate is exceeded.
CensusResult census(const Signature& s, const CensusSettings& settings);

/// Random real flag from a Gaussian dyadic 4x4 matrix.
Flag<Rational> random_flag(Rng& rng);

using Psi = std::array<FigureKind, 9>;

/// Point, line or plane of flag i as psi(i) says. Throws std::invalid_argument
/// for a bad flag or a quadric in psi.
TangencyInstance flag_system(const std::vector<Flag<Rational>>& flags, const Psi& psi);

Signature signature_of(const Psi& psi);

/// All 3^9 choices of psi in lexicographic order.
void for_each_psi(const std::function<void(const Psi&)>& visit);

/// Sum over all psi of the triangle entry for its signature.
std::uint64_t flag_system_total(const CountTable& table);

}  // namespace tq
