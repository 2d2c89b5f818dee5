#pragma once

// Hill climbing over real instances to raise the number of real solutions.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "tq/certify.hpp"
#include "tq/homotopy.hpp"
#include "tq/polysys.hpp"
#include "tq/random.hpp"

namespace tq {

enum class SeedStrategy { random, coordinate_lines, coordinate_planes, twisted_cubic };
std::string to_string(SeedStrategy s);
SeedStrategy seed_strategy_from_string(const std::string& s);

/// Starting instance for a strategy. `perturbation` < 0 uses the strategy
/// default (1e-3 for coordinate lines and the twisted cubic, 0 for
/// coordinate planes). Throws std::invalid_argument when the signature does
/// not fit the strategy.
TangencyInstance seed_instance(const Signature& sig, SeedStrategy strategy, Rng& rng, double perturbation = -1.0);

/// Every figure moved by a relative Gaussian perturbation of size `scale`.
/// Lines move through their spanning points so they stay decomposable.
TangencyInstance perturb_instance(const TangencyInstance& inst, double scale, Rng& rng);

struct SearchSettings {
  int iters = 500;
  int neighbors = 32;
  double scale = 0.05;           // initial neighbourhood scale
  double min_scale = 1e-6;
  int anneal_every = 10;         // halve the scale after this many idle rounds
  int stagnation = 50;           // idle rounds before a restart or stop
  int restarts = 0;              // fresh restarts from the seed after stagnation
  double min_separation = 1e-7;  // neighbours with closer solutions are discarded
  double max_failure_rate = 0.1;
  std::uint64_t seed = 1;
  bool verify = true;            // total-degree solve and certification of the final state
  std::string checkpoint_path;   // written after every accepted move
  std::string log_path;          // JSON lines, one per round
  std::string record_path;       // final verified instance
  TrackerSettings tracker;
  CertifySettings certify;
};

struct SearchState {
  TangencyInstance instance;
  std::vector<TrackedSolution> solutions;  // converged solutions of instance
  std::size_t real_count = 0;
  double nearness = 0.0;    // smallest aligned imaginary part over nonreal solutions
  std::size_t target = 0;   // number of complex solutions
  int iteration = 0;
  int stagnant = 0;
  int restarts_used = 0;
  double scale = 0.0;
  std::uint64_t rng_seed = 1;
  bool verified = false;
  std::size_t verified_real = 0;       // certified real after verification
  std::size_t verified_certified = 0;  // certified distinct nondegenerate
};

nlohmann::json to_json(const SearchState& s);
SearchState search_state_from_json(const nlohmann::json& j);

/// Number of real solutions and the nearness of the nonreal ones.
std::pair<std::size_t, double> reality_score(const std::vector<TrackedSolution>& solutions, double real_tol);

/// Solves `seed` from scratch and climbs. With `resume` the climb continues
/// from a checkpointed state.
SearchState hill_climb(const Signature& sig, const TangencyInstance& seed, const SearchSettings& settings,
                       std::optional<SearchState> resume = std::nullopt);

/// Total-degree solve and certification; fills the verified fields.
void verify_state(SearchState& state, const SearchSettings& settings);

}  // namespace tq
