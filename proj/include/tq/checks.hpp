#pragma once

// Exact self-checks on random rational data, each against an oracle that is
// computed a second way (Leibniz expansion, Sylvester resultant, restricted
// determinants by Gaussian elimination).

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace tq {

struct CheckOutcome {
  std::string name;
  bool pass = true;
  int trials = 0;
  std::string witness;  // first failing input, when any
};

nlohmann::json to_json(const CheckOutcome& c);

/// Sigma(U_eps, X) has eps-order exactly 8 with leading coefficient
/// det(V)^-12 (P X P^T)^2 det(L X L^T)^2 det(H X H^T)^2.
std::vector<CheckOutcome> check_degeneration(int trials, std::uint64_t seed);

/// Plucker and incidence identities, exterior powers, adjugate, the
/// complete-quadrics generators, the bidegree of Sigma and the resultant
/// oracle.
std::vector<CheckOutcome> check_identities(std::uint64_t seed, int generator_trials = 1000, int sigma_trials = 50);

bool all_pass(const std::vector<CheckOutcome>& v);

}  // namespace tq
