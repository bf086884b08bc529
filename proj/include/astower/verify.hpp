#pragma once

#include <random>
#include <string>
#include <vector>

#include "astower/oracle.hpp"

namespace astower::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    bool exhaustive = false;       // basis-exhaustive checks on every feasible level
    std::size_t mv_limit = 512;    // size cap for multivariate oracle reductions
    std::size_t oracle_limit = 256; // size cap for conjugate-sum oracles
    std::size_t samples = 25;      // random samples per level and suite
};

// Runs the invariant suites of every module at oracle-feasible sizes; a suite
// stops at its first failure and reports it.
std::vector<CheckResult> verify_tower(const TowerDescriptor& t, const VerifyOptions& opts = {});

TowerElement random_element(const TowerDescriptor& t, std::uint32_t level, std::mt19937_64& rng);

// General tower with uniformly random valid generators (rejection sampling on
// the trace condition), images computed.
GeneralTower random_general_tower(const TowerDescriptor& t, std::size_t k, std::mt19937_64& rng);

// The primitive tower presented as a general tower (generators from the
// schedule, on the multivariate basis); images computed.
GeneralTower self_general_tower(const TowerDescriptor& t, std::size_t k);

} // namespace astower::verify
