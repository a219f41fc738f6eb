#pragma once

#include <cstddef>
#include <vector>

#include "uavdql/trace.hpp"

namespace uavdql {

struct OracleResult {
    std::vector<NodeId> order;
    double discounted_return = 0.0;
};

inline constexpr std::size_t kPermutationOracleLimit = 9;
inline constexpr std::size_t kDpOracleLimit = 20;

// Exhaustive search over all n! serving orders. Ties go to the
// lexicographically smallest order. Throws CapacityError above the limit.
OracleResult optimal_by_permutation(const Scenario& scenario, const EnvConfig& config, double gamma);

// Subset dynamic program over (last served node, served set), O(n^2 2^n).
// Uses the same nesting as discounted_return(), so it agrees bit-exactly
// with the permutation search. Throws CapacityError above the limit.
OracleResult optimal_by_dp(const Scenario& scenario, const EnvConfig& config, double gamma);

}  // namespace uavdql
