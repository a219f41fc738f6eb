#pragma once

#include <string_view>

namespace uavdql {

struct RevenueWeights {
    double w1 = 30.0;   // reward per priority unit
    double w2 = 7.5;    // delay penalty, 1/s
    double w3 = 0.1;    // energy penalty, 1/J

    void validate() const;

    friend bool operator==(const RevenueWeights&, const RevenueWeights&) = default;
};

namespace presets {
inline constexpr RevenueWeights kDefault{30.0, 7.5, 0.1};
inline constexpr RevenueWeights kDql1{30000.0, 7.5, 0.1};  // priority-first
inline constexpr RevenueWeights kDql2{30.0, 750.0, 0.1};   // delay-averse
inline constexpr RevenueWeights kDql3{30.0, 7.5, 100.0};   // energy-averse
}  // namespace presets

// Resolves `default`, `dql1`, `dql2`, `dql3` or an explicit `w1,w2,w3` triple.
// Throws DomainError on anything else.
RevenueWeights parse_weights(std::string_view text);

/// Revenue of one service: w1*served_priority - w2*waiting_priority_sum*t_s - w3*energy.
///
/// `waiting_priority_sum` is the priority mass still waiting, excluding the
/// node being served. A served_priority of 0 means the node was already
/// served and raises ContractViolation.
double revenue(const RevenueWeights& weights, int served_priority, double waiting_priority_sum,
               double t_s, double energy);

}  // namespace uavdql
