#pragma once

#include <span>
#include <vector>

#include "uavdql/env.hpp"

namespace uavdql {

// Ordered record of one mission.
struct EpisodeTrace {
    SimState initial;
    std::vector<Transition> steps;

    std::size_t size() const { return steps.size(); }
    bool complete() const { return steps.empty() ? is_terminal(initial) : is_terminal(steps.back().next_state); }

    std::vector<NodeId> order() const;
    std::vector<double> revenues() const;
    double total_energy() const;
    double total_distance() const;
    double accumulated_revenue() const;
    double discounted_return(double gamma) const;
};

/// r0 + g*(r1 + g*(r2 + ...)), evaluated innermost first.
///
/// Every component that reports a discounted return goes through this so
/// that identical reward sequences produce bit-identical returns.
double discounted_return(std::span<const double> revenues, double gamma);

/// Replays a fixed serving order from the scenario's start state.
/// Throws ContractViolation if the order repeats a node.
EpisodeTrace replay_order(const Scenario& scenario, const EnvConfig& config,
                          std::span<const NodeId> order);

}  // namespace uavdql
