#include "uavdql/trace.hpp"

#include <string>

#include "uavdql/errors.hpp"

namespace uavdql {

std::vector<NodeId> EpisodeTrace::order() const {
    std::vector<NodeId> out;
    out.reserve(steps.size());
    for (const Transition& t : steps) out.push_back(t.action);
    return out;
}

std::vector<double> EpisodeTrace::revenues() const {
    std::vector<double> out;
    out.reserve(steps.size());
    for (const Transition& t : steps) out.push_back(t.revenue);
    return out;
}

double EpisodeTrace::total_energy() const {
    double e = 0.0;
    for (const Transition& t : steps) e += t.energy;
    return e;
}

double EpisodeTrace::total_distance() const {
    double d = 0.0;
    for (const Transition& t : steps) d += t.distance;
    return d;
}

double EpisodeTrace::accumulated_revenue() const {
    double r = 0.0;
    for (const Transition& t : steps) r += t.revenue;
    return r;
}

double EpisodeTrace::discounted_return(double gamma) const {
    const std::vector<double> r = revenues();
    return uavdql::discounted_return(r, gamma);
}

double discounted_return(std::span<const double> revenues, double gamma) {
    double acc = 0.0;
    for (auto it = revenues.rbegin(); it != revenues.rend(); ++it) acc = *it + gamma * acc;
    return acc;
}

EpisodeTrace replay_order(const Scenario& scenario, const EnvConfig& config, std::span<const NodeId> order) {
    EpisodeTrace trace;
    trace.initial = initial_state(scenario);
    trace.steps.reserve(order.size());
    const SimState* state = &trace.initial;
    for (NodeId a : order) {
        trace.steps.push_back(apply_action(scenario, *state, a, config));
        state = &trace.steps.back().next_state;
    }
    return trace;
}

}  // namespace uavdql
