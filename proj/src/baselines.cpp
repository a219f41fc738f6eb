#include "uavdql/baselines.hpp"

#include <limits>

namespace uavdql {

EpisodeTrace greedy_rollout(const Scenario& scenario, const EnvConfig& config) {
    EpisodeTrace trace;
    trace.initial = initial_state(scenario);
    trace.steps.reserve(scenario.node_count());

    SimState state = trace.initial;
    while (!is_terminal(state)) {
        NodeId next = -1;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < scenario.node_count(); ++i) {
            if (state.priorities[i] == 0) continue;
            const double d = distance(state.uav_pos, position_of(scenario, scenario.nodes[i].cell));
            if (d < best) {
                best = d;
                next = static_cast<NodeId>(i);
            }
        }
        trace.steps.push_back(apply_action(scenario, state, next, config));
        state = trace.steps.back().next_state;
    }
    return trace;
}

}  // namespace uavdql
