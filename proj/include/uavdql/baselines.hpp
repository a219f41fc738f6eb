#pragma once

#include "uavdql/trace.hpp"

namespace uavdql {

/// Nearest-neighbour mission: always fly to the closest unserved node,
/// lowest id on ties. Priorities only enter the revenue bookkeeping.
EpisodeTrace greedy_rollout(const Scenario& scenario, const EnvConfig& config);

}  // namespace uavdql
