#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "uavdql/energy.hpp"
#include "uavdql/revenue.hpp"

namespace uavdql {

using NodeId = int;

struct GridCell {
    int gx = 0;
    int gy = 0;

    friend auto operator<=>(const GridCell&, const GridCell&) = default;
};

struct Position {
    double x = 0.0;  // m
    double y = 0.0;  // m

    friend bool operator==(const Position&, const Position&) = default;
};

struct NodePoint {
    NodeId id = 0;
    GridCell cell;
    int priority = 1;  // 1 low .. 4 very high

    friend bool operator==(const NodePoint&, const NodePoint&) = default;
};

inline constexpr int kMinPriority = 1;
inline constexpr int kMaxPriority = 4;

// Immutable problem instance. Nodes are indexed by their position in `nodes`.
struct Scenario {
    int grid_width = 6;
    int grid_height = 6;
    double cell_side = 50.0;
    GridCell uav_start{0, 0};
    std::vector<NodePoint> nodes;
    std::uint64_t seed = 0;

    std::size_t node_count() const { return nodes.size(); }
    bool contains(GridCell cell) const;

    // Checks every structural invariant; throws DomainError on the first violation.
    void validate() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Constants shared by every rollout on a scenario.
struct EnvConfig {
    PowerParams power;
    RevenueWeights weights;
};

struct SimState {
    GridCell uav_cell;
    Position uav_pos;
    std::vector<int> priorities;  // 0 = served
    double clock = 0.0;           // s since episode start

    friend bool operator==(const SimState&, const SimState&) = default;
};

struct Transition {
    NodeId action = 0;
    int served_priority = 0;
    double t_s = 0.0;
    double distance = 0.0;
    double energy = 0.0;
    double revenue = 0.0;
    SimState next_state;
};

Position position_of(const Scenario& scenario, GridCell cell);
double distance(Position a, Position b);

SimState initial_state(const Scenario& scenario);
bool is_terminal(const SimState& state);

/// Flies from the current perch to `action` and collects its data.
///
/// The waiting-priority penalty uses the predecessor state's unserved
/// priorities, excluding the node being served. Service takes no time.
Transition apply_action(const Scenario& scenario, const SimState& state, NodeId action,
                        const EnvConfig& config);

/// Random instance: nodes uniform over all cells except the bottom-left start,
/// priorities uniform over 1..4. Deterministic for a given seed.
Scenario generate_scenario(std::uint64_t seed, int grid_width = 6, int grid_height = 6,
                           double cell_side = 50.0, int node_count = 6);

// Line-oriented scenario text format:
//   grid W H CELL_SIDE_M
//   start GX GY
//   node ID GX GY PRIORITY   (one per node, ids 0..n-1 in order)
// '#' starts a comment.
Scenario parse_scenario(std::istream& in, const std::string& source = "<scenario>");
Scenario load_scenario(const std::string& path);
void write_scenario(std::ostream& out, const Scenario& scenario);
void save_scenario(const std::string& path, const Scenario& scenario);

}  // namespace uavdql
