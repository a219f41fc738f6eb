#pragma once

#include <cmath>
#include <vector>

#include "uavdql/env.hpp"

namespace uavdql::testing {

inline bool rel_close(double a, double b, double rel = 1e-9) {
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

// Scenario on the default 6x6 / 50 m grid with the UAV at the origin.
inline Scenario make_scenario(std::vector<NodePoint> nodes, int w = 6, int h = 6) {
    Scenario s;
    s.grid_width = w;
    s.grid_height = h;
    s.cell_side = 50.0;
    s.uav_start = {0, 0};
    s.nodes = std::move(nodes);
    s.validate();
    return s;
}

}  // namespace uavdql::testing
