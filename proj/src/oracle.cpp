#include "uavdql/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include "uavdql/errors.hpp"

namespace uavdql {

namespace {

void check_capacity(const Scenario& scenario, std::size_t limit, const char* method) {
    if (scenario.node_count() > limit)
        throw CapacityError(std::string(method) + " oracle supports at most " + std::to_string(limit) +
                            " nodes, scenario has " + std::to_string(scenario.node_count()));
}

}  // namespace

OracleResult optimal_by_permutation(const Scenario& scenario, const EnvConfig& config, double gamma) {
    check_capacity(scenario, kPermutationOracleLimit, "permutation");

    std::vector<NodeId> order(scenario.node_count());
    std::iota(order.begin(), order.end(), 0);

    OracleResult best;
    best.discounted_return = -std::numeric_limits<double>::infinity();
    // next_permutation walks orders lexicographically, so strict improvement
    // keeps the smallest order among ties.
    do {
        const double ret = replay_order(scenario, config, order).discounted_return(gamma);
        if (ret > best.discounted_return) {
            best.discounted_return = ret;
            best.order = order;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    if (order.empty()) best.discounted_return = 0.0;
    return best;
}

OracleResult optimal_by_dp(const Scenario& scenario, const EnvConfig& config, double gamma) {
    check_capacity(scenario, kDpOracleLimit, "subset-DP");
    const std::size_t n = scenario.node_count();
    if (n == 0) return {};

    // Position index n is the start perch.
    std::vector<Position> pos(n + 1);
    for (std::size_t i = 0; i < n; ++i) pos[i] = position_of(scenario, scenario.nodes[i].cell);
    pos[n] = position_of(scenario, scenario.uav_start);

    // Revenue only depends on (perch, served set, next node). Leg terms are
    // computed with the same expressions as apply_action so the numbers are
    // bit-identical to a replayed trace.
    std::vector<double> leg_time((n + 1) * n);
    std::vector<double> leg_energy((n + 1) * n);
    for (std::size_t from = 0; from <= n; ++from)
        for (std::size_t to = 0; to < n; ++to) {
            const double d = distance(pos[from], pos[to]);
            leg_time[from * n + to] = d / config.power.cruise_speed;
            leg_energy[from * n + to] = flight_energy(config.power, d);
        }
    const auto waiting_total = [&](std::uint32_t mask) {
        int total = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (!((mask >> i) & 1u)) total += scenario.nodes[i].priority;
        return total;
    };
    const auto step_revenue = [&](std::size_t from, int unserved_total, std::size_t to) {
        const int served = scenario.nodes[to].priority;
        return revenue(config.weights, served, unserved_total - served, leg_time[from * n + to],
                       leg_energy[from * n + to]);
    };

    const std::uint32_t full = (1u << n) - 1u;
    const std::size_t masks = std::size_t{1} << n;
    // value[mask * n + last]: best return-to-go after serving `mask`, perched at `last`.
    std::vector<double> value(masks * n, 0.0);
    std::vector<std::int8_t> choice(masks * n, -1);

    const auto solve = [&](std::size_t from, std::uint32_t mask, double& out_value) -> std::int8_t {
        double best = -std::numeric_limits<double>::infinity();
        std::int8_t arg = -1;
        const int unserved_total = waiting_total(mask);
        for (std::size_t j = 0; j < n; ++j) {
            if ((mask >> j) & 1u) continue;
            const std::uint32_t next = mask | (1u << j);
            const double v = step_revenue(from, unserved_total, j) + gamma * value[next * n + j];
            if (v > best) {
                best = v;
                arg = static_cast<std::int8_t>(j);
            }
        }
        out_value = best;
        return arg;
    };

    // Masks in decreasing order: successors (supersets) are always solved first.
    for (std::uint32_t mask = full; mask-- > 1;) {
        for (std::size_t last = 0; last < n; ++last) {
            if (!((mask >> last) & 1u)) continue;
            choice[mask * n + last] = solve(last, mask, value[mask * n + last]);
        }
    }

    OracleResult result;
    std::int8_t j = solve(n, 0u, result.discounted_return);
    std::uint32_t mask = 0;
    while (j >= 0) {
        result.order.push_back(j);
        mask |= 1u << j;
        if (mask == full) break;
        j = choice[mask * n + static_cast<std::size_t>(j)];
    }
    return result;
}

}  // namespace uavdql
