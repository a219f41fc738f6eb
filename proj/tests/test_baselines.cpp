#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "support.hpp"
#include "uavdql/baselines.hpp"

using namespace uavdql;
using uavdql::testing::make_scenario;
using uavdql::testing::rel_close;

TEST_CASE("greedy serves the nearest node first") {
    const Scenario s = make_scenario({{0, {2, 0}, 4}, {1, {1, 0}, 1}});
    CHECK(greedy_rollout(s, EnvConfig{}).order() == std::vector<NodeId>{1, 0});
}

TEST_CASE("greedy breaks distance ties toward the lower id") {
    const Scenario s = make_scenario({{0, {0, 2}, 1}, {1, {2, 0}, 4}, {2, {1, 1}, 2}});
    // (1,1) is closest; from there (0,2) and (2,0) are equidistant.
    CHECK(greedy_rollout(s, EnvConfig{}).order() == std::vector<NodeId>{2, 0, 1});

    const Scenario mirrored = make_scenario({{0, {2, 0}, 3}, {1, {0, 2}, 3}});
    CHECK(greedy_rollout(mirrored, EnvConfig{}).order() == std::vector<NodeId>{0, 1});
}

TEST_CASE("greedy trace invariants") {
    std::mt19937_64 rng(5);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Scenario s = generate_scenario(seed, 6, 6, 50.0, 1 + static_cast<int>(seed % 10));
        const EpisodeTrace trace = greedy_rollout(s, EnvConfig{});

        std::vector<NodeId> order = trace.order();
        std::sort(order.begin(), order.end());
        std::vector<NodeId> all(s.node_count());
        std::iota(all.begin(), all.end(), 0);
        CHECK(order == all);

        // each leg is minimal among the nodes still waiting
        const SimState* prev = &trace.initial;
        for (const Transition& t : trace.steps) {
            for (std::size_t j = 0; j < s.node_count(); ++j) {
                if (prev->priorities[j] == 0) continue;
                const double d = distance(prev->uav_pos, position_of(s, s.nodes[j].cell));
                CHECK(t.distance <= d);
                if (d == t.distance) CHECK(t.action <= static_cast<NodeId>(j));
            }
            prev = &t.next_state;
        }

        // priority labels do not influence the order
        Scenario relabelled = s;
        std::vector<int> prios;
        for (const NodePoint& n : s.nodes) prios.push_back(n.priority);
        std::shuffle(prios.begin(), prios.end(), rng);
        for (std::size_t i = 0; i < prios.size(); ++i) relabelled.nodes[i].priority = prios[i];
        CHECK(greedy_rollout(relabelled, EnvConfig{}).order() == trace.order());
    }
}

TEST_CASE("greedy revenue uses the shared accounting") {
    const Scenario s = generate_scenario(4);
    const EpisodeTrace g = greedy_rollout(s, EnvConfig{});
    const EpisodeTrace replay = replay_order(s, EnvConfig{}, g.order());
    CHECK(g.revenues() == replay.revenues());
    CHECK(rel_close(g.total_energy(), flight_energy(PowerParams{}, g.total_distance())));
}
