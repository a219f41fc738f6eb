#include "uavdql/env.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "uavdql/errors.hpp"
#include "uavdql/metrics.hpp"
#include "uavdql/rng.hpp"

namespace uavdql {

namespace {

std::string cell_text(GridCell c) {
    return "(" + std::to_string(c.gx) + "," + std::to_string(c.gy) + ")";
}

}  // namespace

bool Scenario::contains(GridCell cell) const {
    return cell.gx >= 0 && cell.gy >= 0 && cell.gx < grid_width && cell.gy < grid_height;
}

void Scenario::validate() const {
    if (grid_width < 1 || grid_height < 1) throw DomainError("grid dimensions must be at least 1x1");
    if (!(cell_side > 0.0) || !std::isfinite(cell_side)) throw DomainError("cell side must be positive");
    if (!contains(uav_start)) throw DomainError("start cell " + cell_text(uav_start) + " outside the grid");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const NodePoint& n = nodes[i];
        if (n.id != static_cast<NodeId>(i))
            throw DomainError("node ids must be 0..n-1 in order; found " + std::to_string(n.id) + " at index " +
                              std::to_string(i));
        if (!contains(n.cell)) throw DomainError("node " + std::to_string(n.id) + " outside the grid");
        if (n.cell == uav_start) throw DomainError("node " + std::to_string(n.id) + " occupies the start cell");
        if (n.priority < kMinPriority || n.priority > kMaxPriority)
            throw DomainError("node " + std::to_string(n.id) + " priority must be in 1..4");
    }
}

Position position_of(const Scenario& scenario, GridCell cell) {
    if (!scenario.contains(cell)) throw DomainError("cell " + cell_text(cell) + " outside the grid");
    return {cell.gx * scenario.cell_side, cell.gy * scenario.cell_side};
}

double distance(Position a, Position b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

SimState initial_state(const Scenario& scenario) {
    SimState s;
    s.uav_cell = scenario.uav_start;
    s.uav_pos = position_of(scenario, scenario.uav_start);
    s.priorities.reserve(scenario.nodes.size());
    for (const NodePoint& n : scenario.nodes) s.priorities.push_back(n.priority);
    return s;
}

bool is_terminal(const SimState& state) {
    return std::all_of(state.priorities.begin(), state.priorities.end(), [](int p) { return p == 0; });
}

Transition apply_action(const Scenario& scenario, const SimState& state, NodeId action, const EnvConfig& config) {
    if (action < 0 || static_cast<std::size_t>(action) >= state.priorities.size())
        throw ContractViolation("action " + std::to_string(action) + " is not a node");
    const int served_priority = state.priorities[action];
    if (served_priority == 0) throw ContractViolation("node " + std::to_string(action) + " already served");

    const GridCell target = scenario.nodes[action].cell;
    const Position target_pos = position_of(scenario, target);

    Transition t;
    t.action = action;
    t.served_priority = served_priority;
    t.distance = distance(state.uav_pos, target_pos);
    t.t_s = t.distance / config.power.cruise_speed;
    t.energy = flight_energy(config.power, t.distance);

    const int total = std::accumulate(state.priorities.begin(), state.priorities.end(), 0);
    const int waiting = total - served_priority;
    t.revenue = revenue(config.weights, served_priority, waiting, t.t_s, t.energy);

    t.next_state = state;
    t.next_state.uav_cell = target;
    t.next_state.uav_pos = target_pos;
    t.next_state.priorities[action] = 0;
    t.next_state.clock = state.clock + t.t_s;
    return t;
}

Scenario generate_scenario(std::uint64_t seed, int grid_width, int grid_height, double cell_side, int node_count) {
    if (grid_width < 1 || grid_height < 1) throw DomainError("grid dimensions must be at least 1x1");
    if (node_count < 0) throw DomainError("node count must be non-negative");
    const long cells = static_cast<long>(grid_width) * grid_height;
    if (node_count > cells - 1)
        throw DomainError("cannot place " + std::to_string(node_count) + " nodes on a " + std::to_string(grid_width) +
                          "x" + std::to_string(grid_height) + " grid with the start cell reserved");

    Scenario s;
    s.grid_width = grid_width;
    s.grid_height = grid_height;
    s.cell_side = cell_side;
    s.uav_start = {0, 0};
    s.seed = seed;

    std::vector<GridCell> free_cells;
    free_cells.reserve(static_cast<std::size_t>(cells));
    for (int gy = 0; gy < grid_height; ++gy)
        for (int gx = 0; gx < grid_width; ++gx)
            if (GridCell{gx, gy} != s.uav_start) free_cells.push_back({gx, gy});

    Rng rng = make_rng(seed, Stream::kScenario);
    std::shuffle(free_cells.begin(), free_cells.end(), rng);
    std::uniform_int_distribution<int> prio(kMinPriority, kMaxPriority);
    for (int i = 0; i < node_count; ++i) s.nodes.push_back({i, free_cells[i], prio(rng)});

    s.validate();
    return s;
}

Scenario parse_scenario(std::istream& in, const std::string& source) {
    Scenario s;
    s.nodes.clear();
    bool have_grid = false;
    bool have_start = false;
    std::string line;
    std::size_t lineno = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            // `# seed N` records provenance of generated files.
            std::istringstream comment(line.substr(hash + 1));
            std::string tag;
            std::uint64_t seed = 0;
            if (comment >> tag >> seed && tag == "seed") s.seed = seed;
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::string keyword;
        if (!(fields >> keyword)) continue;

        const auto fail = [&](const std::string& msg) { throw ParseError(source, lineno, msg); };
        const auto expect_end = [&] {
            std::string extra;
            if (fields >> extra) fail("unexpected trailing field '" + extra + "'");
        };

        if (keyword == "grid") {
            if (have_grid) fail("duplicate grid line");
            if (!(fields >> s.grid_width >> s.grid_height >> s.cell_side)) fail("expected: grid W H CELL_SIDE_M");
            expect_end();
            if (s.grid_width < 1 || s.grid_height < 1 || !(s.cell_side > 0.0)) fail("invalid grid dimensions");
            have_grid = true;
        } else if (keyword == "start") {
            if (!have_grid) fail("start line before grid line");
            if (have_start) fail("duplicate start line");
            if (!(fields >> s.uav_start.gx >> s.uav_start.gy)) fail("expected: start GX GY");
            expect_end();
            if (!s.contains(s.uav_start)) fail("start cell outside the grid");
            have_start = true;
        } else if (keyword == "node") {
            if (!have_start) fail("node line before start line");
            NodePoint n;
            if (!(fields >> n.id >> n.cell.gx >> n.cell.gy >> n.priority)) fail("expected: node ID GX GY PRIORITY");
            expect_end();
            if (n.id != static_cast<NodeId>(s.nodes.size()))
                fail("node id " + std::to_string(n.id) + " out of sequence, expected " +
                     std::to_string(s.nodes.size()));
            if (!s.contains(n.cell)) fail("node cell outside the grid");
            if (n.cell == s.uav_start) fail("node occupies the start cell");
            if (n.priority < kMinPriority || n.priority > kMaxPriority) fail("priority must be in 1..4");
            s.nodes.push_back(n);
        } else {
            fail("unknown keyword '" + keyword + "'");
        }
    }
    if (!have_grid) throw ParseError(source, 0, "missing grid line");
    if (!have_start) throw ParseError(source, 0, "missing start line");
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open scenario file");
    return parse_scenario(in, path);
}

void write_scenario(std::ostream& out, const Scenario& s) {
    out << "# seed " << s.seed << "\n";
    out << "grid " << s.grid_width << ' ' << s.grid_height << ' ' << format_real(s.cell_side) << "\n";
    out << "start " << s.uav_start.gx << ' ' << s.uav_start.gy << "\n";
    for (const NodePoint& n : s.nodes)
        out << "node " << n.id << ' ' << n.cell.gx << ' ' << n.cell.gy << ' ' << n.priority << "\n";
}

void save_scenario(const std::string& path, const Scenario& s) {
    write_file(path, [&](std::ostream& out) { write_scenario(out, s); });
}

}  // namespace uavdql
