#include "uavdql/learner.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "uavdql/errors.hpp"
#include "uavdql/metrics.hpp"

namespace uavdql {

StateKey StateKey::of(const SimState& state) {
    StateKey k;
    k.uav_loc = state.uav_cell;
    k.priorities.reserve(state.priorities.size());
    for (int p : state.priorities) k.priorities.push_back(static_cast<std::int8_t>(p));
    return k;
}

bool StateKey::has_unserved() const {
    return std::any_of(priorities.begin(), priorities.end(), [](std::int8_t p) { return p != 0; });
}

bool StateKey::is_unserved(NodeId action) const {
    return action >= 0 && static_cast<std::size_t>(action) < priorities.size() && priorities[action] != 0;
}

char table_letter(TableId id) {
    return id == TableId::A ? 'A' : 'B';
}

double QTablePair::value(TableId id, const StateKey& key, NodeId action) const {
    const Table& t = table(id);
    const auto row = t.find(key);
    if (row == t.end()) return 0.0;
    const auto cell = row->second.find(action);
    return cell == row->second.end() ? 0.0 : cell->second;
}

double QTablePair::mean_value(const StateKey& key, NodeId action) const {
    return 0.5 * (value(TableId::A, key, action) + value(TableId::B, key, action));
}

void QTablePair::set(TableId id, const StateKey& key, NodeId action, double v) {
    if (!key.is_unserved(action))
        throw ContractViolation("Q value for served or unknown action " + std::to_string(action));
    if (!std::isfinite(v)) throw ContractViolation("Q values must be finite");
    mutable_table(id)[key][action] = v;
}

namespace {

template <typename ValueOf>
NodeId argmax_unserved(const StateKey& key, ValueOf&& value_of) {
    NodeId best = -1;
    double best_value = 0.0;
    for (std::size_t i = 0; i < key.priorities.size(); ++i) {
        if (key.priorities[i] == 0) continue;
        const double v = value_of(static_cast<NodeId>(i));
        if (best < 0 || v > best_value) {
            best = static_cast<NodeId>(i);
            best_value = v;
        }
    }
    if (best < 0) throw ContractViolation("no unserved node in a terminal state");
    return best;
}

}  // namespace

NodeId QTablePair::best_action(TableId id, const StateKey& key) const {
    const Table& t = table(id);
    const auto row = t.find(key);
    if (row == t.end()) return argmax_unserved(key, [](NodeId) { return 0.0; });
    const ActionValues& values = row->second;
    return argmax_unserved(key, [&](NodeId a) {
        const auto cell = values.find(a);
        return cell == values.end() ? 0.0 : cell->second;
    });
}

NodeId QTablePair::best_mean_action(const StateKey& key) const {
    return argmax_unserved(key, [&](NodeId a) { return mean_value(key, a); });
}

std::size_t QTablePair::entry_count() const {
    std::size_t n = 0;
    for (const auto* t : {&a_, &b_})
        for (const auto& [key, row] : *t) n += row.size();
    return n;
}

void Hyperparams::validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must be in (0, 1]");
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("gamma must be in [0, 1]");
    if (episodes < 0) throw DomainError("episode count must be non-negative");
    if (eps_full_until < 0 || eps_full_until > eps_zero_at || eps_zero_at > episodes)
        throw DomainError("epsilon schedule needs 0 <= eps_full_until <= eps_zero_at <= episodes");
}

double epsilon(const EpsilonSchedule& schedule, int episode) {
    if (episode < schedule.full_until) return 1.0;
    if (episode >= schedule.zero_at) return 0.0;
    const double span = static_cast<double>(schedule.zero_at - schedule.full_until);
    return static_cast<double>(schedule.zero_at - episode) / span;
}

NodeId select_action(const QTablePair& tables, const StateKey& state, double eps, Rng& rng) {
    if (!state.has_unserved()) throw ContractViolation("select_action on a terminal state");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (unit(rng) < eps) {
        std::vector<NodeId> open;
        for (std::size_t i = 0; i < state.priorities.size(); ++i)
            if (state.priorities[i] != 0) open.push_back(static_cast<NodeId>(i));
        std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
        return open[pick(rng)];
    }
    return tables.best_action(tables.selector(), state);
}

void update(QTablePair& tables, const StateKey& s, NodeId a, double r, const StateKey& s_next, bool terminal,
            const Hyperparams& hp) {
    const TableId learner = tables.selector();
    const TableId critic = other(learner);

    double bootstrap = 0.0;
    if (!terminal) {
        const NodeId best_next = tables.best_action(learner, s_next);
        bootstrap = tables.value(critic, s_next, best_next);
    }
    const double old = tables.value(learner, s, a);
    const double updated = (1.0 - hp.alpha) * old + hp.alpha * (r + hp.gamma * bootstrap);
    tables.set(learner, s, a, updated);
    tables.toggle();
}

EpisodeTrace run_episode(const Scenario& scenario, const EnvConfig& config, QTablePair& tables,
                         const Hyperparams& hp, int episode, Rng& rng) {
    const double eps = epsilon(EpsilonSchedule::from(hp), episode);

    EpisodeTrace trace;
    trace.initial = initial_state(scenario);
    trace.steps.reserve(scenario.node_count());

    SimState state = trace.initial;
    StateKey key = StateKey::of(state);
    while (!is_terminal(state)) {
        const NodeId action = select_action(tables, key, eps, rng);
        Transition t = apply_action(scenario, state, action, config);
        StateKey next_key = StateKey::of(t.next_state);
        const bool terminal = is_terminal(t.next_state);
        update(tables, key, action, t.revenue, next_key, terminal, hp);

        state = t.next_state;
        key = std::move(next_key);
        trace.steps.push_back(std::move(t));
    }
    // Consecutive episodes start on alternating tables. Without this an even
    // node count pins each table to fixed depths, and its argmax at the next
    // depth would come from values it never trains.
    if (trace.size() % 2 == 0) tables.toggle();
    return trace;
}

void train_into(QTablePair& tables, TrainingCurve& curve, const Scenario& scenario, const EnvConfig& config,
                const Hyperparams& hp, Rng& rng) {
    curve.reserve(curve.size() + static_cast<std::size_t>(hp.episodes));
    const EpsilonSchedule schedule = EpsilonSchedule::from(hp);
    for (int e = 0; e < hp.episodes; ++e) {
        const EpisodeTrace trace = run_episode(scenario, config, tables, hp, e, rng);
        curve.push_back({e, trace.accumulated_revenue(), trace.total_energy(), epsilon(schedule, e)});
    }
}

TrainingResult train(const Scenario& scenario, const EnvConfig& config, const Hyperparams& hp, std::uint64_t seed) {
    hp.validate();
    scenario.validate();
    TrainingResult result;
    Rng rng = make_rng(seed, Stream::kExploration);
    train_into(result.tables, result.curve, scenario, config, hp, rng);
    return result;
}

PolicyEvaluation evaluate_policy(const Scenario& scenario, const EnvConfig& config, const QTablePair& tables,
                                 double gamma) {
    PolicyEvaluation ev;
    ev.trace.initial = initial_state(scenario);
    SimState state = ev.trace.initial;
    while (!is_terminal(state)) {
        const NodeId action = tables.best_mean_action(StateKey::of(state));
        ev.trace.steps.push_back(apply_action(scenario, state, action, config));
        state = ev.trace.steps.back().next_state;
    }
    ev.discounted_return = ev.trace.discounted_return(gamma);
    ev.total_energy = ev.trace.total_energy();
    ev.serving_delay = serving_delays(ev.trace, scenario.node_count());
    return ev;
}

namespace {

std::string join_priorities(const std::vector<std::int8_t>& p) {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(static_cast<int>(p[i]));
    }
    return out;
}

}  // namespace

void write_tables(std::ostream& out, const QTablePair& tables) {
    std::vector<std::string> rows;
    rows.reserve(tables.entry_count());
    for (TableId id : {TableId::A, TableId::B}) {
        for (const auto& [key, values] : tables.table(id)) {
            const std::string prefix = std::string(1, table_letter(id)) + ' ' + std::to_string(key.uav_loc.gx) +
                                       ',' + std::to_string(key.uav_loc.gy) + ' ' + join_priorities(key.priorities) +
                                       ' ';
            for (const auto& [action, v] : values)
                rows.push_back(prefix + std::to_string(action) + ' ' + format_real(v));
        }
    }
    std::sort(rows.begin(), rows.end());
    for (const std::string& r : rows) out << r << '\n';
}

QTablePair parse_tables(std::istream& in, const std::string& source) {
    QTablePair tables;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto fail = [&](const std::string& msg) { throw ParseError(source, lineno, msg); };

        std::istringstream fields(line);
        std::string which, loc, prio, value_text;
        NodeId action = 0;
        if (!(fields >> which >> loc >> prio >> action >> value_text)) fail("expected: A|B GX,GY P0,...,PN ACTION VALUE");
        std::string extra;
        if (fields >> extra) fail("unexpected trailing field");
        if (which != "A" && which != "B") fail("table must be A or B");

        StateKey key;
        char comma = 0;
        std::istringstream loc_in(loc);
        if (!(loc_in >> key.uav_loc.gx >> comma >> key.uav_loc.gy) || comma != ',' || !loc_in.eof())
            fail("bad location '" + loc + "'");
        std::istringstream prio_in(prio);
        std::string item;
        while (std::getline(prio_in, item, ',')) {
            try {
                std::size_t used = 0;
                const int p = std::stoi(item, &used);
                if (used != item.size() || p < 0 || p > kMaxPriority) fail("bad priority '" + item + "'");
                key.priorities.push_back(static_cast<std::int8_t>(p));
            } catch (const std::logic_error&) {
                fail("bad priority '" + item + "'");
            }
        }
        double v = 0.0;
        try {
            std::size_t used = 0;
            v = std::stod(value_text, &used);
            if (used != value_text.size()) fail("bad value '" + value_text + "'");
        } catch (const std::logic_error&) {
            fail("bad value '" + value_text + "'");
        }
        try {
            tables.set(which == "A" ? TableId::A : TableId::B, key, action, v);
        } catch (const ContractViolation& e) {
            fail(e.what());
        }
    }
    return tables;
}

}  // namespace uavdql
