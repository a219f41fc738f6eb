#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uavdql/rng.hpp"
#include "uavdql/trace.hpp"

namespace uavdql {

// Table key: UAV perch cell and the per-node priority vector (0 = served).
// Node coordinates are scenario constants and are not part of the key.
struct StateKey {
    GridCell uav_loc;
    std::vector<std::int8_t> priorities;

    static StateKey of(const SimState& state);

    bool has_unserved() const;
    bool is_unserved(NodeId action) const;

    friend auto operator<=>(const StateKey&, const StateKey&) = default;
};

enum class TableId : std::uint8_t { A, B };

inline TableId other(TableId id) { return id == TableId::A ? TableId::B : TableId::A; }
char table_letter(TableId id);

// The two action-value tables plus the selector naming the table that acts
// and learns next. Unseen (state, action) pairs read as 0.
class QTablePair {
public:
    using ActionValues = std::map<NodeId, double>;
    using Table = std::map<StateKey, ActionValues>;

    explicit QTablePair(TableId first = TableId::A) : selector_(first) {}

    TableId selector() const { return selector_; }
    void set_selector(TableId id) { selector_ = id; }
    void toggle() { selector_ = other(selector_); }

    const Table& table(TableId id) const { return id == TableId::A ? a_ : b_; }

    double value(TableId id, const StateKey& key, NodeId action) const;
    // Mean of the A and B values; used for the converged policy.
    double mean_value(const StateKey& key, NodeId action) const;

    // Throws ContractViolation if `action` is served in `key` or the value is not finite.
    void set(TableId id, const StateKey& key, NodeId action, double value);

    /// Unserved action with the largest value in table `id`; lowest id wins ties.
    /// Throws ContractViolation on a terminal key.
    NodeId best_action(TableId id, const StateKey& key) const;
    NodeId best_mean_action(const StateKey& key) const;

    std::size_t entry_count() const;
    bool empty() const { return a_.empty() && b_.empty(); }

    friend bool operator==(const QTablePair&, const QTablePair&) = default;

private:
    Table& mutable_table(TableId id) { return id == TableId::A ? a_ : b_; }

    Table a_;
    Table b_;
    TableId selector_;
};

struct Hyperparams {
    double alpha = 0.5;
    double gamma = 0.95;
    int episodes = 8000;
    int eps_full_until = 1000;
    int eps_zero_at = 6400;

    // 0 < alpha <= 1, 0 <= gamma <= 1, 0 <= eps_full_until <= eps_zero_at <= episodes.
    void validate() const;
};

struct EpsilonSchedule {
    int full_until = 1000;
    int zero_at = 6400;

    static EpsilonSchedule from(const Hyperparams& hp) { return {hp.eps_full_until, hp.eps_zero_at}; }
};

/// Exploration probability: 1 before `full_until`, 0 from `zero_at` on,
/// linear in between.
double epsilon(const EpsilonSchedule& schedule, int episode);

/// Epsilon-greedy choice: with probability `eps` a uniform unserved node,
/// otherwise the argmax of the selector's table.
///
/// One uniform draw in [0,1) is consumed on every call and a second one
/// only when exploring, so the draw sequence does not depend on table contents.
NodeId select_action(const QTablePair& tables, const StateKey& state, double eps, Rng& rng);

/// Double Q-learning update of the selector's table, then toggles the selector.
///
/// With selector A: a* = argmax_a Q_A(s', a) over unserved a and
/// Q_A(s,a) <- (1-alpha) Q_A(s,a) + alpha (r + gamma Q_B(s', a*)).
/// B is symmetric. A terminal successor contributes no bootstrap term.
void update(QTablePair& tables, const StateKey& s, NodeId a, double r, const StateKey& s_next,
            bool terminal, const Hyperparams& hp);

/// One mission from the start state: select, fly, update, toggle, until every
/// node is served. After an even number of updates the selector is toggled
/// once more, so successive episodes start on alternating tables.
EpisodeTrace run_episode(const Scenario& scenario, const EnvConfig& config, QTablePair& tables,
                         const Hyperparams& hp, int episode, Rng& rng);

struct CurvePoint {
    int episode = 0;
    double accumulated_revenue = 0.0;
    double total_energy = 0.0;
    double epsilon = 0.0;

    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

using TrainingCurve = std::vector<CurvePoint>;

struct TrainingResult {
    QTablePair tables;
    TrainingCurve curve;
};

// Runs hp.episodes episodes on fresh tables. Exploration draws come from the
// seed's exploration stream.
TrainingResult train(const Scenario& scenario, const EnvConfig& config, const Hyperparams& hp,
                     std::uint64_t seed);

// Continues training `tables` in place, appending to `curve`.
void train_into(QTablePair& tables, TrainingCurve& curve, const Scenario& scenario,
                const EnvConfig& config, const Hyperparams& hp, Rng& rng);

struct PolicyEvaluation {
    EpisodeTrace trace;
    double discounted_return = 0.0;
    double total_energy = 0.0;
    std::vector<double> serving_delay;  // indexed by node id
};

/// Greedy rollout on the mean of both tables. Leaves `tables` untouched.
PolicyEvaluation evaluate_policy(const Scenario& scenario, const EnvConfig& config,
                                 const QTablePair& tables, double gamma);

// Table dump: one `A|B <gx>,<gy> <p0>,...,<pn-1> <action> <value>` row per
// entry, rows sorted lexicographically.
void write_tables(std::ostream& out, const QTablePair& tables);
QTablePair parse_tables(std::istream& in, const std::string& source = "<tables>");

}  // namespace uavdql
