// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "uavdql/baselines.hpp"
#include "uavdql/learner.hpp"
#include "uavdql/metrics.hpp"
#include "uavdql/oracle.hpp"

namespace fs = std::filesystem;
using namespace uavdql;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool rel_close(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string fmt(double v, int prec = 2) {
    std::ostringstream o;
    o.setf(std::ios::fixed);
    o.precision(prec);
    o << v;
    return o.str();
}

// Independent open-tour minimiser over plain coordinates.
double shortest_open_tour(const Scenario& s) {
    std::vector<int> order(s.node_count());
    std::iota(order.begin(), order.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double x = s.uav_start.gx * s.cell_side, y = s.uav_start.gy * s.cell_side, len = 0.0;
        for (int i : order) {
            const double nx = s.nodes[i].cell.gx * s.cell_side, ny = s.nodes[i].cell.gy * s.cell_side;
            len += std::sqrt((nx - x) * (nx - x) + (ny - y) * (ny - y));
            x = nx;
            y = ny;
        }
        best = std::min(best, len);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

Outcome power_model() {
    const double p5 = power(PowerParams{}, 5.0);
    const double p0 = power(PowerParams{}, 0.0);
    Outcome o;
    o.pass = std::abs(p5 - 215.84) <= 0.01 && p0 == 235.9;
    o.detail = "P(5)=" + fmt(p5, 4) + " W, P(0)=" + format_real(p0) + " W";
    return o;
}

Outcome update_arithmetic() {
    Outcome o;
    const StateKey s{{0, 0}, {4, 2, 3, 1}};
    const StateKey next{{1, 0}, {0, 2, 3, 1}};
    QTablePair t;
    update(t, s, 0, -545.84, next, false, Hyperparams{});
    const double q = t.value(TableId::A, s, 0);
    const bool worked = q == -272.92;

    const Scenario scen = generate_scenario(2024, 6, 6, 50.0, 5);
    Hyperparams hp;
    hp.episodes = 100;
    hp.eps_full_until = 20;
    hp.eps_zero_at = 80;
    QTablePair a(TableId::A), b(TableId::B);
    TrainingCurve ca, cb;
    Rng ra = make_rng(2024, Stream::kExploration), rb = make_rng(2024, Stream::kExploration);
    train_into(a, ca, scen, EnvConfig{}, hp, ra);
    train_into(b, cb, scen, EnvConfig{}, hp, rb);
    const bool swapped = a.table(TableId::A) == b.table(TableId::B) && a.table(TableId::B) == b.table(TableId::A) &&
                         !a.empty();
    o.pass = worked && swapped;
    o.detail = "Q=" + format_real(q) + ", A/B swap " + (swapped ? "exact" : "MISMATCH") + " over 100 episodes (" +
               std::to_string(a.entry_count()) + " entries)";
    return o;
}

Outcome oracle_cross_check() {
    Outcome o;
    const auto t0 = Clock::now();
    int agree = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Scenario s = generate_scenario(seed);
        const OracleResult p = optimal_by_permutation(s, EnvConfig{}, 0.95);
        const OracleResult d = optimal_by_dp(s, EnvConfig{}, 0.95);
        if (p.order == d.order && rel_close(p.discounted_return, d.discounted_return, 1e-9)) ++agree;
    }
    const double secs = seconds_since(t0);
    o.pass = agree == 20 && secs < 1.0;
    o.detail = std::to_string(agree) + "/20 agree, " + fmt(secs, 3) + " s";
    return o;
}

Outcome learner_vs_greedy() {
    Outcome o;
    int wins = 0;
    double slowest = 0.0;
    std::ostringstream gaps;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Scenario s = generate_scenario(seed);
        const EnvConfig cfg;
        const Hyperparams hp;
        const auto t0 = Clock::now();
        const TrainingResult trained = train(s, cfg, hp, seed);
        const PolicyEvaluation ev = evaluate_policy(s, cfg, trained.tables, hp.gamma);
        slowest = std::max(slowest, seconds_since(t0));
        const double greedy = greedy_rollout(s, cfg).discounted_return(hp.gamma);
        const double best = optimal_by_dp(s, cfg, hp.gamma).discounted_return;
        if (ev.discounted_return >= greedy) ++wins;
        gaps << "\n      seed " << seed << ": dql " << fmt(ev.discounted_return) << " greedy " << fmt(greedy)
             << " oracle " << fmt(best) << " gap " << fmt(best - ev.discounted_return) << " ("
             << fmt(100.0 * (best - ev.discounted_return) / std::abs(best), 3) << "%)";
    }
    o.pass = wins >= 8 && slowest < 120.0;
    o.detail = "dql >= greedy on " + std::to_string(wins) + "/10, slowest " + fmt(slowest, 3) + " s" + gaps.str();
    return o;
}

bool has_priority(const Scenario& s, int p) {
    return std::any_of(s.nodes.begin(), s.nodes.end(), [p](const NodePoint& n) { return n.priority == p; });
}

Outcome weight_regimes() {
    Outcome o;
    std::ostringstream detail;
    int priority_ok = 0, energy_ok = 0, used = 0;
    for (std::uint64_t seed = 1; used < 5; ++seed) {
        const Scenario s = generate_scenario(seed);
        if (!has_priority(s, 4) || !has_priority(s, 1)) continue;
        ++used;
        const Hyperparams hp;
        double energy[3] = {};
        bool ordered = false;
        const RevenueWeights regimes[3] = {presets::kDql1, presets::kDql2, presets::kDql3};
        for (int k = 0; k < 3; ++k) {
            const EnvConfig cfg{PowerParams{}, regimes[k]};
            const PolicyEvaluation ev = evaluate_policy(s, cfg, train(s, cfg, hp, seed).tables, hp.gamma);
            energy[k] = ev.total_energy;
            if (k == 0) {
                // every priority-4 node precedes every priority-1 node
                std::size_t last4 = 0, first1 = s.node_count();
                for (std::size_t i = 0; i < ev.trace.size(); ++i) {
                    const int p = ev.trace.steps[i].served_priority;
                    if (p == 4) last4 = i;
                    if (p == 1) first1 = std::min(first1, i);
                }
                ordered = last4 < first1;
            }
        }
        const bool e_ok = energy[2] <= energy[1] * 1.01 && energy[1] <= energy[0] * 1.01;
        priority_ok += ordered;
        energy_ok += e_ok;
        detail << "\n      seed " << seed << ": dql1 priority order " << (ordered ? "ok" : "VIOLATED")
               << ", E(dql1/2/3) = " << fmt(energy[0] / 1000, 2) << "/" << fmt(energy[1] / 1000, 2) << "/"
               << fmt(energy[2] / 1000, 2) << " kJ " << (e_ok ? "ok" : "VIOLATED");
    }
    o.pass = priority_ok == 5 && energy_ok == 5;
    o.detail = "priority-first " + std::to_string(priority_ok) + "/5, energy ordering " + std::to_string(energy_ok) +
               "/5" + detail.str();
    return o;
}

Outcome shortest_path_degeneracy() {
    Outcome o;
    const EnvConfig cfg{PowerParams{}, RevenueWeights{0.0, 0.0, 0.1}};
    int tours_ok = 0, tours = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Scenario s = generate_scenario(seed, 6, 6, 50.0, 1 + static_cast<int>(seed % 7));
        const OracleResult best = optimal_by_dp(s, cfg, 1.0);
        const double len = replay_order(s, cfg, best.order).total_distance();
        ++tours;
        tours_ok += rel_close(len, shortest_open_tour(s), 1e-9);
    }
    int matches = 0;
    std::ostringstream detail;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Scenario s = generate_scenario(seed);
        Hyperparams hp;
        hp.gamma = 1.0;
        const PolicyEvaluation ev = evaluate_policy(s, cfg, train(s, cfg, hp, seed).tables, hp.gamma);
        const double best = optimal_by_dp(s, cfg, 1.0).discounted_return;
        const bool m = std::abs(ev.discounted_return - best) <= 0.01 * std::abs(best);
        matches += m;
        detail << "\n      seed " << seed << ": dql " << fmt(ev.discounted_return) << " oracle " << fmt(best)
               << (m ? " ok" : " MISS");
    }
    o.pass = tours_ok == tours && matches >= 3;
    o.detail = "oracle = shortest open tour on " + std::to_string(tours_ok) + "/" + std::to_string(tours) +
               " (n<=7), learner within 1% on " + std::to_string(matches) + "/5" + detail.str();
    return o;
}

Outcome trace_invariants() {
    Outcome o;
    int failures = 0;
    std::mt19937_64 rng(7);
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const Scenario s = generate_scenario(seed, 6, 6, 50.0, 1 + static_cast<int>(seed % 9));
        const EnvConfig cfg;
        Hyperparams hp;
        hp.episodes = 50;
        hp.eps_full_until = 10;
        hp.eps_zero_at = 40;
        QTablePair tables;
        Rng erng = make_rng(seed, Stream::kExploration);
        const EpisodeTrace learned = run_episode(s, cfg, tables, hp, static_cast<int>(seed % 50), erng);
        const EpisodeTrace greedy = greedy_rollout(s, cfg);
        for (const EpisodeTrace* t : {&learned, &greedy}) {
            if (t->size() != s.node_count() || !t->complete()) ++failures;
            std::vector<NodeId> order = t->order();
            std::sort(order.begin(), order.end());
            if (std::adjacent_find(order.begin(), order.end()) != order.end()) ++failures;
            if (!rel_close(t->steps.back().next_state.clock, t->total_distance() / cfg.power.cruise_speed, 1e-9))
                ++failures;
        }
        const SimState* prev = &greedy.initial;
        for (const Transition& tr : greedy.steps) {
            for (std::size_t j = 0; j < s.node_count(); ++j)
                if (prev->priorities[j] != 0 &&
                    distance(prev->uav_pos, position_of(s, s.nodes[j].cell)) < tr.distance)
                    ++failures;
            prev = &tr.next_state;
        }
        Scenario relabelled = s;
        std::vector<int> prios;
        for (const NodePoint& n : s.nodes) prios.push_back(n.priority);
        std::shuffle(prios.begin(), prios.end(), rng);
        for (std::size_t i = 0; i < prios.size(); ++i) relabelled.nodes[i].priority = prios[i];
        if (greedy_rollout(relabelled, cfg).order() != greedy.order()) ++failures;
    }
    const EpsilonSchedule sched = EpsilonSchedule::from(Hyperparams{});
    const bool eps_ok = epsilon(sched, 0) == 1.0 && epsilon(sched, 6400) == 0.0;
    o.pass = failures == 0 && eps_ok;
    o.detail = std::to_string(failures) + " invariant violations over 60 scenarios, eps(0)=" +
               format_real(epsilon(sched, 0)) + " eps(6400)=" + format_real(epsilon(sched, 6400));
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"uavdql"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

Outcome reproducibility() {
    Outcome o;
    const fs::path dir = fs::temp_directory_path() / "uavdql_acceptance_repro";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string scen = (dir / "scenario.txt").string();
    int codes = run_cli({"generate", "--seed", "7", "--out", scen});
    for (const char* run : {"run1", "run2"})
        codes += run_cli({"train", "--scenario", scen, "--seed", "13", "--out", (dir / run).string()});
    int identical = 0;
    for (const char* f : {"curve.csv", "qtables.txt", "trace.csv"}) {
        const std::string a = slurp(dir / "run1" / f), b = slurp(dir / "run2" / f);
        identical += !a.empty() && a == b;
    }
    o.pass = codes == 0 && identical == 3;
    o.detail = std::to_string(identical) + "/3 outputs byte-identical";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 power model", power_model},
        {"2 update arithmetic and A/B symmetry", update_arithmetic},
        {"3 oracle cross-check (DP vs permutation)", oracle_cross_check},
        {"4 learner vs greedy (default weights, 8000 episodes)", learner_vs_greedy},
        {"5 weight-regime orderings", weight_regimes},
        {"6 shortest-path degeneracy", shortest_path_degeneracy},
        {"7 episode and trace invariants", trace_invariants},
        {"8 reproducibility of train", reproducibility},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        const auto t0 = Clock::now();
        Outcome r;
        try {
            r = check();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        failed += !r.pass;
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << name << " (" << fmt(seconds_since(t0), 2) << " s): "
                  << r.detail << std::endl;
    }
    std::cout << (failed ? std::to_string(failed) + " criterion(s) failed" : std::string("all criteria passed"))
              << std::endl;
    return failed ? 1 : 0;
}
