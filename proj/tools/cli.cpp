#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <future>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "uavdql/baselines.hpp"
#include "uavdql/errors.hpp"
#include "uavdql/learner.hpp"
#include "uavdql/metrics.hpp"
#include "uavdql/oracle.hpp"

namespace uavdql::cli {

namespace {

namespace fs = std::filesystem;

// Flags shared by every subcommand (declared on the root app, which lets
// them fall through to subcommands and be read from the config file).
struct CommonFlags {
    std::uint64_t seed = 1;
    std::string scenario;
    std::string weights = "default";
    std::string out;
    Hyperparams hp;
    PowerParams power;
    CLI::Option* eps_full_opt = nullptr;
    CLI::Option* eps_zero_opt = nullptr;
};

struct GenerateFlags {
    int nodes = 6;
    std::string grid = "6x6";
    double cell = 50.0;
};

struct CompareFlags {
    std::vector<std::string> presets;
    int count = 1;
    int smooth = 0;
    std::string tables;
    std::string method = "dp";
};

EnvConfig env_config(const CommonFlags& f, const std::string& weights) {
    EnvConfig c;
    c.power = f.power;
    c.power.validate();
    c.weights = parse_weights(weights);
    return c;
}

// Shrinks the default exploration schedule to fit a short run; explicit
// schedule flags are validated as given.
Hyperparams resolved_hyperparams(const CommonFlags& f) {
    Hyperparams hp = f.hp;
    if (hp.episodes < 0) throw DomainError("--episodes must be non-negative");
    if (f.eps_zero_opt->count() == 0) hp.eps_zero_at = std::min(hp.eps_zero_at, hp.episodes);
    if (f.eps_full_opt->count() == 0) hp.eps_full_until = std::min(hp.eps_full_until, hp.eps_zero_at);
    hp.validate();
    return hp;
}

Scenario require_scenario(const CommonFlags& f) {
    if (f.scenario.empty()) throw CLI::RequiredError("--scenario");
    Scenario s = load_scenario(f.scenario);
    s.validate();
    return s;
}

std::string order_text(const std::vector<NodeId>& order) {
    std::string s;
    for (std::size_t i = 0; i < order.size(); ++i) s += (i ? " " : "") + std::to_string(order[i]);
    return s;
}

std::pair<int, int> parse_grid(const std::string& text) {
    const auto x = text.find('x');
    int w = 0, h = 0;
    std::size_t used_w = 0, used_h = 0;
    try {
        if (x == std::string::npos) throw std::invalid_argument("no x");
        w = std::stoi(text.substr(0, x), &used_w);
        h = std::stoi(text.substr(x + 1), &used_h);
    } catch (const std::logic_error&) {
        throw DomainError("--grid must look like WxH, got '" + text + "'");
    }
    if (used_w != x || used_h != text.size() - x - 1) throw DomainError("--grid must look like WxH, got '" + text + "'");
    return {w, h};
}

void print_summary(std::ostream& out, const Scenario& s) {
    out << "grid " << s.grid_width << "x" << s.grid_height << ", cell " << format_real(s.cell_side) << " m, start ("
        << s.uav_start.gx << "," << s.uav_start.gy << "), " << s.node_count() << " nodes\n";
    for (const NodePoint& n : s.nodes)
        out << "  node " << n.id << " at (" << n.cell.gx << "," << n.cell.gy << ") priority " << n.priority << "\n";
}

void write_rollout_outputs(const fs::path& dir, const EpisodeTrace& trace, const Scenario& s) {
    write_file((dir / "trace.csv").string(), [&](std::ostream& o) { write_trace_csv(o, trace); });
    write_file((dir / "delays.csv").string(),
               [&](std::ostream& o) { write_delay_report_csv(o, delay_report(trace, s)); });
}

void print_rollout(std::ostream& out, const char* label, const EpisodeTrace& trace, const Scenario& s, double gamma) {
    const DelayReport r = delay_report(trace, s);
    out << label << ": order " << order_text(trace.order()) << "\n";
    out << "  discounted return " << format_real(trace.discounted_return(gamma)) << ", accumulated revenue "
        << format_real(trace.accumulated_revenue()) << ", energy " << format_real(trace.total_energy()) << " J\n";
    for (int c = kMinPriority; c <= kMaxPriority; ++c) {
        const ClassDelay& d = r.of_class(c);
        if (d.mean_delay) out << "  class " << c << ": " << d.count << " node(s), mean delay " << format_real(*d.mean_delay) << " s\n";
    }
}

fs::path prepare_dir(const std::string& out) {
    const fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
    return dir;
}

int cmd_generate(const CommonFlags& f, const GenerateFlags& g, std::ostream& out) {
    const auto [w, h] = parse_grid(g.grid);
    if (w < 1 || h < 1) throw DomainError("grid dimensions must be positive");
    if (g.nodes < 0) throw DomainError("--nodes must be non-negative");
    if (static_cast<long>(g.nodes) > static_cast<long>(w) * h - 1)
        throw CapacityError("cannot place " + std::to_string(g.nodes) + " nodes on a " + g.grid +
                            " grid (start cell reserved)");
    const Scenario s = generate_scenario(f.seed, w, h, g.cell, g.nodes);
    if (f.out.empty()) {
        write_scenario(out, s);
    } else {
        save_scenario(f.out, s);
        out << "wrote " << f.out << "\n";
        print_summary(out, s);
    }
    return kSuccess;
}

int cmd_train(const CommonFlags& f, const CompareFlags& c, std::ostream& out, std::ostream& err) {
    const Scenario s = require_scenario(f);
    const EnvConfig cfg = env_config(f, f.weights);
    const Hyperparams hp = resolved_hyperparams(f);
    const fs::path dir = prepare_dir(f.out);

    const TrainingResult result = train(s, cfg, hp, f.seed);
    write_file((dir / "curve.csv").string(), [&](std::ostream& o) { write_curve_csv(o, result.curve, c.smooth); });
    write_file((dir / "qtables.txt").string(), [&](std::ostream& o) { write_tables(o, result.tables); });
    if (hp.episodes == 0) {
        err << "warning: --episodes 0, tables are empty and no trace was written\n";
        return kSuccess;
    }
    const PolicyEvaluation ev = evaluate_policy(s, cfg, result.tables, hp.gamma);
    write_rollout_outputs(dir, ev.trace, s);
    out << "trained " << hp.episodes << " episodes, " << result.tables.entry_count() << " table entries\n";
    print_rollout(out, "dql", ev.trace, s, hp.gamma);
    return kSuccess;
}

int cmd_evaluate(const CommonFlags& f, const CompareFlags& c, std::ostream& out) {
    const Scenario s = require_scenario(f);
    const EnvConfig cfg = env_config(f, f.weights);
    if (c.tables.empty()) throw CLI::RequiredError("--tables");
    std::ifstream in(c.tables);
    if (!in) throw ParseError(c.tables, 0, "cannot open table dump");
    const QTablePair tables = parse_tables(in, c.tables);
    const PolicyEvaluation ev = evaluate_policy(s, cfg, tables, f.hp.gamma);
    if (!f.out.empty()) write_rollout_outputs(prepare_dir(f.out), ev.trace, s);
    print_rollout(out, "dql", ev.trace, s, f.hp.gamma);
    return kSuccess;
}

int cmd_greedy(const CommonFlags& f, std::ostream& out) {
    const Scenario s = require_scenario(f);
    const EnvConfig cfg = env_config(f, f.weights);
    const EpisodeTrace trace = greedy_rollout(s, cfg);
    if (!f.out.empty()) write_rollout_outputs(prepare_dir(f.out), trace, s);
    print_rollout(out, "greedy", trace, s, f.hp.gamma);
    return kSuccess;
}

int cmd_oracle(const CommonFlags& f, const CompareFlags& c, std::ostream& out) {
    const Scenario s = require_scenario(f);
    const EnvConfig cfg = env_config(f, f.weights);
    OracleResult best;
    if (c.method == "dp")
        best = optimal_by_dp(s, cfg, f.hp.gamma);
    else if (c.method == "permutation")
        best = optimal_by_permutation(s, cfg, f.hp.gamma);
    else
        throw DomainError("--method must be dp or permutation");
    out << "order " << order_text(best.order) << "\n";
    out << "discounted return " << format_real(best.discounted_return) << "\n";
    if (!f.out.empty()) write_rollout_outputs(prepare_dir(f.out), replay_order(s, cfg, best.order), s);
    return kSuccess;
}

struct ArmRow {
    std::string scenario;
    std::string weights;
    std::string arm;
    double discounted_return = 0.0;
    DelayReport report;
};

ArmRow make_row(std::string scenario, std::string weights, std::string arm, const EpisodeTrace& trace,
                const Scenario& s, double gamma) {
    return {std::move(scenario), std::move(weights), std::move(arm), trace.discounted_return(gamma),
            delay_report(trace, s)};
}

// greedy, dql and (within the oracle guard) the exact optimum for every weight preset.
std::vector<ArmRow> compare_arms(const std::string& label, const Scenario& s, const CommonFlags& f,
                                 const std::vector<std::string>& presets, const Hyperparams& hp,
                                 std::uint64_t seed, std::ostream& err) {
    const bool with_oracle = s.node_count() <= kDpOracleLimit;
    if (!with_oracle)
        err << "notice: " << label << " has " << s.node_count() << " nodes, above the oracle limit of "
            << kDpOracleLimit << "; oracle column omitted\n";

    std::vector<std::future<std::vector<ArmRow>>> arms;
    for (const std::string& preset : presets) {
        const EnvConfig cfg = env_config(f, preset);
        arms.push_back(std::async(std::launch::async, [=, &s] {
            std::vector<ArmRow> rows;
            rows.push_back(make_row(label, preset, "greedy", greedy_rollout(s, cfg), s, hp.gamma));
            const TrainingResult trained = train(s, cfg, hp, seed);
            const PolicyEvaluation ev = evaluate_policy(s, cfg, trained.tables, hp.gamma);
            rows.push_back(make_row(label, preset, "dql", ev.trace, s, hp.gamma));
            if (with_oracle) {
                const OracleResult best = optimal_by_dp(s, cfg, hp.gamma);
                rows.push_back(make_row(label, preset, "oracle", replay_order(s, cfg, best.order), s, hp.gamma));
            }
            return rows;
        }));
    }
    std::vector<ArmRow> all;
    for (auto& a : arms) {
        std::vector<ArmRow> rows = a.get();
        all.insert(all.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
    }
    return all;
}

void write_comparison_csv(std::ostream& o, const std::vector<ArmRow>& rows) {
    o << "scenario,weights,arm,discounted_return,total_energy_J";
    for (int c = kMinPriority; c <= kMaxPriority; ++c) o << ",mean_delay_class" << c << "_s";
    o << '\n';
    for (const ArmRow& r : rows) {
        o << r.scenario << ',' << r.weights << ',' << r.arm << ',' << format_real(r.discounted_return) << ','
          << format_real(r.report.total_energy);
        for (int c = kMinPriority; c <= kMaxPriority; ++c) {
            o << ',';
            if (const auto& m = r.report.of_class(c).mean_delay) o << format_real(*m);
        }
        o << '\n';
    }
}

void print_comparison(std::ostream& out, const std::vector<ArmRow>& rows) {
    out << std::left << std::setw(10) << "scenario" << std::setw(22) << "weights" << std::setw(8) << "arm"
        << std::right << std::setw(14) << "return" << std::setw(12) << "energy J";
    for (int c = kMinPriority; c <= kMaxPriority; ++c) out << std::setw(10) << ("d" + std::to_string(c) + " s");
    out << '\n';
    for (const ArmRow& r : rows) {
        out << std::left << std::setw(10) << r.scenario << std::setw(22) << r.weights << std::setw(8) << r.arm
            << std::right << std::fixed << std::setprecision(2) << std::setw(14) << r.discounted_return
            << std::setw(12) << r.report.total_energy;
        for (int c = kMinPriority; c <= kMaxPriority; ++c) {
            const auto& m = r.report.of_class(c).mean_delay;
            if (m)
                out << std::setw(10) << *m;
            else
                out << std::setw(10) << "-";
        }
        out << '\n';
    }
    out.unsetf(std::ios::floatfield);
    out << std::setprecision(6);
}

std::vector<std::string> presets_or_weights(const CommonFlags& f, const CompareFlags& c) {
    std::vector<std::string> p = c.presets.empty() ? std::vector<std::string>{f.weights} : c.presets;
    for (const std::string& w : p) parse_weights(w);
    return p;
}

int cmd_compare(const CommonFlags& f, const CompareFlags& c, std::ostream& out, std::ostream& err) {
    const Scenario s = require_scenario(f);
    const Hyperparams hp = resolved_hyperparams(f);
    const std::vector<ArmRow> rows =
        compare_arms(fs::path(f.scenario).stem().string(), s, f, presets_or_weights(f, c), hp, f.seed, err);
    print_comparison(out, rows);
    if (!f.out.empty()) write_file(f.out, [&](std::ostream& o) { write_comparison_csv(o, rows); });
    return kSuccess;
}

int cmd_sweep(const CommonFlags& f, const CompareFlags& c, const GenerateFlags& g, std::ostream& out,
              std::ostream& err) {
    const Hyperparams hp = resolved_hyperparams(f);
    std::vector<std::string> presets = c.presets;
    if (presets.empty()) presets = {"default", "dql1", "dql2", "dql3"};
    for (const std::string& w : presets) parse_weights(w);

    std::vector<ArmRow> rows;
    const auto add = [&](const std::vector<ArmRow>& more) { rows.insert(rows.end(), more.begin(), more.end()); };
    if (!f.scenario.empty()) {
        add(compare_arms(fs::path(f.scenario).stem().string(), require_scenario(f), f, presets, hp, f.seed, err));
    } else {
        if (c.count < 1) throw DomainError("--count must be at least 1");
        const auto [w, h] = parse_grid(g.grid);
        if (static_cast<long>(g.nodes) > static_cast<long>(w) * h - 1)
            throw CapacityError("cannot place " + std::to_string(g.nodes) + " nodes on a " + g.grid + " grid");
        for (int i = 0; i < c.count; ++i) {
            const std::uint64_t seed = f.seed + static_cast<std::uint64_t>(i);
            const Scenario s = generate_scenario(seed, w, h, g.cell, g.nodes);
            add(compare_arms("seed" + std::to_string(seed), s, f, presets, hp, seed, err));
        }
    }
    print_comparison(out, rows);
    if (!f.out.empty()) write_file(f.out, [&](std::ostream& o) { write_comparison_csv(o, rows); });
    return kSuccess;
}

void add_common_flags(CLI::App& app, CommonFlags& f) {
    app.set_config("--config", "", "TOML/INI run configuration (flags override it)");
    app.add_option("--seed", f.seed, "Global RNG seed")->envname("UAVDQL_SEED")->capture_default_str();
    app.add_option("--scenario", f.scenario, "Scenario file")->envname("UAVDQL_SCENARIO");
    app.add_option("--weights", f.weights, "Revenue weights: default|dql1|dql2|dql3 or w1,w2,w3")
        ->envname("UAVDQL_WEIGHTS")
        ->capture_default_str();
    app.add_option("--alpha", f.hp.alpha, "Learning rate")->envname("UAVDQL_ALPHA")->capture_default_str();
    app.add_option("--gamma", f.hp.gamma, "Discount factor")->envname("UAVDQL_GAMMA")->capture_default_str();
    app.add_option("--episodes", f.hp.episodes, "Training episodes")->envname("UAVDQL_EPISODES")->capture_default_str();
    f.eps_full_opt = app.add_option("--eps-full-until", f.hp.eps_full_until, "Epsilon is 1 before this episode")
                         ->envname("UAVDQL_EPS_FULL_UNTIL")
                         ->capture_default_str();
    f.eps_zero_opt = app.add_option("--eps-zero-at", f.hp.eps_zero_at, "Epsilon is 0 from this episode on")
                         ->envname("UAVDQL_EPS_ZERO_AT")
                         ->capture_default_str();
    app.add_option("--out", f.out, "Output file or directory")->envname("UAVDQL_OUT");

    const char* group = "Propulsion model";
    app.add_option("--speed", f.power.cruise_speed, "Cruise speed V, m/s")->group(group)->capture_default_str();
    app.add_option("--blade-power", f.power.blade_profile_power, "Blade profile power P0, W")->group(group)->capture_default_str();
    app.add_option("--induced-power", f.power.induced_power, "Induced power Pi, W")->group(group)->capture_default_str();
    app.add_option("--tip-speed", f.power.tip_speed, "Rotor blade tip speed U, m/s")->group(group)->capture_default_str();
    app.add_option("--induced-velocity", f.power.induced_velocity, "Mean rotor induced velocity v0, m/s")->group(group)->capture_default_str();
    app.add_option("--drag-ratio", f.power.fuselage_drag_ratio, "Fuselage drag ratio d0")->group(group)->capture_default_str();
    app.add_option("--air-density", f.power.air_density, "Air density rho, kg/m^3")->group(group)->capture_default_str();
    app.add_option("--solidity", f.power.rotor_solidity, "Rotor solidity s")->group(group)->capture_default_str();
    app.add_option("--disc-area", f.power.rotor_disc_area, "Rotor disc area A, m^2")->group(group)->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Priority-aware UAV serving order with double Q-learning"};
    app.name("uavdql");
    app.require_subcommand(1);
    app.fallthrough();

    CommonFlags common;
    GenerateFlags gen;
    CompareFlags cmp;
    add_common_flags(app, common);

    auto* generate = app.add_subcommand("generate", "Write a random scenario");
    generate->add_option("--nodes", gen.nodes, "Node count")->capture_default_str();
    generate->add_option("--grid", gen.grid, "Grid size WxH")->capture_default_str();
    generate->add_option("--cell", gen.cell, "Cell side, m")->capture_default_str();

    auto* train_cmd = app.add_subcommand("train", "Train, then write curve.csv, qtables.txt, trace.csv, delays.csv");
    train_cmd->add_option("--smooth", cmp.smooth, "Add moving-average columns with this window");

    auto* evaluate = app.add_subcommand("evaluate", "Greedy rollout of a saved table dump");
    evaluate->add_option("--tables", cmp.tables, "Table dump from train")->required();

    auto* greedy = app.add_subcommand("greedy", "Nearest-neighbour baseline");

    auto* oracle = app.add_subcommand("oracle", "Exact optimal serving order");
    oracle->add_option("--method", cmp.method, "dp or permutation")->capture_default_str();

    auto* compare = app.add_subcommand("compare", "Greedy vs DQL vs oracle on one scenario");
    compare->add_option("--presets", cmp.presets, "Weight sets to train (default: --weights)")->delimiter(';');

    auto* sweep = app.add_subcommand("sweep", "Weight-regime sweep over generated or given scenarios");
    sweep->add_option("--presets", cmp.presets, "Weight sets (default: default;dql1;dql2;dql3)")->delimiter(';');
    sweep->add_option("--count", cmp.count, "Generated scenarios, seeds seed..seed+count-1")->capture_default_str();
    sweep->add_option("--nodes", gen.nodes, "Node count of generated scenarios")->capture_default_str();
    sweep->add_option("--grid", gen.grid, "Grid of generated scenarios")->capture_default_str();
    sweep->add_option("--cell", gen.cell, "Cell side of generated scenarios, m")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (*generate) return cmd_generate(common, gen, out);
        if (*train_cmd) return cmd_train(common, cmp, out, err);
        if (*evaluate) return cmd_evaluate(common, cmp, out);
        if (*greedy) return cmd_greedy(common, out);
        if (*oracle) return cmd_oracle(common, cmp, out);
        if (*compare) return cmd_compare(common, cmp, out, err);
        if (*sweep) return cmd_sweep(common, cmp, gen, out, err);
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << "\n";
        return kCapacity;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kData;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kData;
    }
    return kUsage;
}

}  // namespace uavdql::cli
