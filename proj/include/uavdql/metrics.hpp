#pragma once

#include <array>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "uavdql/learner.hpp"

namespace uavdql {

struct ClassDelay {
    int count = 0;
    std::optional<double> mean_delay;  // empty when the class has no nodes
};

// Mean serving delay per priority class (index 0 is class 1) and mission energy.
struct DelayReport {
    std::array<ClassDelay, kMaxPriority> classes{};
    double total_energy = 0.0;

    const ClassDelay& of_class(int priority) const { return classes.at(priority - 1); }
};

// Time from mission start until each node is served, indexed by node id.
std::vector<double> serving_delays(const EpisodeTrace& trace, std::size_t node_count);

// Classes follow the scenario's initial priorities. Throws ContractViolation
// on an incomplete trace.
DelayReport delay_report(const EpisodeTrace& trace, const Scenario& scenario);

// Trailing moving average over full windows only; the first window-1 slots are empty.
std::vector<std::optional<double>> moving_average(const std::vector<double>& values, int window);

void write_trace_csv(std::ostream& out, const EpisodeTrace& trace);
void write_delay_report_csv(std::ostream& out, const DelayReport& report);
// smoothing_window >= 1 appends `<column>_ma<w>` columns for revenue and energy.
void write_curve_csv(std::ostream& out, const TrainingCurve& curve, int smoothing_window = 0);

// Writes via `writer` to `path`; throws std::runtime_error naming the path on failure.
template <typename Writer>
void write_file(const std::string& path, Writer&& writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    std::forward<Writer>(writer)(out);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

// Minimal CSV reader for the files above (no quoting).
std::vector<std::vector<std::string>> read_csv(std::istream& in);

std::string format_real(double value);

}  // namespace uavdql
