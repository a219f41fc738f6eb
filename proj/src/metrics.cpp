#include "uavdql/metrics.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "uavdql/errors.hpp"

namespace uavdql {

std::string format_real(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) throw std::runtime_error("cannot format real value");
    return std::string(buf, ptr);
}

std::vector<double> serving_delays(const EpisodeTrace& trace, std::size_t node_count) {
    std::vector<double> delays(node_count, 0.0);
    for (const Transition& t : trace.steps) delays.at(static_cast<std::size_t>(t.action)) = t.next_state.clock;
    return delays;
}

DelayReport delay_report(const EpisodeTrace& trace, const Scenario& scenario) {
    if (!trace.complete() || trace.size() != scenario.node_count())
        throw ContractViolation("delay report needs a trace that serves every node");

    DelayReport report;
    std::array<double, kMaxPriority> sums{};
    for (const Transition& t : trace.steps) {
        const int cls = scenario.nodes.at(static_cast<std::size_t>(t.action)).priority;
        sums[cls - 1] += t.next_state.clock;
        report.classes[cls - 1].count += 1;
        report.total_energy += t.energy;
    }
    for (std::size_t c = 0; c < report.classes.size(); ++c)
        if (report.classes[c].count > 0) report.classes[c].mean_delay = sums[c] / report.classes[c].count;
    return report;
}

std::vector<std::optional<double>> moving_average(const std::vector<double>& values, int window) {
    if (window < 1) throw DomainError("smoothing window must be at least 1");
    const auto w = static_cast<std::size_t>(window);
    std::vector<std::optional<double>> out(values.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        sum += values[i];
        if (i >= w) sum -= values[i - w];
        if (i + 1 >= w) out[i] = w == 1 ? values[i] : sum / static_cast<double>(w);
    }
    return out;
}

void write_trace_csv(std::ostream& out, const EpisodeTrace& trace) {
    out << "step,node_id,priority,t_s_s,distance_m,energy_J,revenue,clock_s\n";
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const Transition& t = trace.steps[k];
        out << k << ',' << t.action << ',' << t.served_priority << ',' << format_real(t.t_s) << ','
            << format_real(t.distance) << ',' << format_real(t.energy) << ',' << format_real(t.revenue) << ','
            << format_real(t.next_state.clock) << '\n';
    }
}

void write_delay_report_csv(std::ostream& out, const DelayReport& report) {
    out << "class,count,mean_delay_s\n";
    for (int c = kMinPriority; c <= kMaxPriority; ++c) {
        const ClassDelay& d = report.of_class(c);
        out << c << ',' << d.count << ',';
        if (d.mean_delay) out << format_real(*d.mean_delay);
        out << '\n';
    }
    out << "total_energy_J,," << format_real(report.total_energy) << '\n';
}

void write_curve_csv(std::ostream& out, const TrainingCurve& curve, int smoothing_window) {
    out << "episode,accumulated_revenue,total_energy_J,epsilon";
    std::vector<std::optional<double>> rev_ma, energy_ma;
    if (smoothing_window >= 1) {
        const std::string suffix = "_ma" + std::to_string(smoothing_window);
        out << ",accumulated_revenue" << suffix << ",total_energy_J" << suffix;
        std::vector<double> rev, energy;
        rev.reserve(curve.size());
        energy.reserve(curve.size());
        for (const CurvePoint& p : curve) {
            rev.push_back(p.accumulated_revenue);
            energy.push_back(p.total_energy);
        }
        rev_ma = moving_average(rev, smoothing_window);
        energy_ma = moving_average(energy, smoothing_window);
    }
    out << '\n';
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const CurvePoint& p = curve[i];
        out << p.episode << ',' << format_real(p.accumulated_revenue) << ',' << format_real(p.total_energy) << ','
            << format_real(p.epsilon);
        if (smoothing_window >= 1) {
            out << ',';
            if (rev_ma[i]) out << format_real(*rev_ma[i]);
            out << ',';
            if (energy_ma[i]) out << format_real(*energy_ma[i]);
        }
        out << '\n';
    }
}

std::vector<std::vector<std::string>> read_csv(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        rows.push_back(std::move(fields));
    }
    return rows;
}

}  // namespace uavdql
