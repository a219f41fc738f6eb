#include "uavdql/revenue.hpp"

#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "uavdql/errors.hpp"

namespace uavdql {

void RevenueWeights::validate() const {
    for (double w : {w1, w2, w3})
        if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("revenue weights must be non-negative and finite");
}

RevenueWeights parse_weights(std::string_view text) {
    if (text == "default") return presets::kDefault;
    if (text == "dql1") return presets::kDql1;
    if (text == "dql2") return presets::kDql2;
    if (text == "dql3") return presets::kDql3;

    std::vector<double> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string_view field =
            text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc() || ptr != field.data() + field.size() || field.empty())
            throw DomainError("weights must be a preset (default, dql1, dql2, dql3) or w1,w2,w3; got '" +
                              std::string(text) + "'");
        parts.push_back(v);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (parts.size() != 3)
        throw DomainError("expected three comma-separated weights, got '" + std::string(text) + "'");
    RevenueWeights w{parts[0], parts[1], parts[2]};
    w.validate();
    return w;
}

double revenue(const RevenueWeights& weights, int served_priority, double waiting_priority_sum, double t_s,
               double energy) {
    if (served_priority == 0) throw ContractViolation("revenue requested for an already served node");
    if (served_priority < 0 || served_priority > 4) throw DomainError("priority out of range 1..4");
    return weights.w1 * served_priority - weights.w2 * waiting_priority_sum * t_s - weights.w3 * energy;
}

}  // namespace uavdql
