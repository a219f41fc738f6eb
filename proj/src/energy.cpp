#include "uavdql/energy.hpp"

#include <cmath>
#include <string>

#include "uavdql/errors.hpp"

namespace uavdql {

void PowerParams::validate() const {
    const auto check = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw DomainError(std::string("power parameter ") + name + " must be positive and finite");
    };
    check(blade_profile_power, "P0");
    check(induced_power, "Pi");
    check(tip_speed, "U");
    check(induced_velocity, "v0");
    check(fuselage_drag_ratio, "d0");
    check(air_density, "rho");
    check(rotor_solidity, "s");
    check(rotor_disc_area, "A");
    check(cruise_speed, "V");
}

PowerTerms power_terms(const PowerParams& p, double speed) {
    if (!(speed >= 0.0)) throw DomainError("speed must be non-negative");
    const double v2 = speed * speed;
    const double v4 = v2 * v2;
    const double u2 = p.tip_speed * p.tip_speed;
    const double nu2 = p.induced_velocity * p.induced_velocity;
    const double nu4 = nu2 * nu2;

    PowerTerms t{};
    t.blade_profile = p.blade_profile_power * (1.0 + 3.0 * v2 / u2);
    // sqrt(1 + V^4/4v0^4) >= V^2/2v0^2 for all V, so the radicand stays >= 0
    // up to rounding; clamp the rounding case.
    const double inner = std::sqrt(1.0 + v4 / (4.0 * nu4)) - v2 / (2.0 * nu2);
    t.induced = p.induced_power * std::sqrt(inner > 0.0 ? inner : 0.0);
    t.parasite = 0.5 * p.fuselage_drag_ratio * p.air_density * p.rotor_solidity * p.rotor_disc_area *
                 v2 * speed;
    return t;
}

double power(const PowerParams& params, double speed) {
    return power_terms(params, speed).total();
}

double flight_energy(const PowerParams& params, double distance) {
    if (!(distance >= 0.0)) throw DomainError("distance must be non-negative");
    if (distance == 0.0) return 0.0;
    const double v = params.cruise_speed;
    return power(params, v) * (distance / v);
}

}  // namespace uavdql
