#pragma once

namespace uavdql {

// Rotary-wing propulsion model constants. Defaults are the reference
// airframe (blade profile 29.4 W, induced 206.5 W, 5 m/s cruise).
struct PowerParams {
    double blade_profile_power = 29.4;   // P0, W
    double induced_power = 206.5;        // Pi, W
    double tip_speed = 96.0;             // U, m/s
    double induced_velocity = 7.5;       // v0, m/s
    double fuselage_drag_ratio = 0.9;    // d0
    double air_density = 1.225;          // rho, kg/m^3
    double rotor_solidity = 0.1;         // s
    double rotor_disc_area = 0.181;      // A, m^2
    double cruise_speed = 5.0;           // V, m/s

    // Throws DomainError unless every field is strictly positive.
    void validate() const;
};

// Per-term breakdown of the propulsion power at one speed.
struct PowerTerms {
    double blade_profile;
    double induced;
    double parasite;

    double total() const { return blade_profile + induced + parasite; }
};

PowerTerms power_terms(const PowerParams& params, double speed);

/// Propulsion power in watts at `speed` m/s. Throws DomainError for speed < 0.
double power(const PowerParams& params, double speed);

/// Energy in joules to fly `distance` metres at the cruise speed.
/// P(V) * distance / V; exactly zero for a zero-length leg.
double flight_energy(const PowerParams& params, double distance);

}  // namespace uavdql
