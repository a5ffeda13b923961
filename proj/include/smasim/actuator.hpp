#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "smasim/thermal.hpp"

namespace smasim {

// PWM excitation plus the electrical constants needed to turn it into heat.
// `on_voltage_v` is informational; the on-phase current is the primary input.
struct DriveSpec {
    double pwm_frequency_hz = 1.0;
    double duty_cycle_pct = 7.0;
    double on_current_a = 0.0;
    double sma_resistance_ohm = 0.0;
    double tether_resistance_ohm = 0.0;
    std::optional<double> on_voltage_v;

    double period_s() const { return 1.0 / pwm_frequency_hz; }
    double on_duration_s() const { return duty_cycle_pct / 100.0 * period_s(); }
};

void validate(const DriveSpec& drive);

struct AmbientMedium {
    std::string name;  // "air" or "water"
    double temperature_k = 293.15;
    double h_external_w_per_m2k = 0.0;
};

void validate(const AmbientMedium& medium);

struct WireSpec {
    double radius_m = 0.0;
    double length_m = 0.0;
    double mass_kg = 0.0;
    double specific_heat_j_per_kgk = 0.0;
    double transition_temperature_k = 363.15;
};

struct BareActuatorSpec {
    WireSpec wire;
};

// Wire inside an annular gas pocket sealed by a thin membrane. Radii are
// derived: r_pocket = wire radius + annulus thickness, r_outer = r_pocket +
// membrane thickness, and must be strictly increasing.
struct EncapsulatedActuatorSpec {
    WireSpec wire;
    double annulus_thickness_m = 0.0;
    double pocket_mass_kg = 0.0;
    double pocket_specific_heat_j_per_kgk = 0.0;
    double internal_h_w_per_m2k = 0.0;  // across the gas pocket, over the wire surface
    double membrane_thickness_m = 0.0;
    double membrane_conductivity_w_per_mk = 0.0;

    double pocket_radius_m() const { return wire.radius_m + annulus_thickness_m; }
    double outer_radius_m() const { return pocket_radius_m() + membrane_thickness_m; }
};

using ActuatorSpec = std::variant<BareActuatorSpec, EncapsulatedActuatorSpec>;

const WireSpec& wire_of(const ActuatorSpec& spec);

// Node chain realized for one actuator/medium combination.
//   bare:         sma --[external convection]--> ambient
//   encapsulated: sma --[pocket convection]--> pocket --[membrane conduction
//                 + external convection]--> ambient
struct BuiltNetwork {
    ThermalNode sma;
    std::optional<ThermalNode> pocket;
    std::vector<ResistanceElement> chain;
    double inner_resistance_k_per_w = 0.0;  // sma -> pocket (or ambient when bare)
    double outer_resistance_k_per_w = 0.0;  // pocket -> ambient; 0 when bare
    double ambient_k = 0.0;
    double transition_k = 0.0;

    bool encapsulated() const { return pocket.has_value(); }
    double total_resistance_k_per_w() const {
        return inner_resistance_k_per_w + outer_resistance_k_per_w;
    }
};

// R_sma * I^2, the on-phase dissipation.
double joule_on_phase(const DriveSpec& drive);

// 1e-2 * DC * R_sma * I^2, the per-cycle average of the above.
double joule_cycle_average(const DriveSpec& drive);

BuiltNetwork build_network(const ActuatorSpec& spec, const AmbientMedium& medium);

}  // namespace smasim
