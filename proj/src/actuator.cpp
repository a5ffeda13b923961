#include "smasim/actuator.hpp"

#include <stdexcept>

namespace smasim {

void validate(const DriveSpec& drive) {
    if (!(drive.pwm_frequency_hz > 0.0))
        throw std::invalid_argument("drive: pwm frequency must be positive");
    if (!(drive.duty_cycle_pct >= 0.0 && drive.duty_cycle_pct <= 100.0))
        throw std::invalid_argument("drive: duty cycle must be in [0, 100] %");
    if (drive.on_current_a < 0.0)
        throw std::invalid_argument("drive: on-phase current must be >= 0");
    if (!(drive.sma_resistance_ohm > 0.0))
        throw std::invalid_argument("drive: wire resistance must be positive");
    if (drive.tether_resistance_ohm < 0.0)
        throw std::invalid_argument("drive: tether resistance must be >= 0");
}

void validate(const AmbientMedium& medium) {
    if (!(medium.h_external_w_per_m2k > 0.0))
        throw std::invalid_argument("medium: heat-transfer coefficient must be positive");
    if (!(medium.temperature_k > 0.0))
        throw std::invalid_argument("medium: temperature must be positive (kelvin)");
}

const WireSpec& wire_of(const ActuatorSpec& spec) {
    if (const auto* bare = std::get_if<BareActuatorSpec>(&spec)) return bare->wire;
    return std::get<EncapsulatedActuatorSpec>(spec).wire;
}

double joule_on_phase(const DriveSpec& drive) {
    validate(drive);
    return drive.sma_resistance_ohm * drive.on_current_a * drive.on_current_a;
}

double joule_cycle_average(const DriveSpec& drive) {
    return 1e-2 * drive.duty_cycle_pct * drive.sma_resistance_ohm * drive.on_current_a *
           drive.on_current_a;
}

namespace {

void validate_wire(const WireSpec& wire) {
    if (!(wire.radius_m > 0.0 && wire.length_m > 0.0))
        throw std::invalid_argument("wire: radius and length must be positive");
    if (!(wire.mass_kg > 0.0 && wire.specific_heat_j_per_kgk > 0.0))
        throw std::invalid_argument("wire: mass and specific heat must be positive");
    if (!(wire.transition_temperature_k > 0.0))
        throw std::invalid_argument("wire: transition temperature must be positive (kelvin)");
}

ThermalNode make_node(double mass_kg, double cp, double temperature_k, std::string label) {
    return ThermalNode{temperature_k, mass_kg, cp, std::move(label)};
}

}  // namespace

BuiltNetwork build_network(const ActuatorSpec& spec, const AmbientMedium& medium) {
    validate(medium);
    const WireSpec& wire = wire_of(spec);
    validate_wire(wire);

    BuiltNetwork net;
    net.ambient_k = medium.temperature_k;
    net.transition_k = wire.transition_temperature_k;
    net.sma = make_node(wire.mass_kg, wire.specific_heat_j_per_kgk, medium.temperature_k, "sma");

    if (const auto* enc = std::get_if<EncapsulatedActuatorSpec>(&spec)) {
        if (!(enc->annulus_thickness_m > 0.0 && enc->membrane_thickness_m > 0.0))
            throw std::invalid_argument(
                "encapsulated actuator: radii must be strictly increasing "
                "(annulus and membrane thicknesses must be positive)");
        if (!(enc->pocket_mass_kg > 0.0 && enc->pocket_specific_heat_j_per_kgk > 0.0))
            throw std::invalid_argument("encapsulated actuator: pocket mass and Cp must be positive");
        if (!(enc->internal_h_w_per_m2k > 0.0))
            throw std::invalid_argument("encapsulated actuator: internal h must be positive");
        if (!(enc->membrane_conductivity_w_per_mk > 0.0))
            throw std::invalid_argument("encapsulated actuator: membrane conductivity must be positive");

        const double r_pocket = enc->pocket_radius_m();
        const double r_outer = enc->outer_radius_m();

        net.pocket = make_node(enc->pocket_mass_kg, enc->pocket_specific_heat_j_per_kgk,
                               medium.temperature_k, "pocket");

        net.chain.push_back(make_convection_element(
            {enc->internal_h_w_per_m2k, cylinder_side_area(wire.radius_m, wire.length_m)},
            "pocket convection"));
        net.chain.push_back(make_conduction_element(
            {r_pocket, r_outer, wire.length_m}, enc->membrane_conductivity_w_per_mk,
            "membrane conduction"));
        net.chain.push_back(make_convection_element(
            {medium.h_external_w_per_m2k, cylinder_side_area(r_outer, wire.length_m)},
            "external convection"));

        net.inner_resistance_k_per_w = net.chain[0].k_per_w;
        net.outer_resistance_k_per_w = net.chain[1].k_per_w + net.chain[2].k_per_w;
    } else {
        net.chain.push_back(make_convection_element(
            {medium.h_external_w_per_m2k, cylinder_side_area(wire.radius_m, wire.length_m)},
            "external convection"));
        net.inner_resistance_k_per_w = net.chain[0].k_per_w;
        net.outer_resistance_k_per_w = 0.0;
    }
    return net;
}

}  // namespace smasim
