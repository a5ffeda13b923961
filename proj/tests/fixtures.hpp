#pragma once

// Shared builders for the published actuator configuration, assembled through
// the library API from the independently restated constants in oracle.hpp.

#include "oracle.hpp"
#include "smasim/actuator.hpp"

namespace fixtures {

inline smasim::WireSpec wire() {
    smasim::WireSpec w;
    w.radius_m = oracle::Reference::r_sma_m;
    w.length_m = oracle::Reference::length_m;
    w.mass_kg = oracle::Reference::sma_mass_kg;
    w.specific_heat_j_per_kgk = oracle::Reference::sma_cp;
    w.transition_temperature_k = oracle::Reference::transition_k;
    return w;
}

inline smasim::BareActuatorSpec bare() { return smasim::BareActuatorSpec{wire()}; }

inline smasim::EncapsulatedActuatorSpec encapsulated() {
    smasim::EncapsulatedActuatorSpec spec;
    spec.wire = wire();
    spec.annulus_thickness_m = oracle::Reference::annulus_m;
    spec.pocket_mass_kg = oracle::Reference::pocket_mass_kg;
    spec.pocket_specific_heat_j_per_kgk = oracle::Reference::pocket_cp;
    spec.internal_h_w_per_m2k = oracle::Reference::h_pocket;
    spec.membrane_thickness_m = oracle::Reference::membrane_m;
    spec.membrane_conductivity_w_per_mk = oracle::Reference::k_membrane;
    return spec;
}

inline smasim::AmbientMedium water() {
    return {"water", oracle::Reference::ambient_k, oracle::Reference::h_water};
}

inline smasim::AmbientMedium air() {
    return {"air", oracle::Reference::ambient_k, oracle::Reference::h_air};
}

inline smasim::DriveSpec drive_1hz_7pct() {
    smasim::DriveSpec d;
    d.pwm_frequency_hz = 1.0;
    d.duty_cycle_pct = 7.0;
    d.on_current_a = oracle::Reference::on_current_a;
    d.sma_resistance_ohm = oracle::Reference::r_sma_ohm;
    d.tether_resistance_ohm = oracle::Reference::tether_ohm;
    return d;
}

}  // namespace fixtures
