#pragma once

#include <optional>
#include <string>

#include "smasim/actuator.hpp"
#include "smasim/power.hpp"
#include "smasim/simulate.hpp"

namespace smasim {

// One self-contained run description, loaded from JSON. Every numeric key
// carries an explicit unit suffix (e.g. temperature_c, length_mm); unknown or
// unlabeled keys are rejected so a config cannot silently change meaning.
//
// Sections:
//   actuator   geometry/material of a bare or encapsulated device
//   medium     ambient fluid (name, temperature_c, h_w_per_m2k)
//   drive      PWM and electrical constants
//   sim        integrator choice, step, trace rate, horizon
//   power      measurement protocol (window_s, repetitions, accounting, ...)
//   sweep_grid optional custom {f_hz[], dc_pct[]} matched lists
//   budget     battery and load list for runtime estimation
struct Scenario {
    std::string name;
    std::optional<ActuatorSpec> actuator;
    std::optional<AmbientMedium> medium;
    std::optional<DriveSpec> drive;
    IntegratorConfig sim;
    SweepConfig power;
    std::optional<SweepGrid> sweep_grid;
    std::optional<EnergyBudget> budget;
};

Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);

// Sidecar for measured-current CSVs: {"reference_resistance_ohm": <Ω>}.
double parse_current_sidecar(const std::string& json_text);

}  // namespace smasim
