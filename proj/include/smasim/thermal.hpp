#pragma once

#include <span>
#include <string>

namespace smasim {

// Bulk material constants. `density` is optional (0 = unknown) and only used
// to derive masses from geometry.
struct MaterialProps {
    double thermal_conductivity_w_per_mk = 0.0;
    double specific_heat_j_per_kgk = 0.0;
    double density_kg_per_m3 = 0.0;
};

// Annular shell around a wire axis. r_in == r_out is allowed and models a
// zero-thickness (absent) layer.
struct CylindricalShell {
    double r_in_m = 0.0;
    double r_out_m = 0.0;
    double length_m = 0.0;
};

struct ConvectionSurface {
    double h_w_per_m2k = 0.0;
    double contact_area_m2 = 0.0;
};

// A lumped thermal mass with a single temperature state.
struct ThermalNode {
    double temperature_k = 0.0;
    double mass_kg = 0.0;
    double specific_heat_j_per_kgk = 0.0;
    std::string label;

    double heat_capacity_j_per_k() const { return mass_kg * specific_heat_j_per_kgk; }
};

enum class ResistanceKind { conduction, convection };

struct ResistanceElement {
    ResistanceKind kind = ResistanceKind::conduction;
    double k_per_w = 0.0;
    std::string label;
};

// ln(r_out/r_in) / (2*pi*L*k); 0 for a zero-thickness shell.
double conduction_resistance(const CylindricalShell& shell, double k_w_per_mk);

// 1 / (h * A).
double convection_resistance(const ConvectionSurface& surface);

double series_equivalent(std::span<const ResistanceElement> elements);
double series_equivalent(std::span<const double> values);

// (T_h - T_c) / R_eq; negative when heat flows from cold to hot side.
double heat_outflow(double t_hot_k, double t_cold_k, double r_eq_k_per_w);

// (Q_in - Q_out) / (m * C_p).
double node_derivative(const ThermalNode& node, double q_in_w, double q_out_w);

double cylinder_side_area(double radius_m, double length_m);

ResistanceElement make_conduction_element(const CylindricalShell& shell, double k_w_per_mk,
                                          std::string label);
ResistanceElement make_convection_element(const ConvectionSurface& surface, std::string label);

}  // namespace smasim
