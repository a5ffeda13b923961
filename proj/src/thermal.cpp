#include "smasim/thermal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace smasim {

double cylinder_side_area(double radius_m, double length_m) {
    return 2.0 * std::numbers::pi * radius_m * length_m;
}

double conduction_resistance(const CylindricalShell& shell, double k_w_per_mk) {
    if (shell.r_in_m <= 0.0 || shell.r_out_m <= 0.0 || shell.length_m <= 0.0)
        throw std::invalid_argument("conduction_resistance: shell dimensions must be positive");
    if (shell.r_out_m < shell.r_in_m)
        throw std::invalid_argument("conduction_resistance: r_out must be >= r_in");
    if (k_w_per_mk <= 0.0)
        throw std::invalid_argument("conduction_resistance: thermal conductivity must be positive");
    if (shell.r_out_m == shell.r_in_m) return 0.0;
    return std::log(shell.r_out_m / shell.r_in_m) /
           (2.0 * std::numbers::pi * shell.length_m * k_w_per_mk);
}

double convection_resistance(const ConvectionSurface& surface) {
    if (surface.h_w_per_m2k <= 0.0)
        throw std::invalid_argument("convection_resistance: heat-transfer coefficient must be positive");
    if (surface.contact_area_m2 <= 0.0)
        throw std::invalid_argument("convection_resistance: contact area must be positive");
    return 1.0 / (surface.h_w_per_m2k * surface.contact_area_m2);
}

double series_equivalent(std::span<const double> values) {
    if (values.empty())
        throw std::invalid_argument("series_equivalent: element list must be nonempty");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum;
}

double series_equivalent(std::span<const ResistanceElement> elements) {
    if (elements.empty())
        throw std::invalid_argument("series_equivalent: element list must be nonempty");
    double sum = 0.0;
    for (const auto& e : elements) sum += e.k_per_w;
    return sum;
}

double heat_outflow(double t_hot_k, double t_cold_k, double r_eq_k_per_w) {
    if (r_eq_k_per_w <= 0.0)
        throw std::invalid_argument("heat_outflow: equivalent resistance must be positive");
    return (t_hot_k - t_cold_k) / r_eq_k_per_w;
}

double node_derivative(const ThermalNode& node, double q_in_w, double q_out_w) {
    const double heat_capacity = node.heat_capacity_j_per_k();
    if (heat_capacity <= 0.0)
        throw std::invalid_argument("node_derivative: node heat capacity must be positive");
    return (q_in_w - q_out_w) / heat_capacity;
}

ResistanceElement make_conduction_element(const CylindricalShell& shell, double k_w_per_mk,
                                          std::string label) {
    return {ResistanceKind::conduction, conduction_resistance(shell, k_w_per_mk), std::move(label)};
}

ResistanceElement make_convection_element(const ConvectionSurface& surface, std::string label) {
    return {ResistanceKind::convection, convection_resistance(surface), std::move(label)};
}

}  // namespace smasim
