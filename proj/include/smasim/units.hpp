#pragma once

namespace smasim {

inline constexpr double kZeroCelsiusK = 273.15;

constexpr double celsius_to_kelvin(double t_c) { return t_c + kZeroCelsiusK; }
constexpr double kelvin_to_celsius(double t_k) { return t_k - kZeroCelsiusK; }

// mAh at a nominal voltage -> joules
constexpr double mah_to_joules(double capacity_mah, double voltage_v) {
    return capacity_mah * voltage_v * 3.6;
}

}  // namespace smasim
