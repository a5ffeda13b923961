#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "smasim/actuator.hpp"
#include "smasim/simulate.hpp"

namespace smasim {

// Which electrical resistance the power computation references.
//   actuator_side: heat dissipated in the actuator wire itself (R_sma)
//   supply_side:   power drawn from the source (R_sma + tether)
enum class PowerAccounting { actuator_side, supply_side };

double reference_resistance_ohm(const DriveSpec& drive, PowerAccounting accounting);

// A sampled current waveform and the resistance it flows through.
struct CurrentTrace {
    std::vector<double> t_s;
    std::vector<double> current_a;
    double reference_resistance_ohm = 0.0;
};

void validate(const CurrentTrace& trace);

// P(t) = I(t)^2 * R, pointwise over the trace.
std::vector<double> instantaneous_power(const CurrentTrace& trace);

// Square-wave current implied by a PWM drive over a simulated trace's time
// grid: the on-current while the PWM signal is high, zero otherwise.
CurrentTrace current_trace_from_sim(const SimTrace& trace, const DriveSpec& drive,
                                    PowerAccounting accounting);

// Peak/average power statistics over back-to-back repetition windows.
//   peak per window:    mean of per-cycle maxima (cycles aligned to PWM periods)
//   average per window: mean of the power samples in the window
// Across windows, the mean and the sample standard deviation (n-1 denominator)
// of each statistic are reported.
struct PowerSummary {
    double pwm_frequency_hz = 0.0;
    double duty_cycle_pct = 0.0;
    double window_s = 0.0;

    std::vector<double> peak_per_rep_w;
    std::vector<double> avg_per_rep_w;

    double peak_mean_w = 0.0;
    double avg_mean_w = 0.0;
    double peak_esd_w = 0.0;
    double avg_esd_w = 0.0;

    std::size_t repetitions() const { return peak_per_rep_w.size(); }
};

// Folds a power series into a PowerSummary. The series is split into
// `repetitions` consecutive windows of `window_s`, starting at the first
// sample; each window must contain at least one full PWM cycle and the series
// must span all windows. Partial trailing cycles inside a window contribute to
// the average but not to the per-cycle peak statistic.
PowerSummary summarize_power(const std::vector<double>& t_s, const std::vector<double>& power_w,
                             const DriveSpec& drive, double window_s = 30.0,
                             std::size_t repetitions = 5);

PowerSummary summarize_power(const CurrentTrace& trace, const DriveSpec& drive,
                             double window_s = 30.0, std::size_t repetitions = 5);

struct SweepPoint {
    double pwm_frequency_hz = 0.0;
    double duty_cycle_pct = 0.0;
};

// Matched (frequency, duty-cycle) pairs, evaluated pairwise in order.
struct SweepGrid {
    std::vector<SweepPoint> points;

    static SweepGrid matched(const std::vector<double>& f_hz, const std::vector<double>& dc_pct);
    // The published five-point characterization set:
    // f = {1,2,3,4,5} Hz matched with DC = {7,8,9,10,10} %.
    static SweepGrid published();
};

struct SweepConfig {
    double window_s = 30.0;
    std::size_t repetitions = 5;
    PowerAccounting accounting = PowerAccounting::actuator_side;
    double steady_tolerance_k = 1e-3;
    std::size_t max_steady_cycles = 256;
};

// One summary per grid point, in grid order. Each point first settles into a
// periodic steady state, then is measured over repetitions * window_s of
// steady operation.
std::vector<PowerSummary> run_sweep(const ActuatorSpec& spec, const AmbientMedium& medium,
                                    const DriveSpec& base_drive, const SweepGrid& grid,
                                    const IntegratorConfig& cfg, const SweepConfig& sweep);

// Steady electrical power needed to hold the hot node at the transition
// temperature: (T_transition - T_ambient) / R_total.
double hold_power_w(const BuiltNetwork& network);

struct LoadItem {
    std::string name;
    double power_w = 0.0;
};

struct EnergyBudget {
    double capacity_mah = 0.0;
    double nominal_voltage_v = 0.0;
    double usable_fraction = 1.0;
    std::vector<LoadItem> loads;

    double usable_energy_j() const;
    double total_load_w() const;
};

void validate(const EnergyBudget& budget);

// usable energy / total load, in seconds.
double runtime_estimate_s(const EnergyBudget& budget);

}  // namespace smasim
