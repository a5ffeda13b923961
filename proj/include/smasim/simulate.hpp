#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "smasim/actuator.hpp"

namespace smasim {

enum class Method { explicit_euler, exact_linear_segment };

// Run length, either wall-clock seconds or whole PWM cycles.
struct Horizon {
    enum class Kind { seconds, cycles };
    Kind kind = Kind::cycles;
    double seconds = 0.0;
    long long cycles = 1;

    static Horizon of_seconds(double s) { return {Kind::seconds, s, 0}; }
    static Horizon of_cycles(long long n) { return {Kind::cycles, 0.0, n}; }
    double resolve_s(const DriveSpec& drive) const;
};

struct IntegratorConfig {
    Method method = Method::exact_linear_segment;
    double step_size_s = 1e-8;      // explicit-euler only
    double trace_rate_hz = 1e4;     // recorded samples per second
    Horizon horizon = Horizon::of_cycles(1);
    // Recording the full integration grid is refused unless explicitly allowed;
    // a 1e-8-step run would otherwise hold 1e8 samples per second simulated.
    bool allow_full_rate = false;
    std::size_t max_trace_samples = 20'000'000;
};

struct NodeState {
    double sma_k = 0.0;
    std::optional<double> pocket_k;
};

// Decimated state sequence plus the drive metadata needed to interpret it.
struct SimTrace {
    std::vector<double> t_s;
    std::vector<double> sma_k;
    std::vector<double> pocket_k;  // empty for bare networks
    std::vector<std::uint8_t> pwm_on;
    std::vector<double> q_in_w;

    double ambient_k = 0.0;
    double transition_k = 0.0;
    double period_s = 0.0;
    double duty_cycle_pct = 0.0;
    double sample_interval_s = 0.0;

    double energy_in_j = 0.0;       // integral of the applied heat input
    double energy_out_j = 0.0;      // integral of heat rejected to ambient

    std::optional<std::size_t> steady_onset_sample;
    bool steady_converged = true;   // false when the cycle cap was hit first
    std::size_t cycles_run = 0;

    std::size_t size() const { return t_s.size(); }
    bool has_pocket() const { return !pocket_k.empty(); }
    NodeState final_state() const;
};

struct CycleCrossings {
    std::size_t cycle = 0;
    std::optional<double> up_s;     // first up-crossing in the cycle
    std::optional<double> down_s;   // first down-crossing at/after the up-crossing
    std::size_t up_count = 0;
    std::size_t down_count = 0;
    double fraction_above = 0.0;    // fraction of the cycle spent above threshold
};

struct TransitionEvents {
    double threshold_k = 0.0;
    std::vector<CycleCrossings> cycles;
    std::size_t total_up = 0;
    std::size_t total_down = 0;
    bool any() const { return total_up + total_down > 0; }
};

// Integrates the node ODEs under PWM drive from `init` (ambient when absent).
// The run advances exactly to the horizon; samples lie on the uniform trace
// grid, and the final grid point is recorded only when the horizon lands on
// it. A sample falling exactly on a PWM switch carries the incoming segment's
// input. All recorded temperatures are verified finite; an overflow reports
// the last valid time.
SimTrace integrate(const BuiltNetwork& network, const DriveSpec& drive,
                   const IntegratorConfig& cfg, const std::optional<NodeState>& init = {});

// Crossing times of `threshold_k` via linear interpolation between samples,
// grouped by PWM cycle.
TransitionEvents detect_transitions(const SimTrace& trace, double threshold_k);

// Repeats single-cycle integrations until consecutive cycles differ by less
// than `tol_k` at every sample, then runs `extra_steady_cycles` more. The
// returned trace is the concatenation, with steady_onset_sample marking the
// start of the first converged cycle.
SimTrace run_cycles_to_steady_state(const BuiltNetwork& network, const DriveSpec& drive,
                                    const IntegratorConfig& cfg, double tol_k,
                                    std::size_t max_cycles = 256,
                                    std::size_t extra_steady_cycles = 0);

}  // namespace smasim
