#include "smasim/power.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "smasim/units.hpp"

namespace smasim {

namespace {

double mean(const std::vector<double>& xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

// Sample standard deviation (n-1 denominator); 0 for fewer than two values.
double sample_stddev(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

}  // namespace

double reference_resistance_ohm(const DriveSpec& drive, PowerAccounting accounting) {
    return accounting == PowerAccounting::supply_side
               ? drive.sma_resistance_ohm + drive.tether_resistance_ohm
               : drive.sma_resistance_ohm;
}

void validate(const CurrentTrace& trace) {
    if (trace.t_s.size() != trace.current_a.size())
        throw std::invalid_argument("current trace: time and current lengths differ");
    if (trace.t_s.empty()) throw std::invalid_argument("current trace: empty");
    if (!(trace.reference_resistance_ohm > 0.0))
        throw std::invalid_argument("current trace: reference resistance must be positive");
    for (std::size_t i = 0; i < trace.t_s.size(); ++i) {
        if (!std::isfinite(trace.current_a[i]))
            throw std::invalid_argument("current trace: non-finite current sample");
        if (i > 0 && !(trace.t_s[i] > trace.t_s[i - 1]))
            throw std::invalid_argument("current trace: time grid must be strictly increasing");
    }
}

std::vector<double> instantaneous_power(const CurrentTrace& trace) {
    validate(trace);
    std::vector<double> p(trace.current_a.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        p[i] = trace.current_a[i] * trace.current_a[i] * trace.reference_resistance_ohm;
    return p;
}

CurrentTrace current_trace_from_sim(const SimTrace& trace, const DriveSpec& drive,
                                    PowerAccounting accounting) {
    if (trace.size() == 0) throw std::invalid_argument("current_trace_from_sim: empty trace");
    CurrentTrace out;
    out.t_s = trace.t_s;
    out.current_a.resize(trace.size());
    for (std::size_t i = 0; i < trace.size(); ++i)
        out.current_a[i] = trace.pwm_on[i] ? drive.on_current_a : 0.0;
    out.reference_resistance_ohm = reference_resistance_ohm(drive, accounting);
    return out;
}

PowerSummary summarize_power(const std::vector<double>& t_s, const std::vector<double>& power_w,
                             const DriveSpec& drive, double window_s, std::size_t repetitions) {
    validate(drive);
    if (t_s.size() != power_w.size())
        throw std::invalid_argument("summarize_power: time and power lengths differ");
    if (t_s.size() < 2) throw std::invalid_argument("summarize_power: need at least two samples");
    if (repetitions < 1) throw std::invalid_argument("summarize_power: need >= 1 repetition");

    const double period = drive.period_s();
    if (window_s < period * (1.0 - 1e-12))
        throw std::invalid_argument("summarize_power: window shorter than one PWM cycle");

    const double t0 = t_s.front();
    const double span = t_s.back() - t0;
    const double mean_dt = span / static_cast<double>(t_s.size() - 1);
    const double needed = window_s * static_cast<double>(repetitions);
    if (span + mean_dt + 1e-12 * needed < needed) {
        std::ostringstream msg;
        msg << "summarize_power: series spans " << span << " s but " << repetitions
            << " windows of " << window_s << " s need " << needed << " s";
        throw std::invalid_argument(msg.str());
    }

    const auto cycles_per_window =
        static_cast<std::size_t>(std::floor(window_s / period + 1e-9));

    PowerSummary out;
    out.pwm_frequency_hz = drive.pwm_frequency_hz;
    out.duty_cycle_pct = drive.duty_cycle_pct;
    out.window_s = window_s;
    out.peak_per_rep_w.reserve(repetitions);
    out.avg_per_rep_w.reserve(repetitions);

    std::size_t idx = 0;
    for (std::size_t rep = 0; rep < repetitions; ++rep) {
        const double w_start = t0 + static_cast<double>(rep) * window_s;
        const double w_end = w_start + window_s;

        while (idx < t_s.size() && t_s[idx] < w_start) ++idx;

        std::vector<double> cycle_max(cycles_per_window, 0.0);
        std::vector<bool> cycle_seen(cycles_per_window, false);
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = idx; i < t_s.size() && t_s[i] < w_end; ++i) {
            sum += power_w[i];
            ++count;
            const auto c = static_cast<std::size_t>((t_s[i] - w_start) / period);
            if (c < cycles_per_window) {
                if (!cycle_seen[c] || power_w[i] > cycle_max[c]) cycle_max[c] = power_w[i];
                cycle_seen[c] = true;
            }
        }
        if (count == 0)
            throw std::invalid_argument("summarize_power: a repetition window holds no samples");
        for (bool seen : cycle_seen)
            if (!seen)
                throw std::invalid_argument(
                    "summarize_power: a PWM cycle holds no samples; raise the sample rate");

        double peak_sum = 0.0;
        for (double m : cycle_max) peak_sum += m;
        out.peak_per_rep_w.push_back(peak_sum / static_cast<double>(cycles_per_window));
        out.avg_per_rep_w.push_back(sum / static_cast<double>(count));
    }

    out.peak_mean_w = mean(out.peak_per_rep_w);
    out.avg_mean_w = mean(out.avg_per_rep_w);
    out.peak_esd_w = sample_stddev(out.peak_per_rep_w);
    out.avg_esd_w = sample_stddev(out.avg_per_rep_w);
    return out;
}

PowerSummary summarize_power(const CurrentTrace& trace, const DriveSpec& drive, double window_s,
                             std::size_t repetitions) {
    return summarize_power(trace.t_s, instantaneous_power(trace), drive, window_s, repetitions);
}

SweepGrid SweepGrid::matched(const std::vector<double>& f_hz, const std::vector<double>& dc_pct) {
    if (f_hz.size() != dc_pct.size())
        throw std::invalid_argument("sweep grid: frequency and duty-cycle lists must match");
    if (f_hz.empty()) throw std::invalid_argument("sweep grid: empty");
    SweepGrid g;
    g.points.reserve(f_hz.size());
    for (std::size_t i = 0; i < f_hz.size(); ++i) g.points.push_back({f_hz[i], dc_pct[i]});
    return g;
}

SweepGrid SweepGrid::published() {
    return matched({1.0, 2.0, 3.0, 4.0, 5.0}, {7.0, 8.0, 9.0, 10.0, 10.0});
}

std::vector<PowerSummary> run_sweep(const ActuatorSpec& spec, const AmbientMedium& medium,
                                    const DriveSpec& base_drive, const SweepGrid& grid,
                                    const IntegratorConfig& cfg, const SweepConfig& sweep) {
    if (grid.points.empty()) throw std::invalid_argument("run_sweep: empty grid");
    const BuiltNetwork network = build_network(spec, medium);

    std::vector<PowerSummary> out;
    out.reserve(grid.points.size());
    for (const SweepPoint& pt : grid.points) {
        DriveSpec drive = base_drive;
        drive.pwm_frequency_hz = pt.pwm_frequency_hz;
        drive.duty_cycle_pct = pt.duty_cycle_pct;

        SimTrace settle = run_cycles_to_steady_state(network, drive, cfg, sweep.steady_tolerance_k,
                                                     sweep.max_steady_cycles);

        IntegratorConfig measure_cfg = cfg;
        measure_cfg.horizon =
            Horizon::of_seconds(sweep.window_s * static_cast<double>(sweep.repetitions));
        SimTrace measured = integrate(network, drive, measure_cfg, settle.final_state());

        const CurrentTrace current = current_trace_from_sim(measured, drive, sweep.accounting);
        out.push_back(summarize_power(current, drive, sweep.window_s, sweep.repetitions));
    }
    return out;
}

double hold_power_w(const BuiltNetwork& network) {
    return (network.transition_k - network.ambient_k) / network.total_resistance_k_per_w();
}

double EnergyBudget::usable_energy_j() const {
    return usable_fraction * mah_to_joules(capacity_mah, nominal_voltage_v);
}

double EnergyBudget::total_load_w() const {
    double sum = 0.0;
    for (const LoadItem& item : loads) sum += item.power_w;
    return sum;
}

void validate(const EnergyBudget& budget) {
    if (!(budget.capacity_mah > 0.0))
        throw std::invalid_argument("energy budget: capacity must be positive");
    if (!(budget.nominal_voltage_v > 0.0))
        throw std::invalid_argument("energy budget: voltage must be positive");
    if (!(budget.usable_fraction > 0.0) || budget.usable_fraction > 1.0)
        throw std::invalid_argument("energy budget: usable fraction must be in (0, 1]");
    for (const LoadItem& item : budget.loads)
        if (!(item.power_w >= 0.0) || !std::isfinite(item.power_w))
            throw std::invalid_argument("energy budget: load powers must be finite and >= 0");
}

double runtime_estimate_s(const EnergyBudget& budget) {
    validate(budget);
    const double load = budget.total_load_w();
    if (!(load > 0.0)) throw std::invalid_argument("energy budget: total load must be positive");
    return budget.usable_energy_j() / load;
}

}  // namespace smasim
