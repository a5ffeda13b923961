// smasim: deterministic batch front end for the thermal/power toolkit.
//
// Commands:
//   simulate  integrate a config's actuator network, write trace.csv + events.json
//   sweep     run the {frequency, duty-cycle} grid, write sweep.csv
//   budget    battery runtime report, text + budget.json
//   analyze   trajectory CSV -> speed/turning report, speed.json
//
// Every output is a pure function of the inputs: no clocks, no RNG, all
// numbers printed with 9 significant digits.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "smasim/analysis.hpp"
#include "smasim/config.hpp"
#include "smasim/csv.hpp"
#include "smasim/power.hpp"
#include "smasim/simulate.hpp"
#include "smasim/units.hpp"
#include "smasim/version.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using smasim::io::format_g9;
using smasim::io::round9;

std::string default_out_dir() {
    const char* env = std::getenv("SMASIM_OUT_DIR");
    return (env && *env) ? env : "smasim-out";
}

void write_text(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const std::vector<std::string>& inputs) {
    json m;
    m["tool"] = smasim::kToolName;
    m["version"] = smasim::kVersion;
    m["command"] = command;
    m["inputs"] = inputs;
    m["output_dir"] = out_dir.string();
    m["deterministic"] = true;
    write_text(out_dir / "manifest.json", m.dump(2) + "\n");
}

struct SimOverrides {
    std::string method;  // "", "euler", or "exact"
    double dt = 0.0;     // 0 = keep config value
};

void apply_overrides(smasim::IntegratorConfig& cfg, const SimOverrides& ov) {
    if (ov.method == "euler") cfg.method = smasim::Method::explicit_euler;
    if (ov.method == "exact") cfg.method = smasim::Method::exact_linear_segment;
    if (ov.dt > 0.0) cfg.step_size_s = ov.dt;
}

const smasim::Scenario require_network_sections(smasim::Scenario sc, const std::string& cmd) {
    if (!sc.actuator || !sc.medium || !sc.drive)
        throw std::invalid_argument(cmd + ": config must provide actuator, medium, and drive");
    return sc;
}

json events_to_json(const smasim::TransitionEvents& ev) {
    json out;
    out["threshold_c"] = round9(smasim::kelvin_to_celsius(ev.threshold_k));
    out["total_up"] = ev.total_up;
    out["total_down"] = ev.total_down;
    json cycles = json::array();
    for (const auto& c : ev.cycles) {
        json jc;
        jc["cycle"] = c.cycle;
        jc["up_s"] = c.up_s ? json(round9(*c.up_s)) : json(nullptr);
        jc["down_s"] = c.down_s ? json(round9(*c.down_s)) : json(nullptr);
        jc["up_count"] = c.up_count;
        jc["down_count"] = c.down_count;
        jc["fraction_above"] = round9(c.fraction_above);
        cycles.push_back(jc);
    }
    out["cycles"] = cycles;
    return out;
}

int cmd_simulate(const std::string& config_path, const fs::path& out_dir,
                 const SimOverrides& ov) {
    smasim::Scenario sc =
        require_network_sections(smasim::load_scenario(config_path), "simulate");
    apply_overrides(sc.sim, ov);

    const smasim::BuiltNetwork net = smasim::build_network(*sc.actuator, *sc.medium);
    const smasim::SimTrace trace = smasim::integrate(net, *sc.drive, sc.sim);
    const smasim::TransitionEvents events = smasim::detect_transitions(trace, net.transition_k);

    std::ostringstream csv;
    smasim::io::write_trace_csv(csv, trace);
    write_text(out_dir / "trace.csv", csv.str());
    write_text(out_dir / "events.json", events_to_json(events).dump(2) + "\n");
    write_manifest(out_dir, "simulate", {config_path});

    double peak_k = trace.sma_k.front();
    for (double v : trace.sma_k) peak_k = std::max(peak_k, v);
    std::cout << "simulate: " << trace.size() << " samples over " << format_g9(trace.t_s.back())
              << " s; peak T_sma " << format_g9(smasim::kelvin_to_celsius(peak_k)) << " C; "
              << events.total_up << " up-crossing(s) of "
              << format_g9(smasim::kelvin_to_celsius(net.transition_k)) << " C\n"
              << "wrote " << (out_dir / "trace.csv").string() << ", "
              << (out_dir / "events.json").string() << "\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& grid_name,
              const fs::path& out_dir, const SimOverrides& ov) {
    smasim::Scenario sc = require_network_sections(smasim::load_scenario(config_path), "sweep");
    apply_overrides(sc.sim, ov);

    smasim::SweepGrid grid;
    if (grid_name == "paper") {
        grid = smasim::SweepGrid::published();
    } else if (grid_name == "custom") {
        if (!sc.sweep_grid)
            throw std::invalid_argument("sweep: --grid custom needs a sweep_grid config section");
        grid = *sc.sweep_grid;
    } else {
        throw std::invalid_argument("sweep: --grid must be 'paper' or 'custom'");
    }

    const auto rows =
        smasim::run_sweep(*sc.actuator, *sc.medium, *sc.drive, grid, sc.sim, sc.power);

    std::ostringstream csv;
    smasim::io::write_sweep_csv(csv, rows);
    write_text(out_dir / "sweep.csv", csv.str());
    write_manifest(out_dir, "sweep", {config_path});

    std::cout << "sweep: " << rows.size() << " grid points, window "
              << format_g9(sc.power.window_s) << " s x " << sc.power.repetitions
              << " repetitions\n"
              << "wrote " << (out_dir / "sweep.csv").string() << "\n";
    return 0;
}

int cmd_budget(const std::string& config_path, const fs::path& out_dir) {
    const smasim::Scenario sc = smasim::load_scenario(config_path);
    if (!sc.budget) throw std::invalid_argument("budget: config must provide a budget section");
    const smasim::EnergyBudget& b = *sc.budget;
    const double runtime_s = smasim::runtime_estimate_s(b);
    const double energy_j = b.usable_energy_j();
    const double load_w = b.total_load_w();

    json out;
    out["usable_energy_j"] = round9(energy_j);
    out["usable_energy_mwh"] = round9(energy_j / 3.6);
    out["total_load_mw"] = round9(load_w * 1e3);
    json loads;
    for (const auto& item : b.loads) loads[item.name] = round9(item.power_w * 1e3);
    out["loads_mw"] = loads;
    out["runtime_s"] = round9(runtime_s);
    out["runtime_min"] = round9(runtime_s / 60.0);
    write_text(out_dir / "budget.json", out.dump(2) + "\n");
    write_manifest(out_dir, "budget", {config_path});

    std::cout << "battery: " << format_g9(b.capacity_mah) << " mAh at "
              << format_g9(b.nominal_voltage_v) << " V, usable fraction "
              << format_g9(b.usable_fraction) << " -> " << format_g9(energy_j) << " J ("
              << format_g9(energy_j / 3.6) << " mWh)\n";
    std::cout << "load:";
    for (std::size_t i = 0; i < b.loads.size(); ++i)
        std::cout << (i ? " +" : "") << " " << b.loads[i].name << " "
                  << format_g9(b.loads[i].power_w * 1e3) << " mW";
    std::cout << " = " << format_g9(load_w * 1e3) << " mW\n";
    std::cout << "runtime: " << format_g9(runtime_s) << " s (" << format_g9(runtime_s / 60.0)
              << " min)\n"
              << "wrote " << (out_dir / "budget.json").string() << "\n";
    return 0;
}

int cmd_analyze(const std::string& traj_path, double body_length_mm, const fs::path& out_dir) {
    std::ifstream in(traj_path);
    if (!in) throw std::runtime_error("analyze: cannot open '" + traj_path + "'");
    const smasim::Trajectory2D traj = smasim::io::read_trajectory_csv(in, body_length_mm);
    const smasim::SpeedSeries speed = smasim::estimate_speed(traj);
    const double bias = smasim::turning_bias_per_mm(traj);

    json out;
    out["samples"] = speed.size();
    out["body_length_mm"] = round9(body_length_mm);
    out["filter_window_s"] = 1.0;
    out["avg_mm_per_s"] = round9(speed.avg_mm_per_s);
    out["max_mm_per_s"] = round9(speed.max_mm_per_s);
    out["avg_bl_per_s"] = round9(speed.avg_bl_per_s);
    out["max_bl_per_s"] = round9(speed.max_bl_per_s);
    out["turning_bias_per_mm"] = round9(bias);
    write_text(out_dir / "speed.json", out.dump(2) + "\n");
    write_manifest(out_dir, "analyze", {traj_path});

    std::cout << "analyze: " << speed.size() << " samples; avg " << format_g9(speed.avg_mm_per_s)
              << " mm/s (" << format_g9(speed.avg_bl_per_s) << " Bl/s); max "
              << format_g9(speed.max_mm_per_s) << " mm/s (" << format_g9(speed.max_bl_per_s)
              << " Bl/s); turning bias " << format_g9(bias) << " 1/mm\n"
              << "wrote " << (out_dir / "speed.json").string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lumped-parameter thermal simulation and power analysis for "
                 "PWM-driven wire microactuators"};
    app.set_version_flag("--version", std::string(smasim::kVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = default_out_dir();
    std::string grid_name = "paper";
    std::string traj_path;
    double body_length_mm = 40.65;
    SimOverrides ov;

    auto add_common = [&](CLI::App* sub, bool with_config) {
        if (with_config)
            sub->add_option("--config", config_path, "scenario JSON file")->required();
        sub->add_option("--out", out_dir,
                        "output directory (default: $SMASIM_OUT_DIR or smasim-out)");
    };
    auto add_sim_flags = [&](CLI::App* sub) {
        sub->add_option("--method", ov.method, "integrator: euler|exact (overrides config)")
            ->check(CLI::IsMember({"euler", "exact"}));
        sub->add_option("--dt", ov.dt, "explicit-euler step size in seconds (overrides config)")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* simulate = app.add_subcommand("simulate", "integrate and export a trace");
    add_common(simulate, true);
    add_sim_flags(simulate);

    CLI::App* sweep = app.add_subcommand("sweep", "power summaries over a frequency/DC grid");
    add_common(sweep, true);
    add_sim_flags(sweep);
    sweep->add_option("--grid", grid_name,
                      "'paper' (published five-point set) or 'custom' (config sweep_grid)")
        ->check(CLI::IsMember({"paper", "custom"}));

    CLI::App* budget = app.add_subcommand("budget", "battery runtime estimate");
    add_common(budget, true);

    CLI::App* analyze = app.add_subcommand("analyze", "trajectory speed and turning report");
    analyze->add_option("trajectory", traj_path, "trajectory CSV (t_s,x_mm,y_mm)")->required();
    analyze->add_option("--body-length", body_length_mm, "body length in mm")
        ->check(CLI::PositiveNumber);
    add_common(analyze, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return cmd_simulate(config_path, out_dir, ov);
        if (sweep->parsed()) return cmd_sweep(config_path, grid_name, out_dir, ov);
        if (budget->parsed()) return cmd_budget(config_path, out_dir);
        if (analyze->parsed()) return cmd_analyze(traj_path, body_length_mm, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
