#include "smasim/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "smasim/units.hpp"

namespace smasim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw std::invalid_argument("config: " + where + ": " + what);
}

// Strict object view: every key must be consumed by exactly one accessor, so
// misspelled or unit-less keys ("temperature" instead of "temperature_c") are
// reported instead of ignored.
class Object {
public:
    Object(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail(path_, "expected a JSON object");
    }

    bool has(const std::string& key) {
        mark(key);
        return j_.contains(key);
    }

    double number(const std::string& key) {
        const json& v = get(key);
        if (!v.is_number()) fail(path_ + "." + key, "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) fail(path_ + "." + key, "must be finite");
        return d;
    }

    double number_or(const std::string& key, double fallback) {
        mark(key);
        return j_.contains(key) ? number(key) : fallback;
    }

    long long integer(const std::string& key) {
        const json& v = get(key);
        if (!v.is_number_integer()) fail(path_ + "." + key, "expected an integer");
        return v.get<long long>();
    }

    bool boolean_or(const std::string& key, bool fallback) {
        mark(key);
        if (!j_.contains(key)) return fallback;
        const json& v = get(key);
        if (!v.is_boolean()) fail(path_ + "." + key, "expected true/false");
        return v.get<bool>();
    }

    std::string text(const std::string& key) {
        const json& v = get(key);
        if (!v.is_string()) fail(path_ + "." + key, "expected a string");
        return v.get<std::string>();
    }

    std::string text_or(const std::string& key, const std::string& fallback) {
        mark(key);
        return j_.contains(key) ? text(key) : fallback;
    }

    std::vector<double> number_list(const std::string& key) {
        const json& v = get(key);
        if (!v.is_array()) fail(path_ + "." + key, "expected an array of numbers");
        std::vector<double> out;
        for (const json& e : v) {
            if (!e.is_number()) fail(path_ + "." + key, "expected an array of numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }

    Object child(const std::string& key) { return Object(get(key), path_ + "." + key); }

    const json& raw(const std::string& key) { return get(key); }

    // Call after reading all known keys.
    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            bool known = false;
            for (const auto& k : seen_)
                if (k == it.key()) known = true;
            if (!known) {
                std::ostringstream msg;
                msg << "unknown key '" << it.key() << "' (keys must carry unit suffixes; known: ";
                for (std::size_t i = 0; i < seen_.size(); ++i)
                    msg << (i ? ", " : "") << seen_[i];
                msg << ")";
                fail(path_, msg.str());
            }
        }
    }

private:
    const json& get(const std::string& key) {
        mark(key);
        if (!j_.contains(key)) fail(path_, "missing required key '" + key + "'");
        return j_.at(key);
    }

    void mark(const std::string& key) {
        for (const auto& k : seen_)
            if (k == key) return;
        seen_.push_back(key);
    }

    const json& j_;
    std::string path_;
    mutable std::vector<std::string> seen_;
};

WireSpec parse_wire(Object w) {
    WireSpec wire;
    const bool has_radius = w.has("radius_mm");
    const bool has_diameter = w.has("diameter_mm");
    if (has_radius == has_diameter)
        fail("actuator.wire", "give exactly one of radius_mm or diameter_mm");
    wire.radius_m = has_radius ? w.number("radius_mm") * 1e-3 : w.number("diameter_mm") * 0.5e-3;
    wire.length_m = w.number("length_mm") * 1e-3;
    wire.mass_kg = w.number("mass_kg");
    wire.specific_heat_j_per_kgk = w.number("specific_heat_j_per_kgk");
    wire.transition_temperature_k =
        celsius_to_kelvin(w.number_or("transition_temperature_c", 90.0));
    w.finish();
    return wire;
}

ActuatorSpec parse_actuator(Object a) {
    const std::string kind = a.text("kind");
    WireSpec wire = parse_wire(a.child("wire"));
    if (kind == "bare") {
        a.finish();
        return BareActuatorSpec{wire};
    }
    if (kind != "encapsulated")
        fail("actuator.kind", "expected 'bare' or 'encapsulated', got '" + kind + "'");

    EncapsulatedActuatorSpec spec;
    spec.wire = wire;
    Object p = a.child("pocket");
    spec.annulus_thickness_m = p.number("annulus_thickness_mm") * 1e-3;
    spec.pocket_mass_kg = p.number("mass_kg");
    spec.pocket_specific_heat_j_per_kgk = p.number("specific_heat_j_per_kgk");
    spec.internal_h_w_per_m2k = p.number("internal_h_w_per_m2k");
    p.finish();
    Object m = a.child("membrane");
    spec.membrane_thickness_m = m.number("thickness_mm") * 1e-3;
    spec.membrane_conductivity_w_per_mk = m.number("conductivity_w_per_mk");
    m.finish();
    a.finish();
    return spec;
}

AmbientMedium parse_medium(Object m) {
    AmbientMedium medium;
    medium.name = m.text("name");
    medium.temperature_k = celsius_to_kelvin(m.number("temperature_c"));
    medium.h_external_w_per_m2k = m.number("h_w_per_m2k");
    m.finish();
    validate(medium);
    return medium;
}

DriveSpec parse_drive(Object d) {
    DriveSpec drive;
    drive.pwm_frequency_hz = d.number("pwm_frequency_hz");
    drive.duty_cycle_pct = d.number("duty_cycle_pct");
    drive.on_current_a = d.number("on_current_a");
    drive.sma_resistance_ohm = d.number("sma_resistance_ohm");
    drive.tether_resistance_ohm = d.number_or("tether_resistance_ohm", 0.0);
    if (d.has("on_voltage_v")) drive.on_voltage_v = d.number("on_voltage_v");
    d.finish();
    validate(drive);
    return drive;
}

void parse_sim(Object s, IntegratorConfig& cfg) {
    const std::string method = s.text_or("method", "exact");
    if (method == "euler")
        cfg.method = Method::explicit_euler;
    else if (method == "exact")
        cfg.method = Method::exact_linear_segment;
    else
        fail("sim.method", "expected 'euler' or 'exact', got '" + method + "'");
    cfg.step_size_s = s.number_or("step_size_s", cfg.step_size_s);
    cfg.trace_rate_hz = s.number_or("trace_rate_hz", cfg.trace_rate_hz);
    const bool has_cycles = s.has("horizon_cycles");
    const bool has_seconds = s.has("horizon_s");
    if (has_cycles && has_seconds)
        fail("sim", "give at most one of horizon_cycles or horizon_s");
    if (has_cycles) cfg.horizon = Horizon::of_cycles(s.integer("horizon_cycles"));
    if (has_seconds) cfg.horizon = Horizon::of_seconds(s.number("horizon_s"));
    cfg.allow_full_rate = s.boolean_or("allow_full_rate", cfg.allow_full_rate);
    s.finish();
}

void parse_power(Object p, SweepConfig& cfg) {
    cfg.window_s = p.number_or("window_s", cfg.window_s);
    if (p.has("repetitions")) {
        const long long reps = p.integer("repetitions");
        if (reps < 1) fail("power.repetitions", "must be >= 1");
        cfg.repetitions = static_cast<std::size_t>(reps);
    }
    const std::string acc = p.text_or("accounting", "actuator_side");
    if (acc == "actuator_side")
        cfg.accounting = PowerAccounting::actuator_side;
    else if (acc == "supply_side")
        cfg.accounting = PowerAccounting::supply_side;
    else
        fail("power.accounting", "expected 'actuator_side' or 'supply_side', got '" + acc + "'");
    cfg.steady_tolerance_k = p.number_or("steady_tolerance_k", cfg.steady_tolerance_k);
    if (p.has("max_steady_cycles")) {
        const long long cap = p.integer("max_steady_cycles");
        if (cap < 2) fail("power.max_steady_cycles", "must be >= 2");
        cfg.max_steady_cycles = static_cast<std::size_t>(cap);
    }
    p.finish();
}

EnergyBudget parse_budget(Object b) {
    EnergyBudget budget;
    Object batt = b.child("battery");
    budget.capacity_mah = batt.number("capacity_mah");
    budget.nominal_voltage_v = batt.number("nominal_voltage_v");
    budget.usable_fraction = batt.number_or("usable_fraction", 1.0);
    batt.finish();
    const json& loads = b.raw("loads_mw");
    if (!loads.is_object()) fail("budget.loads_mw", "expected an object of name -> mW");
    for (auto it = loads.begin(); it != loads.end(); ++it) {
        if (!it.value().is_number())
            fail("budget.loads_mw." + it.key(), "expected a number (mW)");
        budget.loads.push_back({it.key(), it.value().get<double>() * 1e-3});
    }
    b.finish();
    validate(budget);
    return budget;
}

json parse_json(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument("config: " + what + " is not valid JSON");
    return j;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
    const json root_json = parse_json(json_text, "scenario");
    Object root(root_json, "$");
    Scenario sc;
    sc.name = root.text_or("name", "");
    if (root.has("actuator")) sc.actuator = parse_actuator(root.child("actuator"));
    if (root.has("medium")) sc.medium = parse_medium(root.child("medium"));
    if (root.has("drive")) sc.drive = parse_drive(root.child("drive"));
    if (root.has("sim")) parse_sim(root.child("sim"), sc.sim);
    if (root.has("power")) parse_power(root.child("power"), sc.power);
    if (root.has("sweep_grid")) {
        Object g = root.child("sweep_grid");
        sc.sweep_grid = SweepGrid::matched(g.number_list("f_hz"), g.number_list("dc_pct"));
        g.finish();
    }
    if (root.has("budget")) sc.budget = parse_budget(root.child("budget"));
    root.finish();
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

double parse_current_sidecar(const std::string& json_text) {
    const json root_json = parse_json(json_text, "current sidecar");
    Object root(root_json, "$");
    const double r = root.number("reference_resistance_ohm");
    root.finish();
    if (!(r > 0.0))
        throw std::invalid_argument("config: reference_resistance_ohm must be positive");
    return r;
}

}  // namespace smasim
