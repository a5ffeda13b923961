#include "smasim/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "smasim/units.hpp"

namespace smasim::io {

namespace {

std::string trim_right(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    return s;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& field, std::size_t line_no) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        std::ostringstream msg;
        msg << "csv: line " << line_no << ": '" << field << "' is not a number";
        throw std::invalid_argument(msg.str());
    }
    return v;
}

void expect_header(std::istream& is, const std::string& expected) {
    std::string line;
    if (!std::getline(is, line))
        throw std::invalid_argument("csv: empty input, expected header '" + expected + "'");
    if (trim_right(line) != expected)
        throw std::invalid_argument("csv: bad header '" + trim_right(line) + "', expected '" +
                                    expected + "'");
}

// Reads rows of exactly `width` columns; blank lines are skipped.
std::vector<std::vector<double>> read_rows(std::istream& is, std::size_t width) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        line = trim_right(line);
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != width) {
            std::ostringstream msg;
            msg << "csv: line " << line_no << ": expected " << width << " columns, got "
                << fields.size();
            throw std::invalid_argument(msg.str());
        }
        std::vector<double> row(width);
        for (std::size_t i = 0; i < width; ++i) row[i] = parse_double(fields[i], line_no);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string format_g9(double value) {
    if (value == 0.0) value = 0.0;  // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

double round9(double value) {
    return std::strtod(format_g9(value).c_str(), nullptr);
}

void write_trace_csv(std::ostream& os, const SimTrace& trace) {
    os << "t_s,T_sma_C,T_air_C,pwm,on_W\n";
    const double ambient_c = kelvin_to_celsius(trace.ambient_k);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const double air_c =
            trace.has_pocket() ? kelvin_to_celsius(trace.pocket_k[i]) : ambient_c;
        os << format_g9(trace.t_s[i]) << ',' << format_g9(kelvin_to_celsius(trace.sma_k[i]))
           << ',' << format_g9(air_c) << ',' << int(trace.pwm_on[i]) << ','
           << format_g9(trace.q_in_w[i]) << '\n';
    }
}

void write_sweep_csv(std::ostream& os, const std::vector<PowerSummary>& rows) {
    os << "f_hz,dc_pct,p_peak_mw,p_avg_mw,p_peak_esd_mw,p_avg_esd_mw\n";
    for (const PowerSummary& r : rows) {
        os << format_g9(r.pwm_frequency_hz) << ',' << format_g9(r.duty_cycle_pct) << ','
           << format_g9(r.peak_mean_w * 1e3) << ',' << format_g9(r.avg_mean_w * 1e3) << ','
           << format_g9(r.peak_esd_w * 1e3) << ',' << format_g9(r.avg_esd_w * 1e3) << '\n';
    }
}

Trajectory2D read_trajectory_csv(std::istream& is, double body_length_mm) {
    expect_header(is, "t_s,x_mm,y_mm");
    Trajectory2D traj;
    traj.body_length_mm = body_length_mm;
    for (const auto& row : read_rows(is, 3)) {
        traj.t_s.push_back(row[0]);
        traj.x_mm.push_back(row[1]);
        traj.y_mm.push_back(row[2]);
    }
    validate(traj);
    return traj;
}

void write_trajectory_csv(std::ostream& os, const Trajectory2D& traj) {
    os << "t_s,x_mm,y_mm\n";
    for (std::size_t i = 0; i < traj.t_s.size(); ++i)
        os << format_g9(traj.t_s[i]) << ',' << format_g9(traj.x_mm[i]) << ','
           << format_g9(traj.y_mm[i]) << '\n';
}

CurrentTrace read_current_csv(std::istream& is, double reference_resistance_ohm) {
    expect_header(is, "t_s,i_a");
    CurrentTrace trace;
    trace.reference_resistance_ohm = reference_resistance_ohm;
    for (const auto& row : read_rows(is, 2)) {
        trace.t_s.push_back(row[0]);
        trace.current_a.push_back(row[1]);
    }
    validate(trace);
    return trace;
}

void write_current_csv(std::ostream& os, const CurrentTrace& trace) {
    os << "t_s,i_a\n";
    for (std::size_t i = 0; i < trace.t_s.size(); ++i)
        os << format_g9(trace.t_s[i]) << ',' << format_g9(trace.current_a[i]) << '\n';
}

}  // namespace smasim::io
