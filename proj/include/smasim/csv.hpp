#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "smasim/analysis.hpp"
#include "smasim/power.hpp"
#include "smasim/simulate.hpp"

namespace smasim::io {

// Shortest representation with 9 significant digits ("%.9g"), the fixed
// numeric format of every CSV/JSON value this tool emits.
std::string format_g9(double value);

// Rounds to the value format_g9 prints, for numbers embedded in JSON.
double round9(double value);

// Header: t_s,T_sma_C,T_air_C,pwm,on_W
// Temperatures are written in Celsius; for single-node (bare) traces the
// T_air_C column carries the constant ambient temperature.
void write_trace_csv(std::ostream& os, const SimTrace& trace);

// Header: f_hz,dc_pct,p_peak_mw,p_avg_mw,p_peak_esd_mw,p_avg_esd_mw
void write_sweep_csv(std::ostream& os, const std::vector<PowerSummary>& rows);

// Header: t_s,x_mm,y_mm
Trajectory2D read_trajectory_csv(std::istream& is, double body_length_mm);
void write_trajectory_csv(std::ostream& os, const Trajectory2D& traj);

// Header: t_s,i_a  (current samples; the reference resistance travels in a
// JSON sidecar, see config.hpp)
CurrentTrace read_current_csv(std::istream& is, double reference_resistance_ohm);
void write_current_csv(std::ostream& os, const CurrentTrace& trace);

}  // namespace smasim::io
