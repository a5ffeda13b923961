#pragma once

#include <cstddef>
#include <vector>

namespace smasim {

// Undo the attenuation a laser displacement sensor suffers when measuring
// through an acrylic wall and water: true = factor * perturbed.
double correct_displacement_mm(double perturbed_mm, double factor = 1.58);

// Planar position track of a swimmer, in millimetres, with the body length
// used for speed normalization.
struct Trajectory2D {
    std::vector<double> t_s;
    std::vector<double> x_mm;
    std::vector<double> y_mm;
    double body_length_mm = 40.65;
};

void validate(const Trajectory2D& traj);

// Speed along a trajectory: central-difference velocity magnitude, smoothed by
// a centered moving average. Endpoints use one-sided differences and truncated
// averaging windows.
struct SpeedSeries {
    std::vector<double> t_s;
    std::vector<double> raw_mm_per_s;       // unfiltered |v|
    std::vector<double> speed_mm_per_s;     // filtered |v|
    double body_length_mm = 0.0;

    double avg_mm_per_s = 0.0;
    double max_mm_per_s = 0.0;
    double avg_bl_per_s = 0.0;
    double max_bl_per_s = 0.0;

    std::size_t size() const { return t_s.size(); }
};

SpeedSeries estimate_speed(const Trajectory2D& traj, double filter_window_s = 1.0);

// Body lengths per second.
double normalize_speed(double v_mm_per_s, double body_length_mm);

// Mean signed discrete curvature over the interior samples, in 1/mm.
// Negative values indicate a rightward (clockwise) turning tendency; a
// straight path gives 0. Stationary or collinear-degenerate samples are
// skipped.
double turning_bias_per_mm(const Trajectory2D& traj);

}  // namespace smasim
