#include "smasim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smasim {

double correct_displacement_mm(double perturbed_mm, double factor) {
    if (!(factor > 0.0))
        throw std::invalid_argument("correct_displacement: factor must be positive");
    return factor * perturbed_mm;
}

void validate(const Trajectory2D& traj) {
    if (traj.t_s.size() != traj.x_mm.size() || traj.t_s.size() != traj.y_mm.size())
        throw std::invalid_argument("trajectory: column lengths differ");
    if (!(traj.body_length_mm > 0.0))
        throw std::invalid_argument("trajectory: body length must be positive");
    for (std::size_t i = 0; i < traj.t_s.size(); ++i) {
        if (!std::isfinite(traj.x_mm[i]) || !std::isfinite(traj.y_mm[i]))
            throw std::invalid_argument("trajectory: non-finite coordinate");
        if (i > 0 && !(traj.t_s[i] > traj.t_s[i - 1]))
            throw std::invalid_argument("trajectory: time grid must be strictly increasing");
    }
}

double normalize_speed(double v_mm_per_s, double body_length_mm) {
    if (!(body_length_mm > 0.0))
        throw std::invalid_argument("normalize_speed: body length must be positive");
    return v_mm_per_s / body_length_mm;
}

SpeedSeries estimate_speed(const Trajectory2D& traj, double filter_window_s) {
    validate(traj);
    const std::size_t n = traj.t_s.size();
    if (n < 2) throw std::invalid_argument("estimate_speed: need at least two samples");

    double max_dt = 0.0;
    for (std::size_t i = 1; i < n; ++i) max_dt = std::max(max_dt, traj.t_s[i] - traj.t_s[i - 1]);
    if (filter_window_s < max_dt * (1.0 - 1e-12))
        throw std::invalid_argument(
            "estimate_speed: filter window shorter than the sample interval");

    SpeedSeries out;
    out.t_s = traj.t_s;
    out.body_length_mm = traj.body_length_mm;
    out.raw_mm_per_s.resize(n);

    auto slope = [&](std::size_t a, std::size_t b, const std::vector<double>& col) {
        return (col[b] - col[a]) / (traj.t_s[b] - traj.t_s[a]);
    };
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t a = (i == 0) ? 0 : i - 1;
        const std::size_t b = (i + 1 == n) ? i : i + 1;
        out.raw_mm_per_s[i] = std::hypot(slope(a, b, traj.x_mm), slope(a, b, traj.y_mm));
    }

    // Centered moving average over |t_j - t_i| <= w/2, truncated at the ends.
    out.speed_mm_per_s.resize(n);
    const double half = 0.5 * filter_window_s * (1.0 + 1e-9);
    std::size_t lo = 0, hi = 0;  // window [lo, hi)
    for (std::size_t i = 0; i < n; ++i) {
        while (traj.t_s[i] - traj.t_s[lo] > half) ++lo;
        if (hi < i + 1) hi = i + 1;
        while (hi < n && traj.t_s[hi] - traj.t_s[i] <= half) ++hi;
        double sum = 0.0;
        for (std::size_t j = lo; j < hi; ++j) sum += out.raw_mm_per_s[j];
        out.speed_mm_per_s[i] = sum / static_cast<double>(hi - lo);
    }

    out.avg_mm_per_s = 0.0;
    out.max_mm_per_s = 0.0;
    for (double v : out.speed_mm_per_s) {
        out.avg_mm_per_s += v;
        out.max_mm_per_s = std::max(out.max_mm_per_s, v);
    }
    out.avg_mm_per_s /= static_cast<double>(n);
    out.avg_bl_per_s = normalize_speed(out.avg_mm_per_s, traj.body_length_mm);
    out.max_bl_per_s = normalize_speed(out.max_mm_per_s, traj.body_length_mm);
    return out;
}

double turning_bias_per_mm(const Trajectory2D& traj) {
    validate(traj);
    const std::size_t n = traj.t_s.size();
    if (n < 3) throw std::invalid_argument("turning_bias: need at least three samples");

    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double ux = traj.x_mm[i] - traj.x_mm[i - 1];
        const double uy = traj.y_mm[i] - traj.y_mm[i - 1];
        const double vx = traj.x_mm[i + 1] - traj.x_mm[i];
        const double vy = traj.y_mm[i + 1] - traj.y_mm[i];
        const double wx = traj.x_mm[i + 1] - traj.x_mm[i - 1];
        const double wy = traj.y_mm[i + 1] - traj.y_mm[i - 1];
        const double lu = std::hypot(ux, uy);
        const double lv = std::hypot(vx, vy);
        const double lw = std::hypot(wx, wy);
        if (lu == 0.0 || lv == 0.0 || lw == 0.0) continue;  // stationary dwell
        // Signed Menger curvature: positive for a counterclockwise (leftward)
        // turn in the x-y plane.
        const double cross = ux * vy - uy * vx;
        sum += 2.0 * cross / (lu * lv * lw);
        ++count;
    }
    if (count == 0) return 0.0;
    return sum / static_cast<double>(count);
}

}  // namespace smasim
