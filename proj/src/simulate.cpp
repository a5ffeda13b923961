#include "smasim/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace smasim {

namespace {

struct SystemParams {
    bool two_node = false;
    double mc1 = 0.0;  // sma heat capacity, J/K
    double mc2 = 0.0;  // pocket heat capacity, J/K
    double g1 = 0.0;   // 1 / inner resistance, W/K
    double g2 = 0.0;   // 1 / outer chain resistance, W/K
    double ambient_k = 0.0;
};

SystemParams system_params(const BuiltNetwork& net) {
    SystemParams p;
    p.two_node = net.encapsulated();
    p.mc1 = net.sma.heat_capacity_j_per_k();
    p.g1 = 1.0 / net.inner_resistance_k_per_w;
    p.ambient_k = net.ambient_k;
    if (p.two_node) {
        p.mc2 = net.pocket->heat_capacity_j_per_k();
        p.g2 = 1.0 / net.outer_resistance_k_per_w;
    }
    return p;
}

// Node time constants against the parallel combination of attached resistances.
struct TimeConstants {
    double sma_s = 0.0;
    double pocket_s = 0.0;  // 0 when bare
};

TimeConstants time_constants(const SystemParams& p) {
    TimeConstants tc;
    tc.sma_s = p.mc1 / p.g1;
    if (p.two_node) tc.pocket_s = p.mc2 / (p.g1 + p.g2);
    return tc;
}

void check_finite(double t1, double t2, bool two_node, double last_valid_t) {
    if (std::isfinite(t1) && (!two_node || std::isfinite(t2))) return;
    std::ostringstream msg;
    msg << "integration diverged (non-finite temperature); last valid time " << last_valid_t
        << " s";
    throw std::runtime_error(msg.str());
}

// Exact update of the piecewise-linear system over an interval with constant
// heat input. Also accumulates the closed-form integral of the heat rejected
// to ambient, so the energy bookkeeping does not rely on the state update.
class ExactStepper {
public:
    explicit ExactStepper(const SystemParams& p) : p_(p) {
        if (p_.two_node) {
            a11_ = -p_.g1 / p_.mc1;
            a12_ = p_.g1 / p_.mc1;
            a21_ = p_.g1 / p_.mc2;
            a22_ = -(p_.g1 + p_.g2) / p_.mc2;
            const double tr = a11_ + a22_;
            const double det = a11_ * a22_ - a12_ * a21_;
            const double disc = tr * tr - 4.0 * det;
            sq_ = std::sqrt(std::max(disc, 0.0));
            lam1_ = 0.5 * (tr + sq_);
            lam2_ = 0.5 * (tr - sq_);
        } else {
            lam1_ = -p_.g1 / p_.mc1;
        }
    }

    double slowest_time_constant() const { return -1.0 / lam1_; }

    void advance(double& t1, double& t2, double h, double q, double& e_out_j) const {
        if (h <= 0.0) return;
        if (!p_.two_node) {
            const double r = 1.0 / p_.g1;
            const double tss = p_.ambient_k + q * r;
            const double em1 = std::expm1(lam1_ * h);
            e_out_j += q * h + (t1 - tss) * em1 / (lam1_ * r);
            t1 = tss + (t1 - tss) * (em1 + 1.0);
            return;
        }
        const double s1 = p_.ambient_k + q * (1.0 / p_.g1 + 1.0 / p_.g2);
        const double s2 = p_.ambient_k + q / p_.g2;
        const double d1 = t1 - s1;
        const double d2 = t2 - s2;

        double e11, e12, e21, e22;  // exp(A h)
        double j21, j22;            // ambient-facing row of integral(exp(A t), 0..h)
        if (sq_ > 1e-9 * std::abs(lam1_ + lam2_)) {
            const double x1 = std::exp(lam1_ * h);
            const double x2 = std::exp(lam2_ * h);
            const double inv = 1.0 / sq_;
            e11 = (x1 * (a11_ - lam2_) - x2 * (a11_ - lam1_)) * inv;
            e12 = (x1 - x2) * a12_ * inv;
            e21 = (x1 - x2) * a21_ * inv;
            e22 = (x1 * (a22_ - lam2_) - x2 * (a22_ - lam1_)) * inv;
            const double p1 = std::expm1(lam1_ * h) / lam1_;
            const double p2 = std::expm1(lam2_ * h) / lam2_;
            j21 = (p1 - p2) * a21_ * inv;
            j22 = (p1 * (a22_ - lam2_) - p2 * (a22_ - lam1_)) * inv;
        } else {
            // Repeated eigenvalue: (A - lam I)^2 = 0, so the series terminates.
            const double lam = 0.5 * (lam1_ + lam2_);
            const double x = std::exp(lam * h);
            e11 = x * (1.0 + h * (a11_ - lam));
            e12 = x * h * a12_;
            e21 = x * h * a21_;
            e22 = x * (1.0 + h * (a22_ - lam));
            const double phi = std::expm1(lam * h) / lam;
            const double ramp = (h * x - phi) / lam;  // integral of t*exp(lam t)
            j21 = ramp * a21_;
            j22 = phi + ramp * (a22_ - lam);
        }

        e_out_j += q * h + p_.g2 * (j21 * d1 + j22 * d2);
        const double n1 = s1 + e11 * d1 + e12 * d2;
        const double n2 = s2 + e21 * d1 + e22 * d2;
        t1 = n1;
        t2 = n2;
    }

private:
    SystemParams p_;
    double a11_ = 0, a12_ = 0, a21_ = 0, a22_ = 0;
    double lam1_ = 0, lam2_ = 0, sq_ = 0;
};

struct TraceBuilder {
    SimTrace trace;
    bool two_node = false;

    void reserve(std::size_t n) {
        trace.t_s.reserve(n);
        trace.sma_k.reserve(n);
        if (two_node) trace.pocket_k.reserve(n);
        trace.pwm_on.reserve(n);
        trace.q_in_w.reserve(n);
    }

    void record(double t, double t1, double t2, bool on, double q) {
        check_finite(t1, t2, two_node, trace.t_s.empty() ? 0.0 : trace.t_s.back());
        trace.t_s.push_back(t);
        trace.sma_k.push_back(t1);
        if (two_node) trace.pocket_k.push_back(t2);
        trace.pwm_on.push_back(on ? 1 : 0);
        trace.q_in_w.push_back(q);
    }
};

void check_trace_budget(std::size_t samples, const IntegratorConfig& cfg) {
    if (samples > cfg.max_trace_samples && !cfg.allow_full_rate) {
        std::ostringstream msg;
        msg << "trace would hold " << samples << " samples (cap " << cfg.max_trace_samples
            << "); lower trace_rate_hz or set allow_full_rate for short horizons";
        throw std::invalid_argument(msg.str());
    }
}

template <bool kTwoNode>
SimTrace integrate_euler(const SystemParams& p, const DriveSpec& drive,
                         const IntegratorConfig& cfg, double horizon_s, const NodeState& init) {
    const double dt = cfg.step_size_s;
    const double period = drive.period_s();
    const double on_dur = drive.on_duration_s();
    const double q_on = joule_on_phase(drive);

    const auto tc = time_constants(p);
    const double min_tau = kTwoNode ? std::min(tc.sma_s, tc.pocket_s) : tc.sma_s;
    if (dt >= 2.0 * min_tau) {
        const bool pocket_limits = kTwoNode && tc.pocket_s < tc.sma_s;
        std::ostringstream msg;
        msg << "explicit-euler unstable: step " << dt << " s >= 2x "
            << (pocket_limits ? "pocket" : "sma") << " node time constant (" << min_tau
            << " s); use dt < " << 2.0 * min_tau << " s or the exact method";
        throw std::invalid_argument(msg.str());
    }

    long long stride = std::llround(1.0 / (cfg.trace_rate_hz * dt));
    stride = std::max<long long>(stride, 1);
    const double sample_dt = static_cast<double>(stride) * dt;
    // Integrate exactly to the horizon; record every grid point inside it. The
    // final grid point is emitted only when the horizon lands on the grid.
    const long long total_steps = std::llround(horizon_s / dt);
    const long long n_samples = std::min(
        static_cast<long long>(std::floor(horizon_s / sample_dt + 1e-9)), total_steps / stride);
    check_trace_budget(static_cast<std::size_t>(n_samples) + 1, cfg);

    TraceBuilder tb;
    tb.two_node = kTwoNode;
    tb.reserve(static_cast<std::size_t>(n_samples) + 1);

    double t1 = init.sma_k;
    double t2 = kTwoNode ? *init.pocket_k : 0.0;
    const double c1 = dt / p.mc1;
    const double c2 = kTwoNode ? dt / p.mc2 : 0.0;
    const double g1 = p.g1;
    const double g2 = p.g2;
    const double ta = p.ambient_k;

    double e_in = 0.0;
    double e_out = 0.0;
    long long i = 0;  // completed steps
    long long k = 0;  // next sample index

    // Advances steps [i, seg_end) under constant input, emitting due samples.
    // A sample landing exactly on a segment boundary is recorded by the next
    // segment, so it carries the input that takes effect there.
    auto run_segment = [&](long long seg_end, double q, bool on) {
        seg_end = std::min(seg_end, total_steps);
        while (i < seg_end) {
            if (k * stride == i) {
                tb.record(static_cast<double>(i) * dt, t1, t2, on, q);
                ++k;
            }
            const long long stop = std::min(seg_end, k * stride);
            const long long span = stop - i;
            if (span <= 0) break;
            double out_sum = 0.0;
            if constexpr (kTwoNode) {
                for (long long s = 0; s < span; ++s) {
                    const double f12 = (t1 - t2) * g1;
                    const double fa = (t2 - ta) * g2;
                    t1 += c1 * (q - f12);
                    t2 += c2 * (f12 - fa);
                    out_sum += fa;
                }
            } else {
                for (long long s = 0; s < span; ++s) {
                    const double fa = (t1 - ta) * g1;
                    t1 += c1 * (q - fa);
                    out_sum += fa;
                }
            }
            i = stop;
            e_in += q * static_cast<double>(span) * dt;
            e_out += out_sum * dt;
            check_finite(t1, t2, kTwoNode, static_cast<double>(i) * dt);
        }
    };

    for (long long cycle = 0; ; ++cycle) {
        const long long s_start = std::llround(static_cast<double>(cycle) * period / dt);
        if (s_start >= total_steps) break;
        const long long s_on_end = s_start + std::llround(on_dur / dt);
        const long long s_next = std::llround(static_cast<double>(cycle + 1) * period / dt);
        run_segment(s_on_end, q_on, true);
        run_segment(s_next, 0.0, false);
        if (s_next <= s_start) break;  // degenerate guard
    }
    if (k == n_samples && n_samples * stride == total_steps) {
        // Trailing sample lands exactly on the horizon; label it with the
        // input that takes effect there.
        const double t_end = static_cast<double>(total_steps) * dt;
        const long long cyc = static_cast<long long>(std::floor(t_end / period + 1e-9));
        const long long s_c = std::llround(static_cast<double>(cyc) * period / dt);
        const bool on = (total_steps - s_c) < std::llround(on_dur / dt);
        tb.record(t_end, t1, t2, on, on ? q_on : 0.0);
    }

    tb.trace.energy_in_j = e_in;
    tb.trace.energy_out_j = e_out;
    tb.trace.sample_interval_s = sample_dt;
    return std::move(tb.trace);
}

SimTrace integrate_exact(const SystemParams& p, const DriveSpec& drive,
                         const IntegratorConfig& cfg, double horizon_s, const NodeState& init) {
    const double period = drive.period_s();
    const double on_dur = drive.on_duration_s();
    const double q_on = joule_on_phase(drive);
    const double sample_dt = 1.0 / cfg.trace_rate_hz;
    // Integrate exactly to the horizon; record every grid point inside it. The
    // final grid point is emitted only when the horizon lands on the grid.
    const long long n_samples = static_cast<long long>(std::floor(horizon_s / sample_dt + 1e-9));
    const double t_end = horizon_s;
    check_trace_budget(static_cast<std::size_t>(n_samples) + 1, cfg);

    ExactStepper stepper(p);
    TraceBuilder tb;
    tb.two_node = p.two_node;
    tb.reserve(static_cast<std::size_t>(n_samples) + 1);

    double t1 = init.sma_k;
    double t2 = p.two_node ? *init.pocket_k : 0.0;
    double t_cur = 0.0;
    double e_in = 0.0;
    double e_out = 0.0;
    long long k = 0;

    auto run_segment = [&](double seg_end, double q, bool on) {
        seg_end = std::min(seg_end, t_end);
        while (k <= n_samples) {
            const double ts = static_cast<double>(k) * sample_dt;
            // Strictly-inside test with an ulp-scale guard band: a grid point
            // that coincides with the segment end up to accumulated rounding
            // belongs to the next segment, so switch-aligned samples carry the
            // incoming segment's input regardless of rounding direction.
            const double snap = 64.0 * std::numeric_limits<double>::epsilon() *
                                std::max(std::abs(ts), std::abs(seg_end));
            if (!(ts < seg_end - snap)) break;
            stepper.advance(t1, t2, ts - t_cur, q, e_out);
            e_in += q * (ts - t_cur);
            t_cur = ts;
            tb.record(ts, t1, t2, on, q);
            ++k;
        }
        if (seg_end > t_cur) {
            stepper.advance(t1, t2, seg_end - t_cur, q, e_out);
            e_in += q * (seg_end - t_cur);
            t_cur = seg_end;
        }
    };

    for (long long cycle = 0; ; ++cycle) {
        const double c_start = static_cast<double>(cycle) * period;
        if (c_start >= t_end) break;
        run_segment(c_start + on_dur, q_on, true);
        run_segment(static_cast<double>(cycle + 1) * period, 0.0, false);
    }
    if (k == n_samples) {
        const long long cyc = static_cast<long long>(std::floor(t_end / period + 1e-9));
        const double phase = t_end - static_cast<double>(cyc) * period;
        const bool on = phase < on_dur;
        tb.record(t_end, t1, t2, on, on ? q_on : 0.0);
    }

    tb.trace.energy_in_j = e_in;
    tb.trace.energy_out_j = e_out;
    tb.trace.sample_interval_s = sample_dt;
    return std::move(tb.trace);
}

}  // namespace

double Horizon::resolve_s(const DriveSpec& drive) const {
    if (kind == Kind::seconds) {
        if (!(seconds > 0.0)) throw std::invalid_argument("horizon: seconds must be positive");
        if (seconds < drive.period_s() * (1.0 - 1e-12))
            throw std::invalid_argument("horizon: must cover at least one PWM period");
        return seconds;
    }
    if (cycles < 1) throw std::invalid_argument("horizon: cycle count must be >= 1");
    return static_cast<double>(cycles) * drive.period_s();
}

NodeState SimTrace::final_state() const {
    NodeState s;
    s.sma_k = sma_k.back();
    if (has_pocket()) s.pocket_k = pocket_k.back();
    return s;
}

SimTrace integrate(const BuiltNetwork& network, const DriveSpec& drive,
                   const IntegratorConfig& cfg, const std::optional<NodeState>& init) {
    validate(drive);
    if (!(cfg.trace_rate_hz >= 1.0))
        throw std::invalid_argument("integrator: trace rate must be >= 1 Hz");
    if (!(cfg.step_size_s > 0.0))
        throw std::invalid_argument("integrator: step size must be positive");

    const SystemParams p = system_params(network);
    const double horizon_s = cfg.horizon.resolve_s(drive);

    NodeState state;
    state.sma_k = network.ambient_k;
    if (p.two_node) state.pocket_k = network.ambient_k;
    if (init) {
        state.sma_k = init->sma_k;
        if (p.two_node) {
            if (!init->pocket_k)
                throw std::invalid_argument("integrate: initial state missing pocket temperature");
            state.pocket_k = init->pocket_k;
        }
    }

    SimTrace trace;
    if (cfg.method == Method::explicit_euler) {
        trace = p.two_node ? integrate_euler<true>(p, drive, cfg, horizon_s, state)
                           : integrate_euler<false>(p, drive, cfg, horizon_s, state);
    } else {
        trace = integrate_exact(p, drive, cfg, horizon_s, state);
    }
    trace.ambient_k = network.ambient_k;
    trace.transition_k = network.transition_k;
    trace.period_s = drive.period_s();
    trace.duty_cycle_pct = drive.duty_cycle_pct;
    trace.cycles_run =
        static_cast<std::size_t>(std::llround(horizon_s / drive.period_s() + 0.49999));
    return trace;
}

TransitionEvents detect_transitions(const SimTrace& trace, double threshold_k) {
    if (trace.size() == 0) throw std::invalid_argument("detect_transitions: empty trace");
    TransitionEvents ev;
    ev.threshold_k = threshold_k;
    if (trace.size() < 2 || trace.period_s <= 0.0) return ev;

    const double t0 = trace.t_s.front();
    const double period = trace.period_s;
    const double span = trace.t_s.back() - t0;
    const std::size_t n_cycles =
        static_cast<std::size_t>(std::max(1.0, std::ceil(span / period - 1e-9)));
    ev.cycles.resize(n_cycles);
    for (std::size_t c = 0; c < n_cycles; ++c) ev.cycles[c].cycle = c;

    struct Crossing {
        double t;
        bool up;
    };
    std::vector<std::vector<Crossing>> per_cycle(n_cycles);

    auto cycle_of = [&](double t) {
        const auto c = static_cast<long long>(std::floor((t - t0) / period + 1e-12));
        return static_cast<std::size_t>(std::clamp<long long>(c, 0, static_cast<long long>(n_cycles) - 1));
    };

    // Accumulates time spent above threshold, split across cycle buckets.
    auto add_above = [&](double ta, double tb) {
        while (tb - ta > 1e-15) {
            const std::size_t c = cycle_of(ta);
            const double c_end = t0 + static_cast<double>(c + 1) * period;
            const double seg_end = std::min(tb, c_end);
            ev.cycles[c].fraction_above += std::max(0.0, seg_end - ta);
            if (seg_end >= tb) break;
            ta = seg_end;
        }
    };

    for (std::size_t idx = 0; idx + 1 < trace.size(); ++idx) {
        const double ta = trace.t_s[idx], tb = trace.t_s[idx + 1];
        const double ya = trace.sma_k[idx], yb = trace.sma_k[idx + 1];
        const bool above_a = ya >= threshold_k, above_b = yb >= threshold_k;
        if (above_a && above_b) {
            add_above(ta, tb);
        } else if (above_a != above_b) {
            const double frac = (threshold_k - ya) / (yb - ya);
            const double tx = ta + frac * (tb - ta);
            per_cycle[cycle_of(tx)].push_back({tx, !above_a});
            if (above_a)
                add_above(ta, tx);
            else
                add_above(tx, tb);
        }
    }

    for (std::size_t c = 0; c < n_cycles; ++c) {
        auto& out = ev.cycles[c];
        out.fraction_above /= period;
        std::optional<double> first_up, first_down_any, first_down_after_up;
        for (const auto& x : per_cycle[c]) {
            if (x.up) {
                ++out.up_count;
                if (!first_up) first_up = x.t;
            } else {
                ++out.down_count;
                if (!first_down_any) first_down_any = x.t;
                if (first_up && !first_down_after_up) first_down_after_up = x.t;
            }
        }
        out.up_s = first_up;
        out.down_s = first_up ? first_down_after_up : first_down_any;
        ev.total_up += out.up_count;
        ev.total_down += out.down_count;
    }
    return ev;
}

SimTrace run_cycles_to_steady_state(const BuiltNetwork& network, const DriveSpec& drive,
                                    const IntegratorConfig& cfg, double tol_k,
                                    std::size_t max_cycles, std::size_t extra_steady_cycles) {
    if (!(tol_k > 0.0))
        throw std::invalid_argument("run_cycles_to_steady_state: tolerance must be positive");
    if (max_cycles < 2)
        throw std::invalid_argument("run_cycles_to_steady_state: cycle cap must be >= 2");

    IntegratorConfig cycle_cfg = cfg;
    cycle_cfg.horizon = Horizon::of_cycles(1);

    SimTrace full;
    std::optional<NodeState> state;
    std::vector<double> prev_sma, prev_pocket;
    std::size_t steady_cycle = 0;
    bool converged = false;

    auto append = [&](const SimTrace& piece, std::size_t cycle_idx) {
        const double offset = static_cast<double>(cycle_idx) * piece.period_s;
        // Skip the piece's first sample when it duplicates the previous
        // cycle's trailing one (sample grid aligned to the period).
        std::size_t from = 0;
        if (!full.t_s.empty() && piece.size() > 0 &&
            std::abs(full.t_s.back() - (piece.t_s.front() + offset)) < 1e-9)
            from = 1;
        for (std::size_t i = from; i < piece.size(); ++i) {
            full.t_s.push_back(piece.t_s[i] + offset);
            full.sma_k.push_back(piece.sma_k[i]);
            if (piece.has_pocket()) full.pocket_k.push_back(piece.pocket_k[i]);
            full.pwm_on.push_back(piece.pwm_on[i]);
            full.q_in_w.push_back(piece.q_in_w[i]);
        }
        full.energy_in_j += piece.energy_in_j;
        full.energy_out_j += piece.energy_out_j;
    };

    std::size_t cycle = 0;
    for (; cycle < max_cycles; ++cycle) {
        SimTrace piece = integrate(network, drive, cycle_cfg, state);
        if (cycle == 0) {
            full = piece;
            full.t_s.clear();
            full.sma_k.clear();
            full.pocket_k.clear();
            full.pwm_on.clear();
            full.q_in_w.clear();
            full.energy_in_j = 0.0;
            full.energy_out_j = 0.0;
        }
        append(piece, cycle);
        state = piece.final_state();

        if (cycle > 0) {
            double max_delta = 0.0;
            for (std::size_t i = 0; i < piece.size(); ++i) {
                max_delta = std::max(max_delta, std::abs(piece.sma_k[i] - prev_sma[i]));
                if (piece.has_pocket())
                    max_delta = std::max(max_delta, std::abs(piece.pocket_k[i] - prev_pocket[i]));
            }
            if (max_delta < tol_k) {
                converged = true;
                steady_cycle = cycle;
                ++cycle;
                break;
            }
        }
        prev_sma = piece.sma_k;
        prev_pocket = piece.pocket_k;
    }

    for (std::size_t extra = 0; converged && extra < extra_steady_cycles; ++extra, ++cycle) {
        SimTrace piece = integrate(network, drive, cycle_cfg, state);
        append(piece, cycle);
        state = piece.final_state();
    }

    full.steady_converged = converged;
    full.cycles_run = cycle;
    const std::size_t samples_per_cycle = full.size() == 0 ? 0 : (full.size() - 1) / cycle;
    full.steady_onset_sample =
        converged ? std::optional<std::size_t>(steady_cycle * samples_per_cycle) : std::nullopt;
    return full;
}

}  // namespace smasim
