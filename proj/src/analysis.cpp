#include "pulsecool/analysis.hpp"

#include "pulsecool/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace pulsecool {

namespace {

// Floor on (n_th - n_min) so a flat start near n_th cannot count as a dip.
constexpr double kMinDipDepth = 1.0;

struct Series {
    std::vector<double> t;
    std::vector<double> n;
};

Series extract(const Trajectory& traj) {
    Series s;
    s.t.reserve(traj.size());
    s.n.reserve(traj.size());
    for (const auto& sample : traj.samples) {
        s.t.push_back(sample.t);
        s.n.push_back(sample.n_m);
    }
    return s;
}

// Cumulative integral of the linear interpolant, queried at arbitrary x.
class PiecewiseLinearIntegral {
public:
    PiecewiseLinearIntegral(std::span<const double> t, std::span<const double> y) : t_(t), y_(y), cum_(t.size(), 0.0) {
        for (std::size_t i = 1; i < t.size(); ++i)
            cum_[i] = cum_[i - 1] + 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
    }

    double operator()(double x) const {
        auto it = std::upper_bound(t_.begin(), t_.end(), x);
        if (it == t_.begin())
            return 0.0;
        const auto k = static_cast<std::size_t>(std::distance(t_.begin(), it) - 1);
        if (k + 1 >= t_.size())
            return cum_.back();
        const double h = x - t_[k];
        const double slope = (y_[k + 1] - y_[k]) / (t_[k + 1] - t_[k]);
        const double yx = y_[k] + slope * h;
        return cum_[k] + 0.5 * h * (y_[k] + yx);
    }

private:
    std::span<const double> t_;
    std::span<const double> y_;
    std::vector<double> cum_;
};

SweepRow sweep_row(const SystemParams& params, double J, double pulse_duration, const Grid& grid,
                   const DipOptions& options) {
    SweepRow row;
    row.J = J;
    try {
        row.E = amplitude_for_intensity(params, J);
        const Trajectory traj =
            simulate(params, DriveEnvelope::square_single(row.E, pulse_duration), probe_grid(grid, J));
        const DipReport dip = first_dip(traj, options);
        row.found = dip.found;
        row.t_dip = dip.t_dip;
        row.n_dip = dip.n_dip;
    } catch (const std::exception& e) {
        row.found = false;
        row.error = e.what();
    }
    return row;
}

void check_sweep_input(std::span<const double> J_values) {
    for (std::size_t i = 0; i < J_values.size(); ++i) {
        if (!(J_values[i] > 0.0))
            throw ValidationError(fmt::format("J values must be positive, got {}", J_values[i]));
        if (i > 0 && !(J_values[i] > J_values[i - 1]))
            throw ValidationError("J values must be strictly increasing");
    }
}

} // namespace

double mechanical_period(const SystemParams& params) { return 2.0 * std::numbers::pi / params.omega_m; }

std::vector<double> moving_average(std::span<const double> t, std::span<const double> y, double window) {
    if (t.empty())
        throw ValidationError("cannot average an empty series");
    if (t.size() != y.size())
        throw ValidationError("time and value series differ in length");
    if (t.size() == 1)
        return {y[0]};
    const double spacing = t[1] - t[0];
    if (!(window >= spacing * (1.0 - 1e-9)))
        throw ValidationError(fmt::format("averaging window {} is shorter than the sample spacing {}", window, spacing));

    const PiecewiseLinearIntegral integral(t, y);
    const double lo_bound = t.front();
    const double hi_bound = t.back();
    std::vector<double> out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double lo = std::max(lo_bound, t[i] - 0.5 * window);
        const double hi = std::min(hi_bound, t[i] + 0.5 * window);
        out[i] = hi > lo ? (integral(hi) - integral(lo)) / (hi - lo) : y[i];
    }
    return out;
}

std::vector<double> period_average(const Trajectory& traj, double window) {
    if (traj.empty())
        throw ValidationError("cannot average an empty trajectory");
    const Series s = extract(traj);
    return moving_average(s.t, s.n, window);
}

DipReport first_dip(const Trajectory& traj, const DipOptions& options) {
    DipReport report;
    report.window = options.window;
    if (traj.empty())
        return report;

    const Series s = extract(traj);
    const std::vector<double> series = options.window > 0.0 ? moving_average(s.t, s.n, options.window) : s.n;
    const double reference = traj.params.n_th;

    std::size_t best = 0;
    for (std::size_t j = 1; j < series.size(); ++j) {
        if (series[j] < series[best]) {
            best = j;
            continue;
        }
        const double rise = series[j] - series[best];
        const double needed = options.hysteresis * std::max(reference - series[best], kMinDipDepth);
        if (rise > 0.0 && rise >= needed) {
            report.found = true;
            report.index = best;
            report.t_dip = s.t[best];
            report.n_dip = series[best];
            return report;
        }
    }
    report.index = best;
    report.t_dip = s.t[best];
    report.n_dip = series[best];
    return report;
}

double probe_horizon(double J) { return std::clamp(5.0 / J + 1.0, 1.0, 20.0); }

Grid probe_grid(const Grid& base, double J) {
    Grid g = base;
    g.t_start = 0.0;
    // Snap the horizon to the step so the grid divides evenly.
    const double steps = std::round(probe_horizon(J) / base.dt);
    g.t_end = steps * base.dt;
    return g;
}

std::vector<SweepRow> j_sweep_serial(const SystemParams& params, std::span<const double> J_values,
                                     double pulse_duration, const Grid& grid, const DipOptions& options) {
    params.validate();
    check_sweep_input(J_values);
    return serial_map(J_values, [&](double J) { return sweep_row(params, J, pulse_duration, grid, options); });
}

std::vector<SweepRow> j_sweep(const SystemParams& params, std::span<const double> J_values, double pulse_duration,
                              const Grid& grid, const DipOptions& options) {
    params.validate();
    check_sweep_input(J_values);
    return parallel_map(J_values, [&](double J) { return sweep_row(params, J, pulse_duration, grid, options); });
}

DriveEnvelope design_schedule(const SystemParams& params, double amplitude, double interval,
                              std::optional<std::int64_t> n_pulses, const Grid& grid,
                              const ScheduleOptions& options) {
    params.validate();
    if (!(amplitude > 0.0))
        throw ValidationError(fmt::format("schedule design needs E > 0, got {}", amplitude));

    const double J = effective_intensity(params, amplitude).J;
    Grid probe = probe_grid(grid, J);
    if (options.probe_horizon) {
        if (!(*options.probe_horizon > 0.0))
            throw ValidationError("probe horizon must be positive");
        probe.t_end = std::round(*options.probe_horizon / grid.dt) * grid.dt;
    }

    const Trajectory traj = simulate(params, DriveEnvelope::square_single(amplitude, probe.t_end), probe);
    const DipReport dip = first_dip(traj, options.dip);
    if (!dip.found)
        throw NumericalError(fmt::format("no phonon-number dip within probe horizon {} at E = {} (J = {:.3g})",
                                         probe.t_end, amplitude, J));

    const double steps = std::floor(dip.t_dip / options.rounding + 1e-9);
    const double duration = steps * options.rounding;
    if (!(duration > 0.0))
        throw NumericalError(fmt::format("first dip at t = {} rounds to a zero-length pulse", dip.t_dip));
    return DriveEnvelope::square_train(amplitude, duration, interval, n_pulses);
}

double heating_between_pulses(double gamma_m, double n_th, double delta_t) {
    if (!(delta_t >= 0.0))
        throw ValidationError(fmt::format("interval length must be >= 0, got {}", delta_t));
    return 2.0 * gamma_m * n_th * delta_t;
}

double cw_cooling_limit(const SystemParams& params) { return params.gamma_m * params.n_th / params.kappa; }

double fitted_slope(const Trajectory& traj, double t_lo, double t_hi) {
    double st = 0.0, sn = 0.0, stt = 0.0, stn = 0.0;
    std::size_t count = 0;
    for (const auto& s : traj.samples) {
        if (s.t < t_lo || s.t > t_hi)
            continue;
        st += s.t;
        sn += s.n_m;
        stt += s.t * s.t;
        stn += s.t * s.n_m;
        ++count;
    }
    if (count < 2)
        throw ValidationError(fmt::format("need at least two samples in [{}, {}] to fit a slope", t_lo, t_hi));
    const double c = static_cast<double>(count);
    const double denom = c * stt - st * st;
    return (c * stn - st * sn) / denom;
}

std::optional<double> first_time_below(const Trajectory& traj, std::span<const double> series, double level,
                                       double from) {
    for (std::size_t i = 0; i < traj.size() && i < series.size(); ++i) {
        if (traj.samples[i].t >= from && series[i] < level)
            return traj.samples[i].t;
    }
    return std::nullopt;
}

std::vector<std::pair<double, double>> interval_windows(const DriveEnvelope& env, double horizon) {
    std::vector<std::pair<double, double>> out;
    if (env.kind() == EnvelopeKind::SquareSingle) {
        if (env.duration() < horizon)
            out.emplace_back(env.duration(), horizon);
        return out;
    }
    if (env.kind() != EnvelopeKind::SquareTrain || env.interval() <= 0.0)
        return out;
    for (std::int64_t j = 0;; ++j) {
        const double start = static_cast<double>(j) * env.period();
        if (start >= horizon)
            break;
        const double off = start + env.duration();
        if (env.n_pulses() && j >= *env.n_pulses() - 1) {
            if (off < horizon)
                out.emplace_back(off, horizon);
            break;
        }
        if (off < horizon)
            out.emplace_back(off, std::min(start + env.period(), horizon));
    }
    return out;
}

} // namespace pulsecool
