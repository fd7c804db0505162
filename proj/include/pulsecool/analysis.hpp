#pragma once

#include "pulsecool/dynamics.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pulsecool {

/// Centered moving time-average of n_m over `window`, computed as the exact
/// integral of the piecewise-linear sample interpolant. Windows are truncated
/// at the trajectory ends. Throws ValidationError on an empty trajectory or a
/// window shorter than one sample spacing.
std::vector<double> period_average(const Trajectory& traj, double window);

/// Same, on raw (t, y) series.
std::vector<double> moving_average(std::span<const double> t, std::span<const double> y, double window);

/// Default averaging window: one mechanical period 2*pi/omega_m.
double mechanical_period(const SystemParams& params);

struct DipOptions {
    /// Smoothing window before detection; 0 detects on the raw series.
    double window = 0.0;
    /// Required rebound after the minimum, as a fraction of (n_th - n_min).
    double hysteresis = 0.01;
};

struct DipReport {
    double t_dip = 0.0;
    double n_dip = 0.0;
    double window = 0.0;
    bool found = false;
    std::size_t index = 0;
};

/// Earliest minimum of the (optionally smoothed) n_m series that is followed by
/// a rise of at least hysteresis * max(n_th - n_min, 1). found == false when the
/// series never rebounds that far.
DipReport first_dip(const Trajectory& traj, const DipOptions& options = {});

struct SweepRow {
    double J = 0.0;
    double E = 0.0;
    double t_dip = 0.0;
    double n_dip = 0.0;
    /// false: no rebound within the probe horizon; t_dip/n_dip hold the minimum.
    bool found = false;
    /// Non-empty when the row's simulation failed.
    std::string error;
};

/// Probe horizon for a first-dip search at intensity J: 5/J + 1 clamped to [1, 20].
double probe_horizon(double J);

/// Grid for a first-dip probe at intensity J, using dt and stride from `base`.
Grid probe_grid(const Grid& base, double J);

/// First-dip sweep over effective intensities (single square pulse per row).
/// Rows run as an OpenMP parallel map; a failing row carries its error text.
std::vector<SweepRow> j_sweep(const SystemParams& params, std::span<const double> J_values, double pulse_duration,
                              const Grid& grid, const DipOptions& options = {});

/// Serial reference for j_sweep; produces identical rows.
std::vector<SweepRow> j_sweep_serial(const SystemParams& params, std::span<const double> J_values,
                                     double pulse_duration, const Grid& grid, const DipOptions& options = {});

struct ScheduleOptions {
    DipOptions dip;
    /// Overrides the J-based probe horizon.
    std::optional<double> probe_horizon;
    /// Pulse duration is rounded down to a multiple of this.
    double rounding = 0.01;
};

/// Three-step schedule design: probe a long pulse at amplitude E, cut the pulse
/// at the first dip (rounded down), and repeat it with the given interval.
/// Throws NumericalError if no dip appears within the probe horizon.
DriveEnvelope design_schedule(const SystemParams& params, double amplitude, double interval,
                              std::optional<std::int64_t> n_pulses, const Grid& grid,
                              const ScheduleOptions& options = {});

/// Thermal heating while the drive is off: 2 gamma_m n_th dt.
double heating_between_pulses(double gamma_m, double n_th, double delta_t);

/// Continuous-wave cooling limit gamma_m n_th / kappa.
double cw_cooling_limit(const SystemParams& params);

/// Least-squares slope of n_m over samples with t in [t_lo, t_hi].
double fitted_slope(const Trajectory& traj, double t_lo, double t_hi);

/// First sample time at or after `from` where series[i] < level.
std::optional<double> first_time_below(const Trajectory& traj, std::span<const double> series, double level,
                                       double from = 0.0);

/// Off-drive windows (t_off_start, t_off_end) of a square train clipped to [0, horizon].
std::vector<std::pair<double, double>> interval_windows(const DriveEnvelope& env, double horizon);

} // namespace pulsecool
