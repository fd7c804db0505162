#include "pulsecool/presets.hpp"

#include "pulsecool/analysis.hpp"
#include "pulsecool/errors.hpp"
#include "pulsecool/io.hpp"
#include "pulsecool/oracle.hpp"
#include "pulsecool/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

namespace pulsecool {

namespace {

struct SquarePreset {
    double E;
    double t1;
};

const std::map<std::string, SquarePreset>& fig2_table() {
    static const std::map<std::string, SquarePreset> table{
        {"fig2a", {1.67e6, 6.0}}, {"fig2b", {2.5e6, 4.0}}, {"fig2c", {5e6, 2.0}}, {"fig2d", {1e7, 1.0}}};
    return table;
}

const std::map<std::string, double>& fig3_table() {
    static const std::map<std::string, double> table{{"fig3a", 10.0}, {"fig3b", 5.0}, {"fig3c", 2.0}};
    return table;
}

const std::map<std::string, double>& fig5_table() {
    static const std::map<std::string, double> table{{"fig5a", 0.34}, {"fig5b", 1.0}, {"fig5c", 1.5},
                                                     {"fig5d", 2.0},  {"fig5e", 2.5}, {"fig5f", 3.0}};
    return table;
}

constexpr double kFig2Horizon = 6.0;
constexpr double kTrainHorizon = 60.0;
constexpr double kFig5Amplitude = 5e6;
constexpr double kGaussAmplitude = 1.67e7;
constexpr double kGaussSigma = 1.0 / 3.0;
constexpr double kFig4PulseDuration = 20.0;
constexpr double kPaperPlateau = 0.14;
const std::vector<double> kFig3Amplitudes{5e5, 8e5, 1e6};
const std::vector<double> kFig4Ladder{0.25, 0.5, 1.0, 1.5, 2.5, 3.5, 5.0};
const std::vector<double> kFig6Ladder{0.5, 1.67, 5.0};

PresetCheck within(std::string name, double value, double target, double tolerance) {
    const bool ok = std::abs(value - target) <= tolerance;
    return {std::move(name), ok, fmt::format("{:.4g} vs {:.4g} +/- {:.3g}", value, target, tolerance)};
}

double mean_over(const Trajectory& traj, const std::vector<double>& series, double lo, double hi) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < traj.size(); ++i)
        if (traj.samples[i].t >= lo && traj.samples[i].t <= hi) {
            sum += series[i];
            ++n;
        }
    return n ? sum / static_cast<double>(n) : std::nan("");
}

std::pair<double, double> range_over(const Trajectory& traj, const std::vector<double>& series, double lo, double hi) {
    double mn = INFINITY, mx = -INFINITY;
    for (std::size_t i = 0; i < traj.size(); ++i)
        if (traj.samples[i].t >= lo && traj.samples[i].t <= hi) {
            mn = std::min(mn, series[i]);
            mx = std::max(mx, series[i]);
        }
    return {mn, mx};
}

std::string amplitude_tag(double E) { return fmt::format("E{:.0e}", E); }

std::vector<Trajectory> simulate_all(const std::vector<PresetRun>& runs) {
    return parallel_map(std::span<const PresetRun>(runs),
                        [](const PresetRun& r) { return simulate(r.params, r.envelope, r.grid); });
}

PresetResult run_fig2(const std::string& name, const std::filesystem::path& dir) {
    const auto runs = preset_runs(name);
    const Trajectory traj = simulate(runs[0].params, runs[0].envelope, runs[0].grid);
    PresetResult res{name, {}, {}, {dir / (name + ".csv")}};
    write_trajectory(traj, res.files[0]);

    const auto avg = period_average(traj, mechanical_period(traj.params));
    const DipReport dip = first_dip(traj);
    const double plateau = mean_over(traj, avg, 4.0, 6.0);
    res.summary = fmt::format("{}: first dip t={:.4f} n={:.4f}; period-averaged n_m over [4,6] = {:.4f}", name,
                              dip.t_dip, dip.n_dip, plateau);
    if (name == "fig2a")
        res.checks.push_back(within("plateau over [4,6]", plateau, kPaperPlateau, 0.2 * kPaperPlateau));
    if (name == "fig2c") {
        res.checks.push_back({"dip found", dip.found, ""});
        res.checks.push_back(within("dip time", dip.t_dip, 0.34, 0.02));
        res.checks.push_back(within("dip value", dip.n_dip, 0.65, 0.065));
    }
    return res;
}

PresetResult run_fig2gauss(const std::filesystem::path& dir) {
    const auto runs = preset_runs("fig2gauss");
    const Trajectory traj = simulate(runs[0].params, runs[0].envelope, runs[0].grid);
    PresetResult res{"fig2gauss", {}, {}, {dir / "fig2gauss.csv"}};
    write_trajectory(traj, res.files[0]);
    const auto avg = period_average(traj, mechanical_period(traj.params));
    const double lowest = *std::min_element(avg.begin(), avg.end());
    res.summary = fmt::format("fig2gauss: minimum period-averaged n_m = {:.4f} (square-pulse plateau {})", lowest,
                              kPaperPlateau);
    res.checks.push_back({"stays above square plateau", lowest > kPaperPlateau,
                          fmt::format("{:.4f} > {}", lowest, kPaperPlateau)});
    return res;
}

PresetResult run_fig3(const std::string& name, const std::filesystem::path& dir) {
    const auto runs = preset_runs(name);
    const auto trajs = simulate_all(runs);
    PresetResult res{name, name + ":", {}, {}};
    const double t1 = fig3_table().at(name);
    const double third_pulse_end = 2.0 * (t1 + t1) + t1;
    for (std::size_t k = 0; k < runs.size(); ++k) {
        const auto& traj = trajs[k];
        res.files.push_back(dir / fmt::format("{}_{}.csv", name, runs[k].label));
        write_trajectory(traj, res.files.back());
        const auto avg = period_average(traj, mechanical_period(traj.params));
        const auto ground = first_time_below(traj, avg, 1.0);
        const double E = runs[k].envelope.amplitude();
        if (ground) {
            const auto pulse = static_cast<int>(std::floor(*ground / (2.0 * t1))) + 1;
            res.summary += fmt::format(" E={:.1e} ground state (n<1) at t={:.3f} (pulse {});", E, *ground, pulse);
        } else {
            res.summary += fmt::format(" E={:.1e} ground state not reached;", E);
        }
        if (name == "fig3c" && (E == 1e6 || E == 5e5)) {
            const bool reached = ground && *ground <= third_pulse_end;
            if (E == 1e6)
                res.checks.push_back({"E=1e6 below 1 by end of pulse 3", reached,
                                      ground ? fmt::format("t={:.3f}", *ground) : "never"});
            else
                res.checks.push_back({"E=5e5 stays >= 1 through pulse 3", !reached,
                                      ground ? fmt::format("t={:.3f}", *ground) : "never"});
        }
    }
    return res;
}

PresetResult run_fig4(const std::filesystem::path& dir) {
    const auto rows = j_sweep(figure_params(), kFig4Ladder, kFig4PulseDuration, preset_grid(1.0));
    PresetResult res{"fig4", "fig4:", {}, {dir / "fig4.csv"}};
    write_sweep(rows, res.files[0]);
    for (const auto& r : rows)
        res.summary += fmt::format(" J={}: t={:.3f} n={:.3f}{};", r.J, r.t_dip, r.n_dip, r.found ? "" : " (no dip)");

    bool t_decreasing = true;
    for (std::size_t i = 1; i < rows.size(); ++i)
        t_decreasing = t_decreasing && rows[i].t_dip < rows[i - 1].t_dip;
    res.checks.push_back({"t_dip strictly decreasing in J", t_decreasing, ""});

    bool prefix_decreasing = true;
    bool rise_beyond = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].J <= 1.5)
            prefix_decreasing = prefix_decreasing && rows[i].n_dip < rows[i - 1].n_dip;
        if (rows[i - 1].J >= 1.5 && rows[i].n_dip > rows[i - 1].n_dip)
            rise_beyond = true;
    }
    res.checks.push_back({"n_dip decreasing for J <= 1.5", prefix_decreasing, ""});
    res.checks.push_back({"n_dip rises somewhere beyond J = 1.5", rise_beyond, ""});
    return res;
}

PresetResult run_fig5(const std::string& name, const std::filesystem::path& dir) {
    const auto runs = preset_runs(name);
    const auto& run = runs[0];
    const Trajectory traj = simulate(run.params, run.envelope, run.grid);
    PresetResult res{name, {}, {}, {dir / (name + ".csv")}};
    write_trajectory(traj, res.files[0]);

    const auto avg = period_average(traj, mechanical_period(traj.params));
    const double limit = cw_cooling_limit(traj.params);
    std::size_t below = 0;
    for (const auto& s : traj.samples)
        below += s.n_m < limit ? 1 : 0;
    const double fifth_end = 4.0 * run.envelope.period() + run.envelope.duration();
    const auto [lo, hi] = range_over(traj, avg, fifth_end, run.grid.t_end);
    res.summary = fmt::format("{}: designed t1={:.2f}, t2={:.2f}; after pulse 5 period-averaged n_m in [{:.4f}, {:.4f}]; "
                              "{} samples below CW limit {:.3g}",
                              name, run.envelope.duration(), run.envelope.interval(), lo, hi, below, limit);
    res.checks.push_back(within("designed pulse duration", run.envelope.duration(), 0.34, 1e-9));
    if (name == "fig5a") {
        res.checks.push_back({"band after pulse 5 within [0.08, 0.25]", lo >= 0.08 && hi <= 0.25,
                              fmt::format("[{:.4f}, {:.4f}]", lo, hi)});
        res.checks.push_back({"drops below CW limit", below > 0, fmt::format("{} samples", below)});
    }
    return res;
}

PresetResult run_fig6(const std::filesystem::path& dir) {
    const auto runs = preset_runs("fig6");
    PresetResult res{"fig6", "fig6:", {}, {}};
    struct Pair {
        Trajectory linear;
        MeanTrajectory nonlinear;
    };
    const auto pairs = parallel_map(std::span<const PresetRun>(runs), [](const PresetRun& r) {
        return Pair{simulate(r.params, r.envelope, r.grid), simulate_nonlinear(r.params, r.envelope, r.grid)};
    });
    for (std::size_t k = 0; k < runs.size(); ++k) {
        res.files.push_back(dir / fmt::format("fig6_{}.csv", runs[k].label));
        write_comparison(pairs[k].linear, pairs[k].nonlinear, res.files.back());
        const auto dev = compare_displacement(pairs[k].linear, pairs[k].nonlinear);
        res.summary += fmt::format(" {}: rms={:.4g} normalized={:.4f};", runs[k].label, dev.rms, dev.normalized_rms);
    }
    return res;
}

} // namespace

bool PresetResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const PresetCheck& c) { return c.passed; });
}

SystemParams figure_params() { return make_params(100.0, 100.0, 1e-4, 1e-3, 100.0); }

Grid preset_grid(double horizon) { return Grid{0.0, horizon, 1e-4, 20}; }

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fig2a", "fig2b", "fig2c", "fig2d", "fig2gauss", "fig3a",
                                                "fig3b", "fig3c", "fig4",  "fig5a", "fig5b",     "fig5c",
                                                "fig5d", "fig5e", "fig5f", "fig6"};
    return names;
}

std::vector<PresetRun> preset_runs(const std::string& name) {
    const SystemParams params = figure_params();
    if (auto it = fig2_table().find(name); it != fig2_table().end())
        return {{name, params, DriveEnvelope::square_single(it->second.E, it->second.t1), preset_grid(kFig2Horizon)}};
    if (name == "fig2gauss")
        return {{name, params, DriveEnvelope::gaussian(kGaussAmplitude, kGaussSigma), preset_grid(kFig2Horizon)}};
    if (auto it = fig3_table().find(name); it != fig3_table().end()) {
        std::vector<PresetRun> runs;
        for (double E : kFig3Amplitudes)
            runs.push_back({amplitude_tag(E), params, DriveEnvelope::square_train(E, it->second, it->second),
                            preset_grid(kTrainHorizon)});
        return runs;
    }
    if (name == "fig4") {
        std::vector<PresetRun> runs;
        for (double J : kFig4Ladder)
            runs.push_back({fmt::format("J{}", J), params,
                            DriveEnvelope::square_single(amplitude_for_intensity(params, J), kFig4PulseDuration),
                            probe_grid(preset_grid(1.0), J)});
        return runs;
    }
    if (auto it = fig5_table().find(name); it != fig5_table().end()) {
        const Grid grid = preset_grid(kTrainHorizon);
        return {{name, params, design_schedule(params, kFig5Amplitude, it->second, std::nullopt, grid), grid}};
    }
    if (name == "fig6") {
        std::vector<PresetRun> runs;
        for (double J : kFig6Ladder)
            runs.push_back({fmt::format("J{}", J), params,
                            DriveEnvelope::square_single(amplitude_for_intensity(params, J), kFig2Horizon),
                            preset_grid(kFig2Horizon)});
        return runs;
    }
    throw ValidationError(fmt::format("unknown preset '{}'", name));
}

PresetResult run_preset(const std::string& name, const std::filesystem::path& out_dir) {
    if (fig2_table().contains(name))
        return run_fig2(name, out_dir);
    if (name == "fig2gauss")
        return run_fig2gauss(out_dir);
    if (fig3_table().contains(name))
        return run_fig3(name, out_dir);
    if (name == "fig4")
        return run_fig4(out_dir);
    if (fig5_table().contains(name))
        return run_fig5(name, out_dir);
    if (name == "fig6")
        return run_fig6(out_dir);
    throw ValidationError(fmt::format("unknown preset '{}'", name));
}

} // namespace pulsecool
