#include "pulsecool/config.hpp"
#include "pulsecool/errors.hpp"
#include "pulsecool/io.hpp"
#include "pulsecool/oracle.hpp"
#include "pulsecool/parallel.hpp"
#include "pulsecool/presets.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

namespace {

using namespace pulsecool;

enum ExitCode { kOk = 0, kUsage = 1, kValidation = 2, kNumerical = 3, kCheckFailed = 4 };

void apply_thread_override() {
    const char* raw = std::getenv("PULSECOOL_THREADS");
    if (!raw || !*raw)
        return;
    try {
        set_worker_threads(std::stoi(raw));
    } catch (const std::exception&) {
        throw ValidationError(fmt::format("PULSECOOL_THREADS must be an integer, got '{}'", raw));
    }
}

LoadedConfig load(const std::string& path) {
    LoadedConfig loaded = load_config(path);
    for (const auto& note : loaded.notes)
        fmt::print(stderr, "note: {}\n", note);
    return loaded;
}

std::string output_path(const ExperimentConfig& cfg, const std::string& override_path) {
    return override_path.empty() ? cfg.output.path : override_path;
}

void report_dip(const Trajectory& traj, const AnalysisSpec& analysis) {
    const DipReport dip = first_dip(traj, analysis.dip_options());
    if (dip.found)
        fmt::print("first dip: t={:.4f} n_m={:.4f}\n", dip.t_dip, dip.n_dip);
    else
        fmt::print("no dip within horizon (minimum n_m={:.4f} at t={:.4f})\n", dip.n_dip, dip.t_dip);
}

int run_simulate(const std::string& config_path, const std::string& out) {
    const auto cfg = load(config_path).config;
    const Trajectory traj = simulate(cfg.params, cfg.envelope.build(), cfg.grid);
    write_trajectory(traj, output_path(cfg, out));
    report_dip(traj, cfg.analysis);
    fmt::print("final n_m={:.6g} at t={:.4f}; wrote {}\n", traj.samples.back().n_m, traj.samples.back().t,
               output_path(cfg, out));
    return kOk;
}

int run_sweep(const std::string& config_path, const std::string& out) {
    const auto cfg = load(config_path).config;
    const auto rows =
        j_sweep(cfg.params, cfg.analysis.j_values, cfg.analysis.pulse_duration, cfg.grid, cfg.analysis.dip_options());
    write_sweep(rows, output_path(cfg, out));
    for (const auto& r : rows) {
        if (!r.error.empty())
            fmt::print("J={:g}: error: {}\n", r.J, r.error);
        else
            fmt::print("J={:g}: t_dip={:.4f} n_dip={:.4f}{}\n", r.J, r.t_dip, r.n_dip, r.found ? "" : " (no dip; horizon minimum)");
    }
    for (const auto& r : rows)
        if (!r.error.empty())
            return kNumerical;
    return kOk;
}

int run_design(const std::string& config_path, const std::string& out) {
    const auto cfg = load(config_path).config;
    ScheduleOptions opts;
    opts.dip = cfg.analysis.dip_options();
    const DriveEnvelope env = design_schedule(cfg.params, cfg.envelope.E, cfg.analysis.schedule_interval,
                                              cfg.analysis.schedule_pulses, cfg.grid, opts);
    const Trajectory traj = simulate(cfg.params, env, cfg.grid);
    write_trajectory(traj, output_path(cfg, out));
    const auto avg = period_average(traj, cfg.analysis.window);
    const auto below = first_time_below(traj, avg, 1.0);
    fmt::print("designed schedule: t1={:.2f} t2={:.2f}\n", env.duration(), env.interval());
    if (below)
        fmt::print("period-averaged n_m < 1 from t={:.4f}\n", *below);
    else
        fmt::print("period-averaged n_m never below 1\n");
    return kOk;
}

int run_compare(const std::string& config_path, const std::string& out) {
    const auto cfg = load(config_path).config;
    const DriveEnvelope env = cfg.envelope.build();
    const Trajectory linear = simulate(cfg.params, env, cfg.grid);
    const MeanTrajectory nonlinear = simulate_nonlinear(cfg.params, env, cfg.grid);
    write_comparison(linear, nonlinear, output_path(cfg, out));
    const auto& w = cfg.analysis.compare_window;
    const DeviationReport dev =
        w ? compare_displacement(linear, nonlinear, (*w)[0], (*w)[1]) : compare_displacement(linear, nonlinear);
    fmt::print("X_m deviation: max={:.6g} rms={:.6g} normalized_rms={:.6g} over {} samples\n", dev.max_abs, dev.rms,
               dev.normalized_rms, dev.samples);
    return kOk;
}

int run_preset_command(const std::string& name, const std::string& out_dir, bool list) {
    if (list) {
        for (const auto& n : preset_names())
            fmt::print("{}\n", n);
        return kOk;
    }
    if (name.empty())
        throw CLI::RequiredError("preset name");
    const PresetResult res = run_preset(name, out_dir);
    fmt::print("{}\n", res.summary);
    for (const auto& c : res.checks)
        fmt::print("  [{}] {}{}\n", c.passed ? "ok" : "FAILED", c.name, c.detail.empty() ? "" : ": " + c.detail);
    for (const auto& f : res.files)
        fmt::print(stderr, "wrote {}\n", f.string());
    return res.passed() ? kOk : kCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pulsed optomechanical cooling simulator"};
    app.require_subcommand(1);

    std::string config_path, out, preset_name, out_dir = ".";
    bool list = false;

    auto add_config_command = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
        sub->add_option("-o,--out", out, "Output CSV (overrides output.path)");
        return sub;
    };
    auto* sim = add_config_command("simulate", "Integrate the moment equations and write the trajectory");
    auto* sweep = add_config_command("sweep", "First-dip sweep over effective intensities J");
    auto* design = add_config_command("design", "Design a pulse train from the first dip and simulate it");
    auto* compare = add_config_command("compare", "Compare linearized and nonlinear displacement");
    auto* preset = app.add_subcommand("preset", "Reproduce a figure preset");
    preset->add_option("name", preset_name, "Preset name");
    preset->add_option("--out", out_dir, "Output directory")->capture_default_str();
    preset->add_flag("--list", list, "List preset names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        apply_thread_override();
        if (*sim)
            return run_simulate(config_path, out);
        if (*sweep)
            return run_sweep(config_path, out);
        if (*design)
            return run_design(config_path, out);
        if (*compare)
            return run_compare(config_path, out);
        return run_preset_command(preset_name, out_dir, list);
    } catch (const CLI::Error& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kUsage;
    } catch (const ValidationError& e) {
        fmt::print(stderr, "validation error: {}\n", e.what());
        return kValidation;
    } catch (const NumericalError& e) {
        fmt::print(stderr, "numerical error: {}\n", e.what());
        return kNumerical;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kUsage;
    }
}
