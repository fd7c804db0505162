#pragma once

#include "pulsecool/drive.hpp"
#include "pulsecool/numerics.hpp"
#include "pulsecool/params.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace pulsecool {

/// One linearized simulation that a preset performs.
struct PresetRun {
    std::string label;
    SystemParams params;
    DriveEnvelope envelope;
    Grid grid;
};

struct PresetCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct PresetResult {
    std::string name;
    std::string summary;
    std::vector<PresetCheck> checks;
    std::vector<std::filesystem::path> files;

    bool passed() const;
};

/// Parameters shared by all figure presets: g_m = 1e-4, omega_m = delta = 100,
/// gamma_m = 1e-3, n_th = 100.
SystemParams figure_params();

/// Grid used by every preset: dt = 1e-4, stride 20, given horizon.
Grid preset_grid(double horizon);

const std::vector<std::string>& preset_names();

/// The simulations behind a preset (for invariant and convergence audits).
/// Throws ValidationError for an unknown name.
std::vector<PresetRun> preset_runs(const std::string& name);

/// Runs a preset, writes its CSV files under out_dir, and evaluates its
/// embedded checks.
PresetResult run_preset(const std::string& name, const std::filesystem::path& out_dir);

} // namespace pulsecool
