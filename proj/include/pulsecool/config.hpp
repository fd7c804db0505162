#pragma once

#include "pulsecool/analysis.hpp"
#include "pulsecool/drive.hpp"
#include "pulsecool/numerics.hpp"
#include "pulsecool/params.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace pulsecool {

/// Serializable description of a drive envelope (custom samplers are code-only).
struct EnvelopeSpec {
    EnvelopeKind kind = EnvelopeKind::SquareSingle;
    double E = 5e6;
    double t1 = 2.0;
    double t2 = 0.0;
    std::optional<std::int64_t> n_pulses;
    double sigma = 1.0 / 3.0;
    double j0 = DriveEnvelope::kDefaultGaussianCenter;

    DriveEnvelope build() const;
    bool operator==(const EnvelopeSpec&) const = default;
};

struct AnalysisSpec {
    /// Period-averaging window for summaries; defaults to 2*pi/omega_m.
    double window = 0.0;
    /// Smoothing window for first-dip detection (0 = raw series).
    double dip_window = 0.0;
    double hysteresis = 0.01;
    std::vector<double> j_values{0.25, 0.5, 1.0, 1.5, 2.5, 3.5, 5.0};
    double pulse_duration = 20.0;
    /// Interval and pulse count for `design`.
    double schedule_interval = 0.34;
    std::optional<std::int64_t> schedule_pulses;
    /// Time window for `compare`; defaults to the whole grid.
    std::optional<std::array<double, 2>> compare_window;

    DipOptions dip_options() const { return {dip_window, hysteresis}; }
    bool operator==(const AnalysisSpec&) const = default;
};

struct OutputSpec {
    std::string path = "trajectory.csv";
    std::string format = "csv";
    bool operator==(const OutputSpec&) const = default;
};

struct ExperimentConfig {
    SystemParams params;
    EnvelopeSpec envelope;
    Grid grid;
    AnalysisSpec analysis;
    OutputSpec output;
};

bool operator==(const SystemParams& a, const SystemParams& b);
bool operator==(const Grid& a, const Grid& b);
bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

struct LoadedConfig {
    ExperimentConfig config;
    /// One line per default that was applied, plus physics warnings.
    std::vector<std::string> notes;
};

/// Parses and validates a config document. Unknown keys are rejected.
/// Throws ValidationError with line/column for syntax errors and the
/// offending key path for invalid values.
LoadedConfig parse_config(const std::string& text);
LoadedConfig load_config(const std::filesystem::path& path);

/// Full (all fields explicit) JSON form; parse_config(to_json(c)) == c.
nlohmann::json to_json(const ExperimentConfig& config);
nlohmann::json to_json(const EnvelopeSpec& envelope);

} // namespace pulsecool
