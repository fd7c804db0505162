#pragma once

#include "pulsecool/analysis.hpp"
#include "pulsecool/dynamics.hpp"
#include "pulsecool/oracle.hpp"

#include <filesystem>
#include <ostream>
#include <span>
#include <vector>

namespace pulsecool {

inline constexpr const char* kTrajectoryHeader = "t,n_m,X_m,re_a,im_a,re_b,im_b,pulse_on";
inline constexpr const char* kSweepHeader = "J,E,t_dip,n_dip,found";
inline constexpr const char* kCompareHeader = "t,X_linear,X_nonlinear";

void write_trajectory(const Trajectory& traj, std::ostream& out);
/// Throws std::runtime_error on I/O failure.
void write_trajectory(const Trajectory& traj, const std::filesystem::path& path);

/// Parses a file produced by write_trajectory; values round-trip bit-exactly.
std::vector<TrajectorySample> read_trajectory(const std::filesystem::path& path);

void write_sweep(std::span<const SweepRow> rows, std::ostream& out);
void write_sweep(std::span<const SweepRow> rows, const std::filesystem::path& path);

void write_comparison(const Trajectory& linear, const MeanTrajectory& nonlinear, std::ostream& out);
void write_comparison(const Trajectory& linear, const MeanTrajectory& nonlinear, const std::filesystem::path& path);

} // namespace pulsecool
