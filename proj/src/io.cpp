#include "pulsecool/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace pulsecool {

namespace {

// 17 significant digits: enough for an exact double round trip.
constexpr const char* kNum = "{:.16e}";

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
    writer(out);
    out.flush();
    if (!out)
        throw std::runtime_error(fmt::format("write to '{}' failed", path.string()));
}

double parse_double(std::string_view field, std::size_t line) {
    double value = 0.0;
    const auto result = std::from_chars(field.data(), field.data() + field.size(), value);
    if (result.ec != std::errc{} || result.ptr != field.data() + field.size())
        throw std::runtime_error(fmt::format("line {}: bad number '{}'", line, field));
    return value;
}

} // namespace

void write_trajectory(const Trajectory& traj, std::ostream& out) {
    out << kTrajectoryHeader << '\n';
    const std::string row = fmt::format("{0},{0},{0},{0},{0},{0},{0},{{}}\n", kNum);
    for (const auto& s : traj.samples)
        out << fmt::format(fmt::runtime(row), s.t, s.n_m, s.x_m, s.mean_a.real(), s.mean_a.imag(), s.mean_b.real(),
                           s.mean_b.imag(), s.pulse_on ? 1 : 0);
}

void write_trajectory(const Trajectory& traj, const std::filesystem::path& path) {
    write_file(path, [&](std::ostream& out) { write_trajectory(traj, out); });
}

std::vector<TrajectorySample> read_trajectory(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error(fmt::format("cannot read '{}'", path.string()));
    std::string line;
    if (!std::getline(in, line) || line != kTrajectoryHeader)
        throw std::runtime_error(fmt::format("'{}' is not a trajectory file", path.string()));

    std::vector<TrajectorySample> samples;
    std::size_t number = 1;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty())
            continue;
        double v[8];
        std::size_t start = 0;
        for (int k = 0; k < 8; ++k) {
            const std::size_t end = k == 7 ? line.size() : line.find(',', start);
            if (end == std::string::npos)
                throw std::runtime_error(fmt::format("line {}: expected 8 fields", number));
            v[k] = parse_double(std::string_view(line).substr(start, end - start), number);
            start = end + 1;
        }
        samples.push_back({v[0], v[1], v[2], {v[3], v[4]}, {v[5], v[6]}, v[7] != 0.0});
    }
    return samples;
}

void write_sweep(std::span<const SweepRow> rows, std::ostream& out) {
    out << kSweepHeader << '\n';
    for (const auto& r : rows)
        out << fmt::format("{:.16e},{:.16e},{:.16e},{:.16e},{}\n", r.J, r.E, r.t_dip, r.n_dip, r.found ? 1 : 0);
}

void write_sweep(std::span<const SweepRow> rows, const std::filesystem::path& path) {
    write_file(path, [&](std::ostream& out) { write_sweep(rows, out); });
}

void write_comparison(const Trajectory& linear, const MeanTrajectory& nonlinear, std::ostream& out) {
    if (linear.size() != nonlinear.size())
        throw std::runtime_error("comparison trajectories differ in length");
    out << kCompareHeader << '\n';
    for (std::size_t i = 0; i < linear.size(); ++i)
        out << fmt::format("{:.16e},{:.16e},{:.16e}\n", linear.samples[i].t, linear.samples[i].x_m,
                           nonlinear.samples[i].x_m);
}

void write_comparison(const Trajectory& linear, const MeanTrajectory& nonlinear, const std::filesystem::path& path) {
    write_file(path, [&](std::ostream& out) { write_comparison(linear, nonlinear, out); });
}

} // namespace pulsecool
