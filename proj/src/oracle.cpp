#include "pulsecool/oracle.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Core>
#include <fmt/format.h>

namespace pulsecool {

namespace {

constexpr cdouble kI{0.0, 1.0};

using MeanState = Eigen::Matrix<cdouble, 2, 1>;

} // namespace

MeanTrajectory simulate_nonlinear(const SystemParams& params, const DriveEnvelope& env, const Grid& grid) {
    params.validate();
    grid.validate();

    MeanTrajectory traj;
    traj.params = params;
    traj.envelope = env;
    traj.grid = grid;
    traj.samples.reserve(static_cast<std::size_t>(grid.step_count() / grid.sample_stride + 2));

    auto rhs = [&](double t, const MeanState& y) {
        const cdouble a = y(0);
        const cdouble b = y(1);
        const cdouble rot = std::exp(kI * (params.omega_m * t));
        const cdouble drive = env.at(t) * std::exp(kI * (params.delta * t));
        MeanState dy;
        dy(0) = -params.kappa * a + kI * params.g_m * (std::conj(rot) * b + rot * std::conj(b)) * a + drive;
        dy(1) = -params.gamma_m * b + kI * params.g_m * rot * std::norm(a);
        return dy;
    };
    auto observe = [&](std::int64_t, double t, const MeanState& y) {
        traj.samples.push_back({t, y(0), y(1), std::sqrt(2.0) * y(1).real()});
        return true;
    };
    auto nothing = [](std::int64_t, double, const MeanState&) {};

    numerics::integrate(rhs, MeanState::Zero().eval(), grid, observe, nothing);
    return traj;
}

cdouble driven_cavity_mean(const SystemParams& params, double amplitude, double t) {
    return amplitude * (std::exp(kI * (params.delta * t)) - std::exp(-params.kappa * t)) /
           cdouble(params.kappa, params.delta);
}

DeviationReport compare_displacement(const Trajectory& linear, const MeanTrajectory& nonlinear, double t_lo,
                                     double t_hi) {
    if (linear.size() != nonlinear.size())
        throw ValidationError(fmt::format("trajectories differ in length ({} vs {} samples)", linear.size(),
                                          nonlinear.size()));
    DeviationReport report;
    double sum_sq = 0.0;
    double ref_sq = 0.0;
    for (std::size_t i = 0; i < linear.size(); ++i) {
        const auto& l = linear.samples[i];
        const auto& n = nonlinear.samples[i];
        if (std::abs(l.t - n.t) > 1e-9 * std::max(1.0, std::abs(l.t)))
            throw ValidationError(fmt::format("sample {} times differ: {} vs {}", i, l.t, n.t));
        if (l.t < t_lo || l.t > t_hi)
            continue;
        const double d = l.x_m - n.x_m;
        report.max_abs = std::max(report.max_abs, std::abs(d));
        sum_sq += d * d;
        ref_sq += l.x_m * l.x_m;
        ++report.samples;
    }
    if (report.samples == 0)
        return report;
    const double count = static_cast<double>(report.samples);
    report.rms = std::sqrt(sum_sq / count);
    const double ref_rms = std::sqrt(ref_sq / count);
    report.normalized_rms = ref_rms > 0.0 ? report.rms / ref_rms : (report.rms > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    return report;
}

DeviationReport compare_displacement(const Trajectory& linear, const MeanTrajectory& nonlinear) {
    return compare_displacement(linear, nonlinear, -std::numeric_limits<double>::infinity(),
                                std::numeric_limits<double>::infinity());
}

} // namespace pulsecool
