#pragma once

#include "pulsecool/dynamics.hpp"

#include <vector>

namespace pulsecool {

struct MeanSample {
    double t = 0.0;
    cdouble mean_a;
    cdouble mean_b;
    double x_m = 0.0;
};

/// Mean-field trajectory of the full nonlinear model.
struct MeanTrajectory {
    std::vector<MeanSample> samples;
    SystemParams params;
    std::optional<DriveEnvelope> envelope;
    Grid grid;

    bool empty() const { return samples.empty(); }
    std::size_t size() const { return samples.size(); }
};

/// Nonlinear Langevin equations with noise averaged out and operator products
/// factorized (<b^dag a> = <b^dag><a>):
///   d<a>/dt = -kappa <a> + i g_m (e^{-i w t}<b> + e^{i w t}<b>^*) <a> + E(t) e^{i delta t}
///   d<b>/dt = -gamma_m <b> + i g_m e^{i w t} |<a>|^2
/// Throws NonFiniteError on blow-up.
MeanTrajectory simulate_nonlinear(const SystemParams& params, const DriveEnvelope& env, const Grid& grid);

/// Analytic driven-cavity mean for g_m = 0 while a constant drive E is on from t = 0:
/// <a>(t) = E (e^{i delta t} - e^{-kappa t}) / (kappa + i delta).
cdouble driven_cavity_mean(const SystemParams& params, double amplitude, double t);

struct DeviationReport {
    double max_abs = 0.0;
    double rms = 0.0;
    /// rms divided by the RMS of the linear-model X_m over the same window.
    double normalized_rms = 0.0;
    std::size_t samples = 0;
};

/// Compares X_m(t) of the two models over samples with t in [t_lo, t_hi].
/// Throws ValidationError when the sample times differ.
DeviationReport compare_displacement(const Trajectory& linear, const MeanTrajectory& nonlinear, double t_lo,
                                     double t_hi);
DeviationReport compare_displacement(const Trajectory& linear, const MeanTrajectory& nonlinear);

} // namespace pulsecool
