#pragma once

#include "pulsecool/drive.hpp"
#include "pulsecool/numerics.hpp"
#include "pulsecool/params.hpp"

#include <Eigen/Core>
#include <vector>

namespace pulsecool {

using Matrix4c = Eigen::Matrix<cdouble, 4, 4>;

/// Flat integration state: [<a>, <b>, C row-major (16 entries)].
using DynamicsState = Eigen::Matrix<cdouble, 18, 1>;

/// Index names for the fluctuation vector v = (da, da^dag, db, db^dag).
enum Mode : int { kA = 0, kAdag = 1, kB = 2, kBdag = 3 };

/// Means and the operator-ordered correlation matrix C_ij = <v_i v_j>.
///
/// C is NOT a symmetrized covariance: C_12 - C_21 = 1 is the [a, a^dag]
/// commutator, and propagation uses the plain transpose of the drift matrix.
struct MomentState {
    cdouble mean_a{0.0, 0.0};
    cdouble mean_b{0.0, 0.0};
    Matrix4c C = Matrix4c::Zero();

    /// Vacuum cavity, thermal mechanics at n_th, zero means.
    static MomentState initial(const SystemParams& params);

    DynamicsState pack() const;
    static MomentState unpack(const DynamicsState& y);

    /// n_m = <db^dag db>.
    double phonon_number() const { return C(kBdag, kB).real(); }
    double cavity_occupation() const { return C(kAdag, kA).real(); }
    /// X_m = (<b> + <b^dag>) / sqrt(2).
    double displacement() const;
};

/// Worst-case structural deviations of C seen over a run.
struct StructureDiagnostics {
    double commutator_a = 0.0;   ///< max |(C_12 - C_21) - 1|
    double commutator_b = 0.0;   ///< max |(C_34 - C_43) - 1|
    double imag_occupation = 0.0; ///< max |Im C_21|, |Im C_43|
    double conjugation = 0.0;    ///< max deviation from C_22 = C_11^*, C_24 = C_13^*, commuting-pair symmetry
    double min_occupation = 0.0; ///< min of Re C_21, Re C_43

    void absorb(const MomentState& s);
};

struct TrajectorySample {
    double t = 0.0;
    double n_m = 0.0;
    double x_m = 0.0;
    cdouble mean_a;
    cdouble mean_b;
    bool pulse_on = false;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    SystemParams params;
    std::optional<DriveEnvelope> envelope;
    Grid grid;
    MomentState final_state;
    StructureDiagnostics diagnostics;

    bool empty() const { return samples.empty(); }
    std::size_t size() const { return samples.size(); }
};

/// Drift matrix of the linearized fluctuation equations at time t for kernel value F.
Matrix4c drift_matrix(const SystemParams& params, cdouble F, double t);

/// Noise diffusion matrix D (time independent; thermal baths).
Matrix4c diffusion_matrix(const SystemParams& params);

/// Right-hand side of the joint mean/correlation system. Owns a kernel cache,
/// so each simulation needs its own instance.
class MomentRhs {
public:
    MomentRhs(const SystemParams& params, const DriveEnvelope& env);

    DynamicsState operator()(double t, const DynamicsState& y);

    bool pulse_on(double t) { return kernel_(t).pulse_on; }

private:
    SystemParams params_;
    KernelEvaluator kernel_;
    Matrix4c diffusion_;
};

struct SimulationOptions {
    /// Allowed commutator drift before the run is declared inaccurate.
    double commutator_tolerance = 1e-6;
    /// Occupations below -tolerance are reported as unphysical.
    double occupation_tolerance = 1e-9;
};

/// Integrates the linearized model over the grid.
/// Throws NonFiniteError on blow-up, NumericalError on commutator drift.
Trajectory simulate(const SystemParams& params, const DriveEnvelope& env, const Grid& grid,
                    const SimulationOptions& options = {});

/// Final-state relative deviation between dt and dt/2 runs of `simulate`'s system.
double convergence_check(const SystemParams& params, const DriveEnvelope& env, const Grid& grid);

} // namespace pulsecool
