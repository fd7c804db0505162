#include "pulsecool/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace pulsecool {

namespace {

constexpr cdouble kI{0.0, 1.0};

double max_abs(std::initializer_list<cdouble> values) {
    double worst = 0.0;
    for (cdouble v : values)
        worst = std::max(worst, std::abs(v));
    return worst;
}

} // namespace

MomentState MomentState::initial(const SystemParams& params) {
    MomentState s;
    s.C(kA, kAdag) = params.n_c + 1.0;
    s.C(kAdag, kA) = params.n_c;
    s.C(kB, kBdag) = params.n_th + 1.0;
    s.C(kBdag, kB) = params.n_th;
    return s;
}

DynamicsState MomentState::pack() const {
    DynamicsState y;
    y(0) = mean_a;
    y(1) = mean_b;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            y(2 + 4 * i + j) = C(i, j);
    return y;
}

MomentState MomentState::unpack(const DynamicsState& y) {
    MomentState s;
    s.mean_a = y(0);
    s.mean_b = y(1);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            s.C(i, j) = y(2 + 4 * i + j);
    return s;
}

double MomentState::displacement() const { return std::sqrt(2.0) * mean_b.real(); }

void StructureDiagnostics::absorb(const MomentState& s) {
    const Matrix4c& C = s.C;
    commutator_a = std::max(commutator_a, std::abs(C(kA, kAdag) - C(kAdag, kA) - 1.0));
    commutator_b = std::max(commutator_b, std::abs(C(kB, kBdag) - C(kBdag, kB) - 1.0));
    imag_occupation = std::max({imag_occupation, std::abs(C(kAdag, kA).imag()), std::abs(C(kBdag, kB).imag())});
    conjugation = std::max(conjugation, max_abs({
                                            C(kAdag, kAdag) - std::conj(C(kA, kA)),
                                            C(kBdag, kBdag) - std::conj(C(kB, kB)),
                                            C(kAdag, kBdag) - std::conj(C(kA, kB)),
                                            C(kAdag, kB) - std::conj(C(kA, kBdag)),
                                            C(kA, kB) - C(kB, kA),
                                            C(kA, kBdag) - C(kBdag, kA),
                                            C(kAdag, kB) - C(kB, kAdag),
                                            C(kAdag, kBdag) - C(kBdag, kAdag),
                                        }));
    min_occupation = std::min({min_occupation, C(kAdag, kA).real(), C(kBdag, kB).real()});
}

Matrix4c drift_matrix(const SystemParams& params, cdouble F, double t) {
    const cdouble G = params.g_m * F;
    const cdouble Gc = std::conj(G);
    const cdouble rot = std::exp(kI * (params.omega_m * t)); // e^{i w t}
    const cdouble rot_c = std::conj(rot);                    // e^{-i w t}
    const double k = params.kappa;
    const double g = params.gamma_m;

    Matrix4c M;
    // clang-format off
    M << -k,                0.0,                kI * G * rot_c,   kI * G * rot,
         0.0,               -k,                 -kI * Gc * rot_c, -kI * Gc * rot,
         kI * Gc * rot,     kI * G * rot,       -g,               0.0,
         -kI * Gc * rot_c,  -kI * G * rot_c,    0.0,              -g;
    // clang-format on
    return M;
}

Matrix4c diffusion_matrix(const SystemParams& params) {
    Matrix4c D = Matrix4c::Zero();
    D(kA, kAdag) = 2.0 * params.kappa * (params.n_c + 1.0);
    D(kAdag, kA) = 2.0 * params.kappa * params.n_c;
    D(kB, kBdag) = 2.0 * params.gamma_m * (params.n_th + 1.0);
    D(kBdag, kB) = 2.0 * params.gamma_m * params.n_th;
    return D;
}

MomentRhs::MomentRhs(const SystemParams& params, const DriveEnvelope& env)
    : params_(params), kernel_(env, params.delta), diffusion_(diffusion_matrix(params)) {}

DynamicsState MomentRhs::operator()(double t, const DynamicsState& y) {
    const cdouble F = kernel_(t).value;
    const Matrix4c M = drift_matrix(params_, F, t);

    const cdouble a = y(0);
    const cdouble b = y(1);
    const cdouble G = params_.g_m * F;
    const cdouble rot = std::exp(kI * (params_.omega_m * t));
    const cdouble rot_c = std::conj(rot);

    DynamicsState dy;
    dy(0) = -params_.kappa * a + kI * G * (rot_c * b + rot * std::conj(b)) - params_.kappa * F;
    dy(1) = -params_.gamma_m * b + kI * rot * (G * std::conj(a) + std::conj(G) * a) +
            kI * params_.g_m * rot * std::norm(F);

    const Eigen::Map<const Eigen::Matrix<cdouble, 4, 4, Eigen::RowMajor>> C(y.data() + 2);
    Eigen::Map<Eigen::Matrix<cdouble, 4, 4, Eigen::RowMajor>> dC(dy.data() + 2);
    // Plain transpose: C holds operator-ordered products <v_i v_j>.
    dC.noalias() = M * C;
    dC.noalias() += C * M.transpose();
    dC += diffusion_;
    return dy;
}

Trajectory simulate(const SystemParams& params, const DriveEnvelope& env, const Grid& grid,
                    const SimulationOptions& options) {
    params.validate();
    grid.validate();

    Trajectory traj;
    traj.params = params;
    traj.envelope = env;
    traj.grid = grid;
    traj.samples.reserve(static_cast<std::size_t>(grid.step_count() / grid.sample_stride + 2));

    MomentRhs rhs(params, env);
    // Separate evaluator for the pulse flag so the integrator's cache sees a
    // monotone query sequence.
    KernelEvaluator flag_kernel(env, params.delta);

    MomentState initial = MomentState::initial(params);
    traj.diagnostics.absorb(initial);

    auto observe = [&](std::int64_t, double t, const DynamicsState& y) {
        const MomentState s = MomentState::unpack(y);
        traj.samples.push_back({t, s.phonon_number(), s.displacement(), s.mean_a, s.mean_b, flag_kernel(t).pulse_on});
        return true;
    };
    auto after_step = [&](std::int64_t, double t, const DynamicsState& y) {
        const MomentState s = MomentState::unpack(y);
        traj.diagnostics.absorb(s);
        const double drift = std::max(traj.diagnostics.commutator_a, traj.diagnostics.commutator_b);
        if (drift > options.commutator_tolerance)
            throw NumericalError(fmt::format(
                "commutator drift {:.3e} exceeds {:.1e} at t = {}; integration is inaccurate, reduce dt", drift,
                options.commutator_tolerance, t));
        if (traj.diagnostics.min_occupation < -options.occupation_tolerance)
            throw NumericalError(
                fmt::format("occupation became negative ({:.3e}) at t = {}", traj.diagnostics.min_occupation, t));
    };

    const DynamicsState final_y = numerics::integrate(rhs, initial.pack(), grid, observe, after_step);
    traj.final_state = MomentState::unpack(final_y);
    return traj;
}

double convergence_check(const SystemParams& params, const DriveEnvelope& env, const Grid& grid) {
    params.validate();
    grid.validate();
    auto make_rhs = [&] { return MomentRhs(params, env); };
    return numerics::convergence_check(make_rhs, MomentState::initial(params).pack(), grid);
}

} // namespace pulsecool
