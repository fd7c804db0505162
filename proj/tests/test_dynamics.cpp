#include "pulsecool/analysis.hpp"
#include "pulsecool/dynamics.hpp"
#include "pulsecool/errors.hpp"

#include <cmath>

#include <doctest.h>

using namespace pulsecool;

namespace {

const SystemParams kFig = make_params(100.0, 100.0, 1e-4, 1e-3, 100.0);

cdouble phase(double x) { return std::exp(cdouble(0.0, x)); }

} // namespace

TEST_CASE("drift matrix with the drive off is diagonal damping") {
    const Matrix4c M = drift_matrix(kFig, 0.0, 0.37);
    Matrix4c expected = Matrix4c::Zero();
    expected.diagonal() << -1.0, -1.0, -1e-3, -1e-3;
    CHECK((M - expected).norm() == 0.0);
    CHECK(drift_matrix(kFig, 0.0, 0.0)(kA, kB) == cdouble(0.0));
}

TEST_CASE("drift matrix entries") {
    const cdouble F(3.0, -4.0);
    const double t = 0.123;
    const cdouble G = kFig.g_m * F;
    const cdouble i(0.0, 1.0);
    const Matrix4c M = drift_matrix(kFig, F, t);
    CHECK(std::abs(M(kA, kB) - i * G * phase(-100.0 * t)) < 1e-15);
    CHECK(std::abs(M(kA, kBdag) - i * G * phase(100.0 * t)) < 1e-15);
    CHECK(std::abs(M(kB, kA) - i * std::conj(G) * phase(100.0 * t)) < 1e-15);
    CHECK(std::abs(M(kB, kAdag) - i * G * phase(100.0 * t)) < 1e-15);
    // Conjugate rows with the dagger swap.
    CHECK(std::abs(M(kAdag, kB) - std::conj(M(kA, kBdag))) < 1e-15);
    CHECK(std::abs(M(kBdag, kA) - std::conj(M(kB, kAdag))) < 1e-15);
    CHECK(std::abs(M(kBdag, kAdag) - std::conj(M(kB, kA))) < 1e-15);
}

TEST_CASE("drift trace is pure damping") {
    for (double t : {0.0, 0.5, 3.3})
        for (cdouble F : {cdouble(0.0), cdouble(1e4, 2e4), cdouble(-5e4, 0.0)})
            CHECK(std::abs(drift_matrix(kFig, F, t).trace() - cdouble(-2.0 - 2e-3)) < 1e-14);
}

TEST_CASE("diffusion matrix") {
    const Matrix4c D = diffusion_matrix(kFig);
    CHECK(D(kBdag, kB).real() == doctest::Approx(0.2));
    CHECK(D(kB, kBdag).real() == doctest::Approx(0.202));
    CHECK(D(kA, kAdag).real() == doctest::Approx(2.0));
    CHECK(D(kAdag, kA) == cdouble(0.0));
    CHECK(D(kA, kA) == cdouble(0.0));
    CHECK(D(kB, kB) == cdouble(0.0));

    const Matrix4c vac = diffusion_matrix(make_params(100.0, 100.0, 1e-4, 1e-3, 0.0));
    int nonzero = 0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            nonzero += vac(r, c) != cdouble(0.0);
    CHECK(nonzero == 2);
}

TEST_CASE("initial state and packing") {
    const MomentState s = MomentState::initial(kFig);
    CHECK(s.phonon_number() == 100.0);
    CHECK(s.C(kB, kBdag) == cdouble(101.0));
    CHECK(s.C(kA, kAdag) == cdouble(1.0));
    CHECK(s.cavity_occupation() == 0.0);
    const MomentState back = MomentState::unpack(s.pack());
    CHECK(back.C == s.C);
    CHECK(back.mean_b == s.mean_b);
}

TEST_CASE("thermal equilibrium is a fixed point") {
    for (double n_th : {0.0, 3.0, 100.0}) {
        const SystemParams p = make_params(100.0, 100.0, 1e-4, 1e-3, n_th);
        const Trajectory traj = simulate(p, DriveEnvelope::square_single(0.0, 10.0), Grid{0.0, 10.0, 1e-3, 100});
        for (const auto& s : traj.samples)
            CHECK(std::abs(s.n_m - n_th) <= 1e-6 * std::max(n_th, 1.0));
    }
}

TEST_CASE("drive off relaxes toward n_th at rate 2 gamma") {
    const SystemParams p = make_params(100.0, 100.0, 1e-4, 1e-3, 100.0);
    MomentState s = MomentState::initial(p);
    s.C(kBdag, kB) = 0.0;
    s.C(kB, kBdag) = 1.0;
    MomentRhs rhs(p, DriveEnvelope::square_single(0.0, 1.0));
    const DynamicsState y = numerics::integrate(rhs, s.pack(), Grid{0.0, 50.0, 1e-2, 1});
    const double expected = 100.0 * (1.0 - std::exp(-2.0 * 1e-3 * 50.0));
    CHECK(MomentState::unpack(y).phonon_number() == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("heating slope between pulses") {
    const auto env = DriveEnvelope::square_train(5e6, 0.34, 3.0);
    const Trajectory traj = simulate(kFig, env, Grid{0.0, 7.0, 1e-4, 20});
    const auto windows = interval_windows(env, 7.0);
    REQUIRE(windows.size() >= 2);
    const auto [lo, hi] = windows[1];
    const double slope = fitted_slope(traj, lo + 0.01, hi - 0.01);
    CHECK(slope == doctest::Approx(0.2).epsilon(0.05));
}

TEST_CASE("structure is preserved on a strong pulse") {
    const Trajectory traj = simulate(kFig, DriveEnvelope::square_single(1e7, 1.0), Grid{0.0, 2.0, 1e-4, 20});
    CHECK(traj.diagnostics.commutator_a <= 1e-6);
    CHECK(traj.diagnostics.commutator_b <= 1e-6);
    CHECK(traj.diagnostics.imag_occupation <= 1e-8);
    CHECK(traj.diagnostics.conjugation <= 1e-8);
    CHECK(traj.diagnostics.min_occupation >= -1e-9);
    for (std::size_t i = 1; i < traj.size(); ++i)
        CHECK(traj.samples[i].t > traj.samples[i - 1].t);
}

TEST_CASE("first sample of a driven run") {
    const Trajectory traj = simulate(kFig, DriveEnvelope::square_single(1.67e6, 6.0), Grid{0.0, 0.01, 1e-4, 20});
    CHECK(traj.samples.front().t == 0.0);
    CHECK(traj.samples.front().n_m == 100.0);
    CHECK(traj.samples.front().pulse_on);
    CHECK(traj.samples.front().x_m == 0.0);
}

TEST_CASE("weak drive cools monotonically after period averaging") {
    const double E = amplitude_for_intensity(kFig, 0.2);
    const Trajectory traj = simulate(kFig, DriveEnvelope::square_single(E, 6.0), Grid{0.0, 6.0, 1e-4, 20});
    const double T = mechanical_period(kFig);
    const auto avg = period_average(traj, T);
    for (std::size_t i = 1; i < traj.size(); ++i) {
        const double t = traj.samples[i].t;
        if (t > T && t < 6.0 - T)
            CHECK(avg[i] <= avg[i - 1] + 1e-9);
    }
}

TEST_CASE("long weak pulse settles near 0.14") {
    const Trajectory traj = simulate(kFig, DriveEnvelope::square_single(1.67e6, 20.0), Grid{0.0, 20.0, 1e-4, 20});
    const auto avg = period_average(traj, mechanical_period(kFig));
    double sum = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < traj.size(); ++i)
        if (traj.samples[i].t >= 15.0) {
            sum += avg[i];
            ++n;
        }
    CHECK(sum / n == doctest::Approx(0.14).epsilon(0.2));
}

TEST_CASE("simulation is deterministic") {
    const auto env = DriveEnvelope::square_single(5e6, 2.0);
    const Grid grid{0.0, 0.5, 1e-4, 20};
    const Trajectory a = simulate(kFig, env, grid);
    const Trajectory b = simulate(kFig, env, grid);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.samples[i].n_m == b.samples[i].n_m);
        CHECK(a.samples[i].mean_b == b.samples[i].mean_b);
    }
}

TEST_CASE("default grid converges on a fig2c-style run") {
    CHECK(convergence_check(kFig, DriveEnvelope::square_single(5e6, 2.0), Grid{0.0, 2.0, 1e-4, 20}) <= 1e-3);
}

TEST_CASE("a tight commutator tolerance aborts the run") {
    SimulationOptions opts;
    opts.commutator_tolerance = 1e-20;
    CHECK_THROWS_AS(simulate(kFig, DriveEnvelope::square_single(1e7, 1.0), Grid{0.0, 0.5, 1e-3, 20}, opts),
                    NumericalError);
}
