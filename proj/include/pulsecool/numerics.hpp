#pragma once

#include "pulsecool/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <type_traits>

#include <Eigen/Core>
#include <fmt/format.h>

namespace pulsecool {

/// Uniform time grid. Step k sits at t_start + k * dt (never accumulated).
struct Grid {
    double t_start = 0.0;
    double t_end = 1.0;
    double dt = 1e-4;
    std::int64_t sample_stride = 20;

    void validate() const;

    /// Number of steps; throws if the span is not an integer multiple of dt.
    std::int64_t step_count() const;

    double time_at(std::int64_t step) const { return t_start + static_cast<double>(step) * dt; }

    /// Same span, step halved, stride doubled so the sampled times coincide.
    Grid refined() const;
};

namespace numerics {

inline bool all_finite(double x) { return std::isfinite(x); }
inline bool all_finite(std::complex<double> z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
template <class Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
    return m.allFinite();
}

/// Classical fourth-order Runge-Kutta step for y' = f(t, y).
/// Throws NonFiniteError carrying the stage time if any derivative is non-finite.
template <class State, class Rhs>
State rk4_step(Rhs&& f, const State& y, double t, double dt) {
    auto checked = [&](double ts, const State& ys) -> State {
        State d = f(ts, ys);
        if (!all_finite(d))
            throw NonFiniteError(fmt::format("non-finite derivative at t = {}", ts), ts);
        return d;
    };
    const double half = 0.5 * dt;
    const State k1 = checked(t, y);
    const State k2 = checked(t + half, State(y + half * k1));
    const State k3 = checked(t + half, State(y + half * k2));
    const State k4 = checked(t + dt, State(y + dt * k3));
    return State(y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

/// Integrates over the grid. `observe(step, t, y)` is called at step 0, every
/// sample_stride steps, and at the final step; returning false stops early.
/// `after_step(step, t, y)` runs after every step (may throw to abort).
template <class State, class Rhs, class Observer, class AfterStep>
State integrate(Rhs&& f, State y, const Grid& grid, Observer&& observe, AfterStep&& after_step) {
    const std::int64_t n = grid.step_count();
    if (!observe(std::int64_t{0}, grid.t_start, y))
        return y;
    for (std::int64_t k = 0; k < n; ++k) {
        const double t = grid.time_at(k);
        y = rk4_step(f, y, t, grid.dt);
        const std::int64_t step = k + 1;
        const double t_next = grid.time_at(step);
        after_step(step, t_next, y);
        if (step % grid.sample_stride == 0 || step == n) {
            if (!observe(step, t_next, y))
                break;
        }
    }
    return y;
}

template <class State, class Rhs>
State integrate(Rhs&& f, State y, const Grid& grid) {
    auto none = [](std::int64_t, double, const State&) { return true; };
    auto nothing = [](std::int64_t, double, const State&) {};
    return integrate(std::forward<Rhs>(f), std::move(y), grid, none, nothing);
}

/// Componentwise relative deviation max_i |a_i - b_i| / max(|a_i|, |b_i|, floor).
template <class A, class B>
double relative_deviation(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b, double floor) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double scale = std::max({std::abs(a(i)), std::abs(b(i)), floor});
        worst = std::max(worst, std::abs(a(i) - b(i)) / scale);
    }
    return worst;
}

/// Runs the problem at dt and dt/2 and returns the relative deviation of the
/// final states. `make_rhs()` must return a fresh right-hand side each call so
/// that stateful evaluators (kernel caches) do not leak between resolutions.
template <class State, class MakeRhs>
double convergence_check(MakeRhs&& make_rhs, const State& y0, const Grid& grid, double floor = 1.0) {
    auto coarse_rhs = make_rhs();
    const State coarse = integrate(coarse_rhs, y0, grid);
    auto fine_rhs = make_rhs();
    const State fine = integrate(fine_rhs, y0, grid.refined());
    return relative_deviation(coarse, fine, floor);
}

} // namespace numerics
} // namespace pulsecool
