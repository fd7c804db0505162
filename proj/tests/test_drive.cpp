#include "pulsecool/drive.hpp"
#include "pulsecool/errors.hpp"

#include <cmath>

#include <doctest.h>

using namespace pulsecool;

namespace {

// Independent closed form: F = iE/D (1 - e^{iD tau}).
cdouble square_kernel(double E, double D, double tau) {
    return cdouble(0.0, E / D) * (1.0 - std::exp(cdouble(0.0, D * tau)));
}

} // namespace

TEST_CASE("square single envelope") {
    const auto env = DriveEnvelope::square_single(5e6, 2.0);
    CHECK(env.at(0.0) == cdouble(5e6));
    CHECK(env.at(1.0) == cdouble(5e6));
    CHECK(env.at(2.0) == cdouble(5e6));
    CHECK(env.at(2.0001) == cdouble(0.0));
    CHECK_THROWS_AS(DriveEnvelope::square_single(-1.0, 2.0), ValidationError);
    CHECK_THROWS_AS(DriveEnvelope::square_single(1.0, 0.0), ValidationError);
}

TEST_CASE("square train windows") {
    const auto env = DriveEnvelope::square_train(1.0, 2.0, 2.0);
    CHECK(env.at(0.5) == cdouble(1.0));
    CHECK(env.at(3.0) == cdouble(0.0));
    CHECK(env.at(4.0) == cdouble(0.0));
    CHECK(env.at(4.5) == cdouble(1.0));
    CHECK(env.time_into_pulse(4.5).value() == doctest::Approx(0.5));
    CHECK_FALSE(env.time_into_pulse(3.0).has_value());

    const auto limited = DriveEnvelope::square_train(1.0, 2.0, 2.0, 2);
    CHECK(limited.at(4.5) == cdouble(1.0));
    CHECK(limited.at(8.5) == cdouble(0.0));
}

TEST_CASE("gaussian envelope peaks at its center") {
    const auto env = DriveEnvelope::gaussian(1.67e7, 1.0 / 3.0);
    CHECK(env.at(env.center()).real() == doctest::Approx(1.67e7));
    CHECK(env.at(env.center() + 3.0).real() == doctest::Approx(1.67e7 * std::exp(-1.0)));
    CHECK_THROWS_AS(DriveEnvelope::gaussian(1.0, 0.0), ValidationError);
}

TEST_CASE("envelope kind names") {
    for (auto kind : {EnvelopeKind::SquareSingle, EnvelopeKind::SquareTrain, EnvelopeKind::Gaussian,
                      EnvelopeKind::Custom})
        CHECK(envelope_kind_from_string(to_string(kind)) == kind);
    CHECK_THROWS_AS(envelope_kind_from_string("triangle"), ValidationError);
}

TEST_CASE("square kernel examples") {
    const auto env = DriveEnvelope::square_single(5e6, 2.0);
    CHECK(std::abs(kernel_at(env, 100.0, 0.0).value) == 0.0);
    CHECK(kernel_at(env, 100.0, 0.0).pulse_on);

    // A full detuning period returns F to zero.
    const double period = 2.0 * M_PI / 100.0;
    CHECK(std::abs(kernel_at(env, 100.0, period).value) < 1e-6);

    const auto mid = kernel_at(env, 100.0, 1.234);
    CHECK(std::abs(mid.value - square_kernel(5e6, 100.0, 1.234)) < 1e-6);

    const auto off = kernel_at(env, 100.0, 2.5);
    CHECK(off.value == cdouble(0.0));
    CHECK_FALSE(off.pulse_on);
}

TEST_CASE("square kernel is bounded by 2E/delta") {
    const auto env = DriveEnvelope::square_train(5e6, 0.34, 0.5);
    KernelEvaluator k(env, 100.0);
    for (int i = 0; i <= 5000; ++i) {
        const double t = 1e-3 * i;
        CHECK(std::abs(k(t).value) <= 2.0 * 5e6 / 100.0 * (1.0 + 1e-12));
    }
}

TEST_CASE("train kernel repeats every period") {
    const auto env = DriveEnvelope::square_train(1e6, 2.0, 2.0);
    for (double t : {0.1, 0.77, 1.5, 1.99})
        for (int j = 1; j <= 3; ++j)
            CHECK(std::abs(kernel_at(env, 100.0, t + 4.0 * j).value - kernel_at(env, 100.0, t).value) < 1e-6);
}

TEST_CASE("zero detuning is rejected for square kinds") {
    CHECK_THROWS_AS(KernelEvaluator(DriveEnvelope::square_single(1.0, 1.0), 0.0), ValidationError);
}

TEST_CASE("quadrature reproduces the square closed form") {
    const double E = 5e6;
    const double D = 100.0;
    const auto square = DriveEnvelope::square_single(E, 2.0);
    const auto sampled = DriveEnvelope::custom([&](double t) { return t <= 2.0 ? cdouble(E) : cdouble(0.0); }, E);
    KernelEvaluator cached(sampled, D);
    for (int i = 1; i <= 190; ++i) {
        const double t = 0.01 * i;
        const cdouble exact = kernel_at(square, D, t).value;
        const cdouble numeric = cached(t).value;
        CHECK(std::abs(numeric - exact) / (2.0 * E / D) <= 1e-8);
    }
}

TEST_CASE("gaussian quadrature matches a direct sum") {
    const auto env = DriveEnvelope::gaussian(1.0, 1.0 / 3.0, 4.5);
    const double D = 100.0;
    const double t = 4.5;
    // Composite midpoint rule on a fine grid as the independent reference.
    const int n = 2'000'000;
    const double h = t / n;
    cdouble ref = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s = (i + 0.5) * h;
        ref += env.at(s) * std::exp(cdouble(0.0, D * s)) * h;
    }
    CHECK(std::abs(kernel_at(env, D, t).value - ref) < 1e-9);
}

TEST_CASE("cache gives the same answer as a one-shot evaluation") {
    const auto env = DriveEnvelope::gaussian(1e6, 1.0 / 3.0);
    KernelEvaluator k(env, 100.0);
    for (double t : {0.5, 1.0, 3.0, 6.0})
        CHECK(std::abs(k(t).value - kernel_at(env, 100.0, t).value) <= 1e-10 * 1e6);
    // Going backwards resets the cache.
    CHECK(std::abs(k(1.0).value - kernel_at(env, 100.0, 1.0).value) <= 1e-10 * 1e6);
}
