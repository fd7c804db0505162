#include "pulsecool/errors.hpp"
#include "pulsecool/numerics.hpp"

#include <cmath>

#include <doctest.h>

using namespace pulsecool;
using Vec1 = Eigen::Matrix<double, 1, 1>;
using Vec2 = Eigen::Matrix<double, 2, 1>;

namespace {

double decay_error(double dt) {
    auto f = [](double, const Vec1& y) -> Vec1 { return -y; };
    const Vec1 y = numerics::integrate(f, Vec1(1.0), Grid{0.0, 1.0, dt, 1});
    return std::abs(y(0) - std::exp(-1.0));
}

} // namespace

TEST_CASE("single step of exponential decay") {
    auto f = [](double, const Vec1& y) -> Vec1 { return -y; };
    const Vec1 y = numerics::rk4_step(f, Vec1(1.0), 0.0, 0.1);
    CHECK(y(0) == doctest::Approx(std::exp(-0.1)).epsilon(1e-7));
}

TEST_CASE("zero right-hand side leaves the state unchanged") {
    auto f = [](double, const Vec2&) -> Vec2 { return Vec2::Zero(); };
    const Vec2 y0(0.3, -7.0);
    CHECK(numerics::integrate(f, y0, Grid{0.0, 5.0, 0.01, 10}) == y0);
}

TEST_CASE("rotation keeps its norm") {
    auto f = [](double, const Vec2& y) -> Vec2 { return Vec2(-y(1), y(0)); };
    const Vec2 y = numerics::integrate(f, Vec2(1.0, 0.0), Grid{0.0, 2.0 * M_PI, 2.0 * M_PI / 6000.0, 1});
    CHECK(y.norm() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(y(0) - 1.0) < 1e-10);
}

TEST_CASE("observed global order is about four") {
    const double e1 = decay_error(0.1);
    const double e2 = decay_error(0.05);
    CHECK(std::log2(e1 / e2) >= 3.7);
}

TEST_CASE("halving dt shrinks the error by about sixteen") {
    const double ratio = decay_error(0.02) / decay_error(0.01);
    CHECK(ratio == doctest::Approx(16.0).epsilon(0.1));
}

TEST_CASE("grid step counting") {
    CHECK(Grid{0.0, 6.0, 1e-4, 20}.step_count() == 60000);
    CHECK(Grid{0.0, 6.0, 1e-4, 20}.refined().step_count() == 120000);
    CHECK(Grid{0.0, 6.0, 1e-4, 20}.refined().sample_stride == 40);
    CHECK_THROWS_AS(Grid({0.0, 1.0, 0.3, 1}).step_count(), ValidationError);
    CHECK_THROWS_AS(Grid({0.0, 1.0, -0.1, 1}).validate(), ValidationError);
    CHECK_THROWS_AS(Grid({1.0, 1.0, 0.1, 1}).validate(), ValidationError);
}

TEST_CASE("observer sees step zero, every stride and the end") {
    auto f = [](double, const Vec1&) -> Vec1 { return Vec1(1.0); };
    std::vector<std::int64_t> seen;
    numerics::integrate(
        f, Vec1(0.0), Grid{0.0, 1.05, 0.05, 5},
        [&](std::int64_t step, double, const Vec1&) {
            seen.push_back(step);
            return true;
        },
        [](std::int64_t, double, const Vec1&) {});
    CHECK(seen == std::vector<std::int64_t>{0, 5, 10, 15, 20, 21});
}

TEST_CASE("blow-up is reported with the time") {
    auto f = [](double t, const Vec1& y) -> Vec1 { return t > 0.5 ? Vec1(NAN) : y; };
    try {
        numerics::integrate(f, Vec1(1.0), Grid{0.0, 1.0, 0.1, 1});
        FAIL("expected NonFiniteError");
    } catch (const NonFiniteError& e) {
        CHECK(e.time() > 0.5);
        CHECK(e.time() <= 0.6 + 1e-12);
    }
}

TEST_CASE("convergence check flags a coarse step") {
    auto make = [] { return [](double, const Vec2& y) -> Vec2 { return Vec2(-30.0 * y(1), 30.0 * y(0)); }; };
    const double coarse = numerics::convergence_check(make, Vec2(1.0, 0.0), Grid{0.0, 10.0, 0.05, 1});
    const double fine = numerics::convergence_check(make, Vec2(1.0, 0.0), Grid{0.0, 10.0, 1e-4, 1});
    CHECK(coarse > 1e-3);
    CHECK(fine < 1e-9);
}

TEST_CASE("integration is deterministic") {
    auto f = [](double t, const Vec2& y) -> Vec2 { return Vec2(std::sin(t) * y(1), -y(0)); };
    const Vec2 a = numerics::integrate(f, Vec2(1.0, 2.0), Grid{0.0, 3.0, 1e-3, 1});
    const Vec2 b = numerics::integrate(f, Vec2(1.0, 2.0), Grid{0.0, 3.0, 1e-3, 1});
    CHECK(a == b);
}
