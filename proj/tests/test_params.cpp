#include "pulsecool/errors.hpp"
#include "pulsecool/params.hpp"

#include <doctest.h>

using namespace pulsecool;

TEST_CASE("effective intensity examples") {
    const SystemParams p = make_params(100.0, 100.0, 1e-4, 1e-3, 100.0);
    CHECK(effective_intensity(p, 5e6).J == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(effective_intensity(p, 1.5e6).J == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(effective_intensity(p, 0.0).J == 0.0);
}

TEST_CASE("effective intensity is linear in E") {
    const SystemParams p = make_params(37.0, 40.0, 3e-4, 1e-3, 10.0);
    for (double E : {1.0, 3.3e5, 7.77e6})
        CHECK(effective_intensity(p, 2.0 * E).J == 2.0 * effective_intensity(p, E).J);
}

TEST_CASE("amplitude for intensity inverts J") {
    const SystemParams p = make_params(100.0, 100.0, 1e-4, 1e-3, 100.0);
    for (double J : {0.25, 1.67, 5.0})
        CHECK(effective_intensity(p, amplitude_for_intensity(p, J)).J == doctest::Approx(J).epsilon(1e-14));
}

TEST_CASE("negative amplitude is rejected") {
    CHECK_THROWS_AS(effective_intensity(SystemParams{}, -1.0), ValidationError);
}

TEST_CASE("non-positive rates are rejected") {
    CHECK_THROWS_AS(make_params(0.0, 100.0, 1e-4, 1e-3, 100.0), ValidationError);
    CHECK_THROWS_AS(make_params(-5.0, 100.0, 1e-4, 1e-3, 100.0), ValidationError);
    CHECK_THROWS_AS(make_params(100.0, 100.0, 1e-4, 0.0, 100.0), ValidationError);
    CHECK_THROWS_AS(make_params(100.0, 100.0, 1e-4, 1e-3, -1.0), ValidationError);
    CHECK_THROWS_AS(make_params(100.0, 100.0, 1e-4, 1e-3, 1.0, -0.5), ValidationError);
    CHECK_NOTHROW(make_params(100.0, 100.0, 1e-4, 1e-3, 0.0));

    try {
        make_params(100.0, 100.0, 1e-4, -1.0, 100.0);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("gamma_m") != std::string::npos);
    }
}

TEST_CASE("kappa is fixed to one") {
    SystemParams p;
    p.kappa = 2.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("strong coupling raises a warning, not an error") {
    SystemParams p;
    CHECK(p.weak_coupling());
    CHECK(p.warnings().empty());
    p.g_m = 1.0;
    CHECK_NOTHROW(p.validate());
    CHECK_FALSE(p.weak_coupling());
    CHECK(p.warnings().size() == 1);
}
