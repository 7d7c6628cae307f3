#include "offt/errors.hpp"
#include "offt/thermal.hpp"

#include <doctest.h>

using namespace offt;

TEST_CASE("quarter-wave heater detuning at 500 um") {
    const HeaterSection h;
    // 1550e-9 * (pi/2) / (2 pi * 1.9e-4 * 500e-6)
    CHECK(phase_to_temperature(kPi / 2.0, h) == doctest::Approx(4.0789473684).epsilon(1e-9));
    CHECK(phase_to_temperature(0.0, h) == 0.0);
    CHECK(phase_to_temperature(0.2, h) == doctest::Approx(0.5193477090).epsilon(1e-9));
    CHECK(temperature_to_phase(0.52, h) == doctest::Approx(0.2002511962).epsilon(1e-9));
}

TEST_CASE("conversions invert each other") {
    HeaterSection h;
    h.length = 1.2e-3;
    h.ctx.wavelength = 1310e-9;
    for (double dphi : {0.01, 0.5, 1.0, 3.0})
        CHECK(temperature_to_phase(phase_to_temperature(dphi, h), h) == doctest::Approx(dphi).epsilon(1e-14));
}

TEST_CASE("longer heaters need less heating") {
    HeaterSection a, b;
    b.length = 2.0 * a.length;
    CHECK(phase_to_temperature(1.0, b) == doctest::Approx(0.5 * phase_to_temperature(1.0, a)).epsilon(1e-14));
}

TEST_CASE("thermal domain errors") {
    HeaterSection h;
    CHECK_THROWS_AS(phase_to_temperature(-0.1, h), DomainError);
    CHECK_THROWS_AS(temperature_to_phase(-0.1, h), DomainError);
    h.length = 0.0;
    CHECK_THROWS_AS(phase_to_temperature(0.1, h), DomainError);
    h.length = 500e-6;
    h.ctx.dn_dT = 0.0;
    CHECK_THROWS_AS(phase_to_temperature(0.1, h), DomainError);
}
