#pragma once

#include "offt/photonic.hpp"

namespace offt {

/// Heater-tuned waveguide section. dn_eff/dT is taken equal to the material dn/dT.
struct HeaterSection {
    double length = 500e-6;  // m
    WaveguideContext ctx{};

    void validate() const;
};

/// Temperature change producing a phase shift dphi: dT = dphi * lambda / (2 pi dn/dT L).
double phase_to_temperature(double dphi, const HeaterSection& heater);

/// Inverse of phase_to_temperature.
double temperature_to_phase(double dT, const HeaterSection& heater);

} // namespace offt
