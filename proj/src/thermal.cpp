#include "offt/thermal.hpp"

#include "offt/errors.hpp"

namespace offt {

void HeaterSection::validate() const {
    if (!(length > 0.0)) throw DomainError("heater length must be > 0");
    ctx.validate();
}

double phase_to_temperature(double dphi, const HeaterSection& heater) {
    heater.validate();
    if (!(dphi >= 0.0)) throw DomainError("phase shift must be >= 0");
    return dphi * heater.ctx.wavelength / (2.0 * kPi * heater.ctx.dn_dT * heater.length);
}

double temperature_to_phase(double dT, const HeaterSection& heater) {
    heater.validate();
    if (!(dT >= 0.0)) throw DomainError("temperature change must be >= 0");
    return 2.0 * kPi * heater.ctx.dn_dT * heater.length * dT / heater.ctx.wavelength;
}

} // namespace offt
