#include "offt/photonic.hpp"

#include "offt/errors.hpp"

#include <cmath>
#include <string>

namespace offt {

Transfer2x2 Transfer2x2::adjoint() const {
    Transfer2x2 t;
    t(0, 0) = std::conj((*this)(0, 0));
    t(0, 1) = std::conj((*this)(1, 0));
    t(1, 0) = std::conj((*this)(0, 1));
    t(1, 1) = std::conj((*this)(1, 1));
    return t;
}

std::array<Amplitude, 2> Transfer2x2::apply(std::array<Amplitude, 2> in) const {
    return {(*this)(0, 0) * in[0] + (*this)(0, 1) * in[1],
            (*this)(1, 0) * in[0] + (*this)(1, 1) * in[1]};
}

Transfer2x2 operator*(const Transfer2x2& a, const Transfer2x2& b) {
    Transfer2x2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    return r;
}

void WaveguideContext::validate() const {
    if (!(n_eff > 1.0)) throw DomainError("n_eff must be > 1");
    if (!(wavelength > 0.0)) throw DomainError("wavelength must be > 0");
    if (!(dn_dT > 0.0)) throw DomainError("dn/dT must be > 0");
    if (!(speed_of_light > 0.0)) throw DomainError("speed of light must be > 0");
}

Transfer2x2 coupler_matrix(double kappa) {
    if (!(kappa >= 0.0 && kappa <= 1.0))
        throw DomainError("coupler cross power ratio must lie in [0,1], got " + std::to_string(kappa));
    const double t = std::sqrt(1.0 - kappa);
    const Amplitude c{0.0, std::sqrt(kappa)};
    Transfer2x2 m;
    m(0, 0) = t;
    m(0, 1) = c;
    m(1, 0) = c;
    m(1, 1) = t;
    return m;
}

Amplitude delay_response(double delay, double loss_db, double frequency) {
    if (!(delay >= 0.0)) throw DomainError("delay must be >= 0");
    if (!(loss_db >= 0.0)) throw DomainError("loss must be >= 0 dB");
    // Reduce f*delay modulo 1 before scaling by 2 pi so whole cycles come out exact.
    const double cycles = frequency * delay;
    const double frac = cycles - std::round(cycles);
    return std::polar(db_to_amplitude(loss_db), -2.0 * kPi * frac);
}

double delay_to_length(double delay, const WaveguideContext& ctx) {
    if (!(delay >= 0.0)) throw DomainError("delay must be >= 0");
    ctx.validate();
    return ctx.speed_of_light / ctx.n_eff * delay;
}

double length_to_delay(double length, const WaveguideContext& ctx) {
    if (!(length >= 0.0)) throw DomainError("length must be >= 0");
    ctx.validate();
    return length * ctx.n_eff / ctx.speed_of_light;
}

double db_to_amplitude(double loss_db) {
    if (!(loss_db >= 0.0)) throw DomainError("loss must be >= 0 dB");
    return std::pow(10.0, -loss_db / 20.0);
}

double amplitude_to_db(double amplitude) {
    if (!(amplitude > 0.0)) throw DomainError("amplitude must be > 0 to express in dB");
    return -20.0 * std::log10(amplitude);
}

Transfer2x2 element_transfer(const Element& e, double frequency) {
    struct Visitor {
        double f;
        Transfer2x2 operator()(const Coupler& c) const { return coupler_matrix(c.cross_power_ratio); }
        Transfer2x2 operator()(const DelayLine& d) const {
            const Amplitude a = delay_response(d.delay, d.loss_db, f);
            return Transfer2x2::diagonal(a, a);
        }
        Transfer2x2 operator()(const PhaseShift& p) const {
            const Amplitude a = std::polar(1.0, p.phi);
            return Transfer2x2::diagonal(a, a);
        }
        Transfer2x2 operator()(const YBranch& y) const {
            const double a = db_to_amplitude(y.insertion_loss_db);
            return Transfer2x2::diagonal(a, a);
        }
        Transfer2x2 operator()(const Attenuator& at) const {
            const double a = db_to_amplitude(at.loss_db);
            return Transfer2x2::diagonal(a, a);
        }
    };
    return std::visit(Visitor{frequency}, e);
}

} // namespace offt
