#pragma once

#include <array>
#include <complex>
#include <variant>

namespace offt {

using Amplitude = std::complex<double>;

inline double power(Amplitude a) { return std::norm(a); }

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s, exact
// Rounded value behind the 12/6/3 mm spiral lengths of the reference design.
inline constexpr double kDesignSpeedOfLight = 3e8;
inline constexpr double kPi = 3.14159265358979323846;

/// 2x2 complex transfer matrix acting on (port 1, port 2) field amplitudes.
struct Transfer2x2 {
    std::array<Amplitude, 4> m{Amplitude{1.0}, Amplitude{}, Amplitude{}, Amplitude{1.0}};

    Amplitude& operator()(int row, int col) { return m[static_cast<size_t>(row * 2 + col)]; }
    Amplitude operator()(int row, int col) const { return m[static_cast<size_t>(row * 2 + col)]; }

    static Transfer2x2 identity() { return {}; }
    static Transfer2x2 diagonal(Amplitude a, Amplitude b) {
        Transfer2x2 t;
        t(0, 0) = a;
        t(1, 1) = b;
        return t;
    }

    Transfer2x2 adjoint() const;
    std::array<Amplitude, 2> apply(std::array<Amplitude, 2> in) const;
};

Transfer2x2 operator*(const Transfer2x2& a, const Transfer2x2& b);

// Element primitives. Losses are power dB and enter the field as 10^(-dB/20).
struct Coupler {
    double cross_power_ratio = 0.5;
};
struct DelayLine {
    double delay = 0.0;  // s
    double loss_db = 0.0;
};
struct PhaseShift {
    double phi = 0.0;  // rad
};
struct YBranch {
    double insertion_loss_db = 0.0;
};
struct Attenuator {
    double loss_db = 0.0;
};

using Element = std::variant<Coupler, DelayLine, PhaseShift, YBranch, Attenuator>;

struct WaveguideContext {
    double n_eff = 2.5;
    double wavelength = 1550e-9;  // m
    double dn_dT = 1.9e-4;        // 1/K
    double speed_of_light = kDesignSpeedOfLight;  // m/s

    void validate() const;
};

/// Symmetric lossless directional coupler: through amplitude sqrt(1-kappa),
/// cross amplitude j*sqrt(kappa). Throws DomainError outside [0,1].
Transfer2x2 coupler_matrix(double kappa);

/// amplitude 10^(-loss_db/20) * exp(-j 2 pi f delay)
Amplitude delay_response(double delay, double loss_db, double frequency);

double delay_to_length(double delay, const WaveguideContext& ctx);
double length_to_delay(double length, const WaveguideContext& ctx);

double db_to_amplitude(double loss_db);
double amplitude_to_db(double amplitude);

/// Response of a single element at frequency f. Two-port elements (Coupler)
/// return their full matrix; single-path elements return a diagonal matrix
/// acting identically on both rails.
Transfer2x2 element_transfer(const Element& e, double frequency);

} // namespace offt
