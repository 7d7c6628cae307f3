#pragma once

#include "offt/photonic.hpp"

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace offt {

enum class ArmSelector { long_arm, short_arm };

struct ArmParams {
    double delay = 0.0;    // s, on top of the cell's common base delay
    double phase = 0.0;    // rad
    double loss_db = 0.0;  // dB; a short-arm value models bend-loss balancing
};

/// One butterfly cell: input coupler, a delayed (long) arm carrying the
/// differential delay and twiddle phase, a short arm, output coupler.
/// Input enters coupler port 1. Output 0 is the "cross" port (constructive
/// when the arm phase difference is zero), output 1 the "bar" port.
struct DelayedInterferometer {
    ArmParams long_arm;
    ArmParams short_arm;
    double common_base_delay = 0.0;
    double coupler_in_kappa = 0.5;
    double coupler_out_kappa = 0.5;

    double differential_delay() const { return long_arm.delay - short_arm.delay; }
    double static_phase() const { return long_arm.phase - short_arm.phase; }
    ArmParams& arm(ArmSelector a) { return a == ArmSelector::long_arm ? long_arm : short_arm; }
    const ArmParams& arm(ArmSelector a) const { return a == ArmSelector::long_arm ? long_arm : short_arm; }

    void validate() const;
};

struct DiOutputs {
    Amplitude bar;
    Amplitude cross;
};

/// coupler_out * diag(long, short) * coupler_in applied to unit input on port 1.
DiOutputs di_response(const DelayedInterferometer& di, double frequency);

/// Per-stage override applied to every cell in the stage after the ideal design.
struct StageOverride {
    int stage = 1;  // 1-based
    double phase_offset = 0.0;
    double delay_offset = 0.0;
    double arm_loss_long_db = 0.0;
    double arm_loss_short_db = 0.0;
};

struct ComponentParams {
    double coupler_in_kappa = 0.5;
    double coupler_out_kappa = 0.5;
    double fanout_loss_db_per_stage = 0.0;
    double sampler_loss_db = 0.0;
    bool base_delay_enabled = true;
    // Short-arm physical length per stage; the last entry repeats for deeper stages.
    std::vector<double> base_lengths{500e-6, 440e-6};
    WaveguideContext waveguide{};
    std::vector<StageOverride> stage_overrides;

    /// 50:50 couplers, no loss anywhere, design base delays.
    static ComponentParams ideal() { return {}; }
};

struct CellLocator {
    int stage = 1;  // 1-based
    int cell = 0;   // 0-based within the stage
    ArmSelector arm = ArmSelector::long_arm;
};

/// Outputs are addressed by label k (the DFT bin X_k the port carries in the
/// ideal design). port_map() relates labels to the tree-order physical ports.
class OfftNetwork {
public:
    int n_points() const { return n_points_; }
    int stage_count() const { return static_cast<int>(stages_.size()); }
    double system_frequency() const { return system_frequency_; }
    double period() const { return 1.0 / system_frequency_; }
    double sample_period() const { return period() / n_points_; }
    double fanout_loss_db_per_stage() const { return fanout_loss_db_per_stage_; }
    double sampler_loss_db() const { return sampler_loss_db_; }
    const WaveguideContext& waveguide() const { return waveguide_; }

    const std::vector<std::vector<DelayedInterferometer>>& stages() const { return stages_; }
    const DelayedInterferometer& cell(int stage, int index) const;
    const DelayedInterferometer& cell(const CellLocator& loc) const { return cell(loc.stage, loc.cell); }

    /// port_map()[physical] = label
    const std::vector<int>& port_map() const { return port_map_; }
    int physical_port(int label) const;
    /// Output phase trim per physical port (rad), fixed at build time.
    const std::vector<double>& output_trim() const { return output_trim_; }

    int interferometer_count() const;
    int coupler_count() const { return 2 * interferometer_count(); }
    /// Field amplitude shared by every path: fan-out tree and sampler.
    double uniform_gain() const;
    /// Sum of base delays along any input-output path.
    double common_latency() const;

    /// Copy with one cell edited. Throws NotFoundError for a bad locator.
    OfftNetwork with_cell(int stage, int index, const std::function<void(DelayedInterferometer&)>& edit) const;
    OfftNetwork with_stage(int stage, const std::function<void(DelayedInterferometer&)>& edit) const;

private:
    friend OfftNetwork build_offt(int, double, const ComponentParams&);

    int n_points_ = 0;
    double system_frequency_ = 0.0;
    double fanout_loss_db_per_stage_ = 0.0;
    double sampler_loss_db_ = 0.0;
    WaveguideContext waveguide_{};
    std::vector<std::vector<DelayedInterferometer>> stages_;
    std::vector<int> port_map_;
    std::vector<int> label_to_physical_;
    std::vector<double> output_trim_;
};

bool is_power_of_two(long long n);
int log2_exact(long long n);

/// Builds the N = 2^m decimation-in-frequency delayed-interferometer tree.
/// Stage s has 2^(s-1) cells with differential delay T/2^s; the cell serving
/// residue r carries twiddle -2*pi*r/2^s. port_map and output trims come from
/// the ideal network's impulse responses matched against the oracle DFT.
OfftNetwork build_offt(int n_points, double system_frequency, const ComponentParams& params = ComponentParams::ideal());

struct FrequencyResponse {
    std::vector<double> frequencies;
    std::vector<std::vector<Amplitude>> per_port;  // [label][frequency index]
};

Amplitude port_response(const OfftNetwork& net, int label, double frequency);
FrequencyResponse frequency_response(const OfftNetwork& net, std::span<const double> frequencies);
std::vector<double> linear_grid(double lo, double hi, size_t points);

enum class PortOrder { label, physical };

struct TimeTrace {
    double sample_period = 0.0;
    std::vector<std::vector<Amplitude>> per_port;  // [port][sample]
};

/// Discrete-time simulation at tap spacing T/N. Every arm delay must be a
/// whole number of taps; the common base latency is not represented.
TimeTrace time_simulate(const OfftNetwork& net, std::span<const Amplitude> input,
                        PortOrder order = PortOrder::label);

/// EOM gate: frame j takes sample frame_offset + N - 1 + j*N from every port.
std::vector<std::vector<Amplitude>> sample_outputs(const TimeTrace& trace, int frame_offset);

/// Frequency of maximum |H_label|^2 on [f_lo, f_hi]: grid argmax refined by
/// golden-section search to resolution/100. Throws DegenerateError if the
/// port carries no power.
double peak_frequency(const OfftNetwork& net, int label, double f_lo, double f_hi, double resolution);

/// Peak of every label over one FIR period [0, N f_s).
std::vector<double> port_peak_frequencies(const OfftNetwork& net, double resolution = 1e7);

} // namespace offt
