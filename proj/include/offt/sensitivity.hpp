#pragma once

#include "offt/network.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace offt {

/// A ratio that may diverge (ideal design point) or be undefined (0/0).
struct Metric {
    enum class Kind { finite, unbounded, degenerate };

    Kind kind = Kind::finite;
    double value = 0.0;

    static Metric of(double v) { return {Kind::finite, v}; }
    static Metric unbounded() { return {Kind::unbounded, 0.0}; }
    static Metric degenerate() { return {Kind::degenerate, 0.0}; }

    bool is_finite() const { return kind == Kind::finite; }
    bool is_unbounded() const { return kind == Kind::unbounded; }
    bool is_degenerate() const { return kind == Kind::degenerate; }
};

/// Power lost relative to the ideal point, floored at zero.
double degradation(double power_at_phi, double power_at_ideal);
/// (p_out - p_deg) / p_deg; unbounded when p_deg = 0, degenerate when both are 0.
Metric snr(double p_out, double p_degradation);
/// p_out1 / p_out2; degenerate when p_out2 = 0.
Metric mismatch_ratio(double p_out1, double p_out2);
/// snr / mismatch, propagating unbounded and degenerate states.
Metric fom(Metric snr_value, Metric mismatch_value);
/// p_max / p_min; unbounded when p_min = 0.
Metric extinction_ratio(double p_max, double p_min);

enum class SweepParameter { phase, delay, loss };

struct ProbeSpec {
    bool automatic = true;             // per-port peak frequencies of the unperturbed net
    std::vector<double> frequencies;  // one (shared by every port) or one per port
};

/// A single-axis sweep. Parameter values are offsets added to the designed
/// element value: detuning in rad, extra delay in s, extra loss in dB.
struct SweepSpec {
    std::string name;
    CellLocator target;
    SweepParameter parameter = SweepParameter::phase;
    double center = 0.0;
    double half_range = 0.0;
    double increment = 1.0;
    ProbeSpec probe;
    int target_port = 2;
    int paired_port = 0;
    double loss_per_delay_db_per_ps = 0.0;  // delay sweeps: extra loss tied to extra delay
    bool cascade = false;                   // deeper stages get the offset halved per stage

    void validate() const;
    /// center - half_range ... center + half_range in increments, plus the
    /// unperturbed point (0) if the grid misses it.
    std::vector<double> values() const;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<double> probe_frequencies;         // per port label
    std::vector<double> parameter_values;
    std::vector<std::vector<double>> port_power;   // [value][label], |H|^2 at that label's probe; nulls are exact 0
    size_t baseline_index = 0;
    std::vector<double> degradation;               // target port
    std::vector<Metric> snr;
    std::vector<Metric> mismatch;                  // target vs paired
    std::vector<Metric> fom;
    std::vector<double> crosstalk;                 // aggregate leakage / target at the target probe
    // Delay and loss sweeps only: ER of the perturbed interferometer over one
    // free spectral range, and the worst port ER of the whole network over one FIR period.
    std::optional<std::vector<Metric>> cell_extinction;
    std::optional<std::vector<Metric>> system_extinction;
};

/// Network with one sweep point's perturbation applied.
OfftNetwork apply_sweep_value(const OfftNetwork& net, const SweepSpec& spec, double value);

SweepResult run_sweep(const OfftNetwork& net, const SweepSpec& spec);

enum class CrosstalkMetric { aggregate, worst_port };

/// Power leaking into non-target outputs relative to the target, at frequency f.
double leakage_ratio(const OfftNetwork& net, int target_port, double frequency,
                     CrosstalkMetric metric = CrosstalkMetric::aggregate);
/// Same, with powers below null_floor counted as exact zeros.
double leakage_ratio(const OfftNetwork& net, int target_port, double frequency, double null_floor,
                     CrosstalkMetric metric = CrosstalkMetric::aggregate);

/// Largest |dphi| on the heater for which leakage stays below
/// 10^(threshold_db/10) in both detuning directions; bisection to 1e-4 rad.
double crosstalk_tolerance(const OfftNetwork& net, double threshold_db, int target_port, double probe_frequency,
                           CellLocator heater = {}, CrosstalkMetric metric = CrosstalkMetric::aggregate);

/// max/min of |H_label|^2 over [f_lo, f_hi].
Metric port_extinction_ratio(const OfftNetwork& net, int label, double f_lo, double f_hi, size_t grid_points = 4001);

/// Cross-port ER of a single interferometer over one free spectral range.
Metric di_extinction_ratio(const DelayedInterferometer& di, size_t grid_points = 2001);

/// Smallest port ER over one FIR period [0, N f_s).
Metric system_extinction_ratio(const OfftNetwork& net, size_t grid_points = 4001);

struct ErPoint {
    double loss_db = 0.0;
    std::vector<Metric> per_port;  // by label
    Metric system;                 // worst (smallest) port ER
};

/// Loss gamma on the target arm, gamma/2 on the same arm of the next stage,
/// and so on; ER per port over one FIR period.
std::vector<ErPoint> er_vs_loss_curve(const OfftNetwork& net, std::span<const double> losses_db,
                                      CellLocator target = {});

} // namespace offt
