#include "offt/sensitivity.hpp"

#include "offt/errors.hpp"
#include "offt/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace offt {

namespace {

// Below this fraction of the maximum a located minimum is an exact null.
constexpr double kNullFloor = 1e-20;

void add_offset(ArmParams& arm, SweepParameter parameter, double value, double loss_per_delay_db_per_ps) {
    switch (parameter) {
    case SweepParameter::phase:
        arm.phase += value;
        break;
    case SweepParameter::delay:
        arm.delay += value;
        arm.loss_db += loss_per_delay_db_per_ps * (value / 1e-12);
        break;
    case SweepParameter::loss:
        arm.loss_db += value;
        break;
    }
}

std::vector<double> resolve_probes(const OfftNetwork& net, const ProbeSpec& probe) {
    const auto n = static_cast<size_t>(net.n_points());
    if (probe.automatic) return port_peak_frequencies(net);
    if (probe.frequencies.size() == 1) return std::vector<double>(n, probe.frequencies.front());
    if (probe.frequencies.size() == n) return probe.frequencies;
    throw DomainError("probe list must hold 1 or " + std::to_string(n) + " frequencies, got " +
                      std::to_string(probe.frequencies.size()));
}

} // namespace

double degradation(double power_at_phi, double power_at_ideal) {
    if (!(power_at_phi >= 0.0) || !(power_at_ideal >= 0.0)) throw DomainError("powers must be >= 0");
    return std::max(power_at_ideal - power_at_phi, 0.0);
}

Metric snr(double p_out, double p_degradation) {
    if (!(p_out >= 0.0) || !(p_degradation >= 0.0)) throw DomainError("powers must be >= 0");
    if (p_degradation == 0.0) return p_out == 0.0 ? Metric::degenerate() : Metric::unbounded();
    return Metric::of((p_out - p_degradation) / p_degradation);
}

Metric mismatch_ratio(double p_out1, double p_out2) {
    if (!(p_out1 >= 0.0) || !(p_out2 >= 0.0)) throw DomainError("powers must be >= 0");
    if (p_out2 == 0.0) return Metric::degenerate();
    return Metric::of(p_out1 / p_out2);
}

Metric fom(Metric snr_value, Metric mismatch_value) {
    if (snr_value.is_degenerate() || !mismatch_value.is_finite() || mismatch_value.value == 0.0)
        return Metric::degenerate();
    if (snr_value.is_unbounded()) return Metric::unbounded();
    return Metric::of(snr_value.value / mismatch_value.value);
}

Metric extinction_ratio(double p_max, double p_min) {
    if (!(p_max >= 0.0) || !(p_min >= 0.0)) throw DomainError("powers must be >= 0");
    if (p_min == 0.0) return p_max == 0.0 ? Metric::degenerate() : Metric::unbounded();
    return Metric::of(p_max / p_min);
}

void SweepSpec::validate() const {
    if (!(increment > 0.0)) throw DomainError("sweep '" + name + "': increment must be > 0");
    if (!(half_range >= 0.0)) throw DomainError("sweep '" + name + "': half_range must be >= 0");
    if (half_range > 0.0 && increment > 2.0 * half_range * (1.0 + 1e-12))
        throw DomainError("sweep '" + name + "': increment exceeds the full range");
    if (parameter != SweepParameter::delay && loss_per_delay_db_per_ps != 0.0)
        throw DomainError("sweep '" + name + "': loss_per_delay only applies to delay sweeps");
}

std::vector<double> SweepSpec::values() const {
    validate();
    const double lo = center - half_range;
    const double steps = 2.0 * half_range / increment;
    const double nearest = std::round(steps);
    const auto count = static_cast<long long>(std::abs(steps - nearest) <= 1e-9 * std::max(1.0, steps)
                                                  ? nearest
                                                  : std::floor(steps));
    std::vector<double> v;
    v.reserve(static_cast<size_t>(count) + 2);
    bool has_baseline = false;
    for (long long i = 0; i <= count; ++i) {
        double x = lo + static_cast<double>(i) * increment;
        if (std::abs(x) <= 1e-12 * increment) {
            x = 0.0;
            has_baseline = true;
        }
        v.push_back(x);
    }
    if (!has_baseline) v.insert(std::upper_bound(v.begin(), v.end(), 0.0), 0.0);
    return v;
}

OfftNetwork apply_sweep_value(const OfftNetwork& net, const SweepSpec& spec, double value) {
    const CellLocator& t = spec.target;
    OfftNetwork out = net.with_cell(t.stage, t.cell, [&](DelayedInterferometer& di) {
        add_offset(di.arm(t.arm), spec.parameter, value, spec.loss_per_delay_db_per_ps);
    });
    if (spec.cascade) {
        for (int s = t.stage + 1; s <= net.stage_count(); ++s) {
            const double scaled = std::ldexp(value, t.stage - s);
            out = out.with_stage(s, [&](DelayedInterferometer& di) {
                add_offset(di.arm(t.arm), spec.parameter, scaled, spec.loss_per_delay_db_per_ps);
            });
        }
    }
    return out;
}

double leakage_ratio(const OfftNetwork& net, int target_port, double frequency, CrosstalkMetric metric) {
    return leakage_ratio(net, target_port, frequency, 0.0, metric);
}

double leakage_ratio(const OfftNetwork& net, int target_port, double frequency, double null_floor,
                     CrosstalkMetric metric) {
    auto pw = [&](int k) {
        const double p = power(port_response(net, k, frequency));
        return p < null_floor ? 0.0 : p;
    };
    const double target = pw(target_port);
    double leak = 0.0;
    for (int k = 0; k < net.n_points(); ++k) {
        if (k == target_port) continue;
        const double p = pw(k);
        leak = metric == CrosstalkMetric::aggregate ? leak + p : std::max(leak, p);
    }
    if (target == 0.0) return leak == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return leak / target;
}

SweepResult run_sweep(const OfftNetwork& net, const SweepSpec& spec) {
    spec.validate();
    (void)net.cell(spec.target);
    (void)net.physical_port(spec.target_port);
    (void)net.physical_port(spec.paired_port);

    SweepResult r;
    r.spec = spec;
    r.probe_frequencies = resolve_probes(net, spec.probe);
    r.parameter_values = spec.values();
    const auto n = static_cast<size_t>(net.n_points());
    const auto tp = static_cast<size_t>(spec.target_port);
    const auto pp = static_cast<size_t>(spec.paired_port);
    const bool with_er = spec.parameter != SweepParameter::phase;
    if (with_er) {
        r.cell_extinction.emplace();
        r.system_extinction.emplace();
    }
    // Round-off residue at an interference null is reported as an exact zero.
    const double gain = net.uniform_gain();
    const double null_floor = kNullFloor * gain * gain;

    for (size_t i = 0; i < r.parameter_values.size(); ++i) {
        const double v = r.parameter_values[i];
        if (v == 0.0) r.baseline_index = i;
        const OfftNetwork perturbed = v == 0.0 ? net : apply_sweep_value(net, spec, v);
        std::vector<double> row(n);
        for (size_t k = 0; k < n; ++k) {
            const double p = power(port_response(perturbed, static_cast<int>(k), r.probe_frequencies[k]));
            row[k] = p < null_floor ? 0.0 : p;
        }
        r.port_power.push_back(std::move(row));
        r.crosstalk.push_back(leakage_ratio(perturbed, spec.target_port, r.probe_frequencies[tp], null_floor));
        if (with_er) {
            r.cell_extinction->push_back(di_extinction_ratio(perturbed.cell(spec.target)));
            r.system_extinction->push_back(system_extinction_ratio(perturbed));
        }
    }

    const double ideal = r.port_power[r.baseline_index][tp];
    for (const auto& row : r.port_power) {
        const double deg = degradation(row[tp], ideal);
        r.degradation.push_back(deg);
        r.snr.push_back(snr(ideal, deg));
        r.mismatch.push_back(mismatch_ratio(row[tp], row[pp]));
        r.fom.push_back(fom(r.snr.back(), r.mismatch.back()));
    }
    return r;
}

double crosstalk_tolerance(const OfftNetwork& net, double threshold_db, int target_port, double probe_frequency,
                           CellLocator heater, CrosstalkMetric metric) {
    if (!(threshold_db < 0.0)) throw DomainError("crosstalk threshold must be < 0 dB");
    (void)net.cell(heater);
    const double limit = std::pow(10.0, threshold_db / 10.0);
    const double null_floor = kNullFloor * net.uniform_gain() * net.uniform_gain();
    auto leak = [&](double dphi) {
        const OfftNetwork detuned = net.with_cell(heater.stage, heater.cell, [&](DelayedInterferometer& di) {
            di.arm(heater.arm).phase += dphi;
        });
        return leakage_ratio(detuned, target_port, probe_frequency, null_floor, metric);
    };
    if (!(leak(0.0) < limit))
        throw DegenerateError("crosstalk threshold already exceeded at zero detuning");

    constexpr double kStep = 1e-2;
    constexpr double kTolerance = 1e-4;
    double best = kPi;
    for (double sign : {1.0, -1.0}) {
        double below = 0.0;
        double above = -1.0;
        for (double d = kStep; d <= kPi + 1e-12; d += kStep) {
            if (leak(sign * d) >= limit) {
                above = d;
                break;
            }
            below = d;
        }
        if (above < 0.0) continue;
        while (above - below > kTolerance) {
            const double mid = 0.5 * (below + above);
            (leak(sign * mid) >= limit ? above : below) = mid;
        }
        best = std::min(best, below);
    }
    return best;
}

Metric port_extinction_ratio(const OfftNetwork& net, int label, double f_lo, double f_hi, size_t grid_points) {
    auto pw = [&](double f) { return power(port_response(net, label, f)); };
    const Extremum hi = grid_refine_max(pw, f_lo, f_hi, grid_points, 0.0);
    const Extremum lo = grid_refine_min(pw, f_lo, f_hi, grid_points, 0.0);
    const double floor_value = lo.value <= kNullFloor * hi.value ? 0.0 : lo.value;
    return extinction_ratio(hi.value, floor_value);
}

Metric di_extinction_ratio(const DelayedInterferometer& di, size_t grid_points) {
    const double tau = std::abs(di.differential_delay());
    if (!(tau > 0.0)) throw DomainError("interferometer has no differential delay");
    auto pw = [&](double f) { return power(di_response(di, f).cross); };
    const Extremum hi = grid_refine_max(pw, 0.0, 1.0 / tau, grid_points, 0.0);
    const Extremum lo = grid_refine_min(pw, 0.0, 1.0 / tau, grid_points, 0.0);
    const double floor_value = lo.value <= kNullFloor * hi.value ? 0.0 : lo.value;
    return extinction_ratio(hi.value, floor_value);
}

Metric system_extinction_ratio(const OfftNetwork& net, size_t grid_points) {
    const double span = net.n_points() * net.system_frequency();
    Metric worst = Metric::unbounded();
    for (int k = 0; k < net.n_points(); ++k) {
        const Metric er = port_extinction_ratio(net, k, 0.0, span, grid_points);
        if (er.is_degenerate()) return er;
        if (er.is_finite() && (worst.is_unbounded() || er.value < worst.value)) worst = er;
    }
    return worst;
}

std::vector<ErPoint> er_vs_loss_curve(const OfftNetwork& net, std::span<const double> losses_db, CellLocator target) {
    SweepSpec spec;
    spec.target = target;
    spec.parameter = SweepParameter::loss;
    spec.cascade = true;
    const double span = net.n_points() * net.system_frequency();
    std::vector<ErPoint> curve;
    for (double loss : losses_db) {
        const OfftNetwork lossy = apply_sweep_value(net, spec, loss);
        ErPoint point;
        point.loss_db = loss;
        for (int k = 0; k < net.n_points(); ++k) point.per_port.push_back(port_extinction_ratio(lossy, k, 0.0, span));
        point.system = system_extinction_ratio(lossy);
        curve.push_back(std::move(point));
    }
    return curve;
}

} // namespace offt
