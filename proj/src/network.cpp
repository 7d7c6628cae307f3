#include "offt/network.hpp"

#include "offt/dft_oracle.hpp"
#include "offt/errors.hpp"
#include "offt/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace offt {

namespace {

int bit_reverse(int value, int bits) {
    int r = 0;
    for (int i = 0; i < bits; ++i) {
        r = (r << 1) | (value & 1);
        value >>= 1;
    }
    return r;
}

void check_arm(const ArmParams& a, const char* which) {
    if (!(a.delay >= 0.0)) throw DomainError(std::string(which) + " arm delay must be >= 0");
    if (!(a.loss_db >= 0.0)) throw DomainError(std::string(which) + " arm loss must be >= 0 dB");
    if (!std::isfinite(a.phase)) throw DomainError(std::string(which) + " arm phase must be finite");
}

Amplitude arm_response(const ArmParams& arm, double base_delay, double f) {
    return delay_response(base_delay + arm.delay, arm.loss_db, f) * std::polar(1.0, arm.phase);
}

// Two-tap FIR form of one cell output: coefficient and delay (in taps) per arm.
struct Tap {
    Amplitude coefficient;
    long long delay_taps;
};

struct CellTaps {
    std::array<Tap, 2> cross;
    std::array<Tap, 2> bar;
};

long long to_taps(double delay, double sample_period) {
    const double taps = delay / sample_period;
    const double rounded = std::round(taps);
    if (std::abs(taps - rounded) > 1e-6)
        throw DomainError("time_simulate: arm delay " + std::to_string(delay) +
                          " s is not a whole number of taps (" + std::to_string(sample_period) + " s)");
    return static_cast<long long>(rounded);
}

CellTaps cell_taps(const DelayedInterferometer& di, double sample_period) {
    const Transfer2x2 cin = coupler_matrix(di.coupler_in_kappa);
    const Transfer2x2 cout = coupler_matrix(di.coupler_out_kappa);
    const Amplitude along = db_to_amplitude(di.long_arm.loss_db) * std::polar(1.0, di.long_arm.phase);
    const Amplitude ashort = db_to_amplitude(di.short_arm.loss_db) * std::polar(1.0, di.short_arm.phase);
    const long long dl = to_taps(di.long_arm.delay, sample_period);
    const long long ds = to_taps(di.short_arm.delay, sample_period);
    CellTaps t;
    t.cross = {Tap{cout(1, 0) * cin(0, 0) * along, dl}, Tap{cout(1, 1) * cin(1, 0) * ashort, ds}};
    t.bar = {Tap{cout(0, 0) * cin(0, 0) * along, dl}, Tap{cout(0, 1) * cin(1, 0) * ashort, ds}};
    return t;
}

std::vector<Amplitude> apply_taps(const std::array<Tap, 2>& taps, const std::vector<Amplitude>& in) {
    std::vector<Amplitude> out(in.size());
    for (const Tap& tap : taps) {
        const auto d = static_cast<size_t>(tap.delay_taps);
        for (size_t n = d; n < in.size(); ++n) out[n] += tap.coefficient * in[n - d];
    }
    return out;
}

// Streams in tree (physical) order, without trims.
std::vector<std::vector<Amplitude>> propagate(const std::vector<std::vector<DelayedInterferometer>>& stages,
                                              double sample_period, std::span<const Amplitude> input,
                                              double input_gain) {
    std::vector<std::vector<Amplitude>> streams(1, std::vector<Amplitude>(input.begin(), input.end()));
    for (auto& v : streams[0]) v *= input_gain;
    for (const auto& stage : stages) {
        std::vector<std::vector<Amplitude>> next(2 * streams.size());
        for (size_t c = 0; c < stage.size(); ++c) {
            const CellTaps taps = cell_taps(stage[c], sample_period);
            next[2 * c] = apply_taps(taps.cross, streams[c]);
            next[2 * c + 1] = apply_taps(taps.bar, streams[c]);
        }
        streams = std::move(next);
    }
    return streams;
}

std::vector<std::vector<DelayedInterferometer>> design_cells(int n_points, double fs, const ComponentParams& params,
                                                             bool ideal) {
    const int m = log2_exact(n_points);
    const double period = 1.0 / fs;
    std::vector<std::vector<DelayedInterferometer>> stages(static_cast<size_t>(m));
    for (int s = 1; s <= m; ++s) {
        const int cells = 1 << (s - 1);
        const double span = static_cast<double>(1 << s);
        double base = 0.0;
        if (params.base_delay_enabled && !params.base_lengths.empty()) {
            const size_t idx = std::min(static_cast<size_t>(s - 1), params.base_lengths.size() - 1);
            base = length_to_delay(params.base_lengths[idx], params.waveguide);
        }
        auto& stage = stages[static_cast<size_t>(s - 1)];
        stage.resize(static_cast<size_t>(cells));
        for (int c = 0; c < cells; ++c) {
            DelayedInterferometer di;
            const int residue = bit_reverse(c, s - 1);
            di.long_arm.delay = period / span;
            di.long_arm.phase = -2.0 * kPi * residue / span;
            di.common_base_delay = base;
            if (!ideal) {
                di.coupler_in_kappa = params.coupler_in_kappa;
                di.coupler_out_kappa = params.coupler_out_kappa;
            }
            stage[static_cast<size_t>(c)] = di;
        }
    }
    if (!ideal) {
        for (const StageOverride& o : params.stage_overrides) {
            if (o.stage < 1 || o.stage > m)
                throw DomainError("stage override for stage " + std::to_string(o.stage) + " but network has stages 1.." +
                                  std::to_string(m));
            for (auto& di : stages[static_cast<size_t>(o.stage - 1)]) {
                di.long_arm.phase += o.phase_offset;
                di.long_arm.delay += o.delay_offset;
                di.long_arm.loss_db += o.arm_loss_long_db;
                di.short_arm.loss_db += o.arm_loss_short_db;
            }
        }
    }
    for (const auto& stage : stages)
        for (const auto& di : stage) di.validate();
    return stages;
}

} // namespace

void DelayedInterferometer::validate() const {
    check_arm(long_arm, "long");
    check_arm(short_arm, "short");
    if (!(common_base_delay >= 0.0)) throw DomainError("common base delay must be >= 0");
    if (!(coupler_in_kappa >= 0.0 && coupler_in_kappa <= 1.0) || !(coupler_out_kappa >= 0.0 && coupler_out_kappa <= 1.0))
        throw DomainError("coupler ratios must lie in [0,1]");
}

DiOutputs di_response(const DelayedInterferometer& di, double frequency) {
    const Transfer2x2 arms = Transfer2x2::diagonal(arm_response(di.long_arm, di.common_base_delay, frequency),
                                                   arm_response(di.short_arm, di.common_base_delay, frequency));
    const Transfer2x2 m = coupler_matrix(di.coupler_out_kappa) * arms * coupler_matrix(di.coupler_in_kappa);
    const auto out = m.apply({Amplitude{1.0}, Amplitude{}});
    return DiOutputs{out[0], out[1]};
}

bool is_power_of_two(long long n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(long long n) {
    if (n < 2 || !is_power_of_two(n)) throw DomainError("N must be a power of two >= 2, got " + std::to_string(n));
    int m = 0;
    while ((1LL << m) < n) ++m;
    return m;
}

const DelayedInterferometer& OfftNetwork::cell(int stage, int index) const {
    if (stage < 1 || stage > stage_count())
        throw NotFoundError("no stage " + std::to_string(stage) + " (valid 1.." + std::to_string(stage_count()) + ")");
    const auto& st = stages_[static_cast<size_t>(stage - 1)];
    if (index < 0 || index >= static_cast<int>(st.size()))
        throw NotFoundError("no cell " + std::to_string(index) + " in stage " + std::to_string(stage) + " (valid 0.." +
                            std::to_string(st.size() - 1) + ")");
    return st[static_cast<size_t>(index)];
}

int OfftNetwork::physical_port(int label) const {
    if (label < 0 || label >= n_points_)
        throw NotFoundError("no output X_" + std::to_string(label) + " (valid 0.." + std::to_string(n_points_ - 1) + ")");
    return label_to_physical_[static_cast<size_t>(label)];
}

int OfftNetwork::interferometer_count() const {
    int n = 0;
    for (const auto& s : stages_) n += static_cast<int>(s.size());
    return n;
}

double OfftNetwork::uniform_gain() const {
    return db_to_amplitude(fanout_loss_db_per_stage_ * stage_count()) * db_to_amplitude(sampler_loss_db_);
}

double OfftNetwork::common_latency() const {
    double t = 0.0;
    for (const auto& s : stages_) t += s.front().common_base_delay;
    return t;
}

OfftNetwork OfftNetwork::with_cell(int stage, int index,
                                   const std::function<void(DelayedInterferometer&)>& edit) const {
    (void)cell(stage, index);
    OfftNetwork copy = *this;
    auto& di = copy.stages_[static_cast<size_t>(stage - 1)][static_cast<size_t>(index)];
    edit(di);
    di.validate();
    return copy;
}

OfftNetwork OfftNetwork::with_stage(int stage, const std::function<void(DelayedInterferometer&)>& edit) const {
    (void)cell(stage, 0);
    OfftNetwork copy = *this;
    for (auto& di : copy.stages_[static_cast<size_t>(stage - 1)]) {
        edit(di);
        di.validate();
    }
    return copy;
}

OfftNetwork build_offt(int n_points, double system_frequency, const ComponentParams& params) {
    const int m = log2_exact(n_points);
    if (!(system_frequency > 0.0)) throw DomainError("system frequency must be > 0");
    params.waveguide.validate();
    if (!(params.fanout_loss_db_per_stage >= 0.0) || !(params.sampler_loss_db >= 0.0))
        throw DomainError("fan-out and sampler losses must be >= 0 dB");

    OfftNetwork net;
    net.n_points_ = n_points;
    net.system_frequency_ = system_frequency;
    net.fanout_loss_db_per_stage_ = params.fanout_loss_db_per_stage;
    net.sampler_loss_db_ = params.sampler_loss_db;
    net.waveguide_ = params.waveguide;
    net.stages_ = design_cells(n_points, system_frequency, params, false);

    // Label the outputs from the ideal design's impulse responses: port p
    // responds as c_p * W^(k n), which identifies bin k and the constant c_p.
    const auto ideal = design_cells(n_points, system_frequency, params, true);
    const size_t n = static_cast<size_t>(n_points);
    std::vector<Amplitude> delta(n);
    delta[0] = 1.0;
    const auto impulse = propagate(ideal, net.sample_period(), delta, 1.0);

    net.port_map_.assign(n, -1);
    net.label_to_physical_.assign(n, -1);
    net.output_trim_.assign(n, 0.0);
    for (size_t p = 0; p < n; ++p) {
        std::vector<Amplitude> conj_h(n);
        std::transform(impulse[p].begin(), impulse[p].end(), conj_h.begin(), [](Amplitude a) { return std::conj(a); });
        const auto spectrum = dft(conj_h);
        const auto best = std::max_element(spectrum.begin(), spectrum.end(),
                                           [](Amplitude a, Amplitude b) { return std::abs(a) < std::abs(b); });
        const int label = static_cast<int>(best - spectrum.begin());
        if (net.label_to_physical_[static_cast<size_t>(label)] != -1)
            throw std::logic_error("build_offt: two ports resolved to bin " + std::to_string(label));
        net.port_map_[p] = label;
        net.label_to_physical_[static_cast<size_t>(label)] = static_cast<int>(p);
        net.output_trim_[p] = -std::arg(impulse[p][0]);
    }
    (void)m;
    return net;
}

Amplitude port_response(const OfftNetwork& net, int label, double frequency) {
    const int p = net.physical_port(label);
    const int m = net.stage_count();
    Amplitude amp = net.uniform_gain() * std::polar(1.0, net.output_trim()[static_cast<size_t>(p)]);
    for (int s = 1; s <= m; ++s) {
        const int cell = p >> (m - s + 1);
        const int branch = (p >> (m - s)) & 1;
        const DiOutputs out = di_response(net.cell(s, cell), frequency);
        amp *= branch == 0 ? out.cross : out.bar;
    }
    return amp;
}

FrequencyResponse frequency_response(const OfftNetwork& net, std::span<const double> frequencies) {
    if (frequencies.empty()) throw DomainError("frequency_response: empty frequency list");
    FrequencyResponse r;
    r.frequencies.assign(frequencies.begin(), frequencies.end());
    r.per_port.resize(static_cast<size_t>(net.n_points()));
    for (int k = 0; k < net.n_points(); ++k) {
        auto& row = r.per_port[static_cast<size_t>(k)];
        row.reserve(frequencies.size());
        for (double f : frequencies) row.push_back(port_response(net, k, f));
    }
    return r;
}

std::vector<double> linear_grid(double lo, double hi, size_t points) {
    if (points == 0) throw DomainError("grid needs at least one point");
    if (points == 1) return {lo};
    std::vector<double> g(points);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (size_t i = 0; i < points; ++i) g[i] = lo + step * static_cast<double>(i);
    g.back() = hi;
    return g;
}

TimeTrace time_simulate(const OfftNetwork& net, std::span<const Amplitude> input, PortOrder order) {
    const auto n = static_cast<size_t>(net.n_points());
    if (input.size() < n)
        throw DomainError("time_simulate: input has " + std::to_string(input.size()) + " samples, need at least " +
                          std::to_string(n));
    auto streams = propagate(net.stages(), net.sample_period(), input,
                             db_to_amplitude(net.fanout_loss_db_per_stage() * net.stage_count()));
    const double sampler = db_to_amplitude(net.sampler_loss_db());
    for (size_t p = 0; p < n; ++p) {
        const Amplitude g = sampler * std::polar(1.0, net.output_trim()[p]);
        for (auto& v : streams[p]) v *= g;
    }
    TimeTrace trace;
    trace.sample_period = net.sample_period();
    if (order == PortOrder::physical) {
        trace.per_port = std::move(streams);
    } else {
        trace.per_port.resize(n);
        for (size_t k = 0; k < n; ++k)
            trace.per_port[k] = std::move(streams[static_cast<size_t>(net.physical_port(static_cast<int>(k)))]);
    }
    return trace;
}

std::vector<std::vector<Amplitude>> sample_outputs(const TimeTrace& trace, int frame_offset) {
    const size_t n = trace.per_port.size();
    if (frame_offset < 0 || static_cast<size_t>(frame_offset) >= n)
        throw DomainError("frame offset must lie in [0, " + std::to_string(n) + ")");
    std::vector<std::vector<Amplitude>> frames;
    if (n == 0) return frames;
    const size_t length = trace.per_port.front().size();
    for (size_t idx = static_cast<size_t>(frame_offset) + n - 1; idx < length; idx += n) {
        std::vector<Amplitude> frame(n);
        for (size_t p = 0; p < n; ++p) frame[p] = trace.per_port[p][idx];
        frames.push_back(std::move(frame));
    }
    return frames;
}

double peak_frequency(const OfftNetwork& net, int label, double f_lo, double f_hi, double resolution) {
    if (!(f_lo < f_hi)) throw DomainError("peak_frequency: need f_lo < f_hi");
    if (!(resolution > 0.0)) throw DomainError("peak_frequency: resolution must be > 0");
    (void)net.physical_port(label);
    const auto points = static_cast<size_t>(std::floor((f_hi - f_lo) / resolution)) + 1;
    auto pw = [&](double f) { return power(port_response(net, label, f)); };
    // Refine well past resolution/100: the flat top limits golden-section accuracy anyway.
    const Extremum e = grid_refine_max(pw, f_lo, f_hi, std::max<size_t>(points, 3), resolution * 1e-6);
    if (!(e.value > 1e-24))
        throw DegenerateError("peak_frequency: output X_" + std::to_string(label) + " carries no power on the range");
    return e.x;
}

std::vector<double> port_peak_frequencies(const OfftNetwork& net, double resolution) {
    const double span = net.n_points() * net.system_frequency();
    std::vector<double> peaks(static_cast<size_t>(net.n_points()));
    for (int k = 0; k < net.n_points(); ++k) {
        double f = peak_frequency(net, k, 0.0, span, resolution);
        if (f >= span - resolution * 1e-3) f -= span;
        peaks[static_cast<size_t>(k)] = std::max(f, 0.0);
    }
    return peaks;
}

} // namespace offt
