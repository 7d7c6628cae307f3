#include "offt/verify.hpp"

#include "offt/dft_oracle.hpp"
#include "offt/errors.hpp"

#include <random>

namespace offt {

VerifyReport verify_dft_equivalence(const OfftNetwork& net, int trials, std::uint64_t seed, double threshold) {
    if (trials < 1) throw DomainError("trials must be >= 1");
    if (!(threshold > 0.0)) throw DomainError("threshold must be > 0");
    const auto n = static_cast<size_t>(net.n_points());
    const double gain = net.uniform_gain();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);

    VerifyReport report;
    report.n_points = net.n_points();
    report.trials = trials;
    report.threshold = threshold;
    double sum = 0.0;
    for (int t = 0; t < trials; ++t) {
        std::vector<Amplitude> window(n);
        for (auto& w : window) w = {uniform(rng), uniform(rng)};
        // The output at sample m transforms (x[m], x[m-1], ...), so the window is fed reversed.
        std::vector<Amplitude> input(n);
        for (size_t i = 0; i < n; ++i) input[n - 1 - i] = window[i];

        const TimeTrace trace = time_simulate(net, input, PortOrder::physical);
        std::vector<Amplitude> outputs = sample_outputs(trace, 0).front();
        for (auto& o : outputs) o /= gain;

        const PortMatch m = match_ports(outputs, dft(window));
        if (m.permutation != net.port_map()) report.permutation_consistent = false;
        sum += m.residual;
        if (t == 0 || m.residual > report.max_residual) {
            report.max_residual = m.residual;
            report.worst_window = window;
            report.permutation = m.permutation;
        }
    }
    report.mean_residual = sum / trials;
    report.passed = report.max_residual < threshold && report.permutation_consistent;
    return report;
}

} // namespace offt
