#include "offt/dft_oracle.hpp"

#include "offt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace offt {

std::vector<Amplitude> dft(std::span<const Amplitude> x) {
    const size_t n = x.size();
    std::vector<Amplitude> out(n);
    for (size_t k = 0; k < n; ++k) {
        Amplitude acc{};
        for (size_t i = 0; i < n; ++i) {
            // k*i reduced mod n keeps the twiddle argument small and exact.
            const double angle = -2.0 * kPi * static_cast<double>((k * i) % n) / static_cast<double>(n);
            acc += x[i] * std::polar(1.0, angle);
        }
        out[k] = acc;
    }
    return out;
}

PortMatch score_permutation(std::span<const Amplitude> outputs,
                            std::span<const Amplitude> bins,
                            std::span<const int> perm) {
    const size_t n = outputs.size();
    const double scale = static_cast<double>(n);
    Amplitude corr{};
    for (size_t p = 0; p < n; ++p)
        corr += std::conj(bins[static_cast<size_t>(perm[p])]) * outputs[p] * scale;
    const double phase = std::abs(corr) > 0.0 ? std::arg(corr) : 0.0;
    const Amplitude rot = std::polar(1.0, phase);
    double worst = 0.0;
    for (size_t p = 0; p < n; ++p)
        worst = std::max(worst, std::abs(outputs[p] * scale - rot * bins[static_cast<size_t>(perm[p])]));
    return PortMatch{std::vector<int>(perm.begin(), perm.end()), phase, worst};
}

PortMatch match_ports(std::span<const Amplitude> outputs, std::span<const Amplitude> bins) {
    if (outputs.size() != bins.size())
        throw DomainError("match_ports: vectors differ in length");
    if (outputs.empty() || std::all_of(bins.begin(), bins.end(), [](Amplitude b) { return b == Amplitude{}; }))
        throw DegenerateError("match_ports: oracle bins are all zero");

    const size_t n = outputs.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);

    if (n <= 8) {
        PortMatch best;
        best.residual = std::numeric_limits<double>::infinity();
        do {
            PortMatch m = score_permutation(outputs, bins, perm);
            if (m.residual < best.residual) best = std::move(m);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }

    // Greedy: pair each output with the unused bin of closest magnitude,
    // largest outputs first so the dominant bins are settled before the noise.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return std::abs(outputs[static_cast<size_t>(a)]) > std::abs(outputs[static_cast<size_t>(b)]);
    });
    std::vector<bool> used(n, false);
    const double scale = static_cast<double>(n);
    for (int p : order) {
        const double mag = std::abs(outputs[static_cast<size_t>(p)]) * scale;
        size_t pick = n;
        double gap = std::numeric_limits<double>::infinity();
        for (size_t k = 0; k < n; ++k) {
            if (used[k]) continue;
            const double g = std::abs(std::abs(bins[k]) - mag);
            if (g < gap) {
                gap = g;
                pick = k;
            }
        }
        used[pick] = true;
        perm[static_cast<size_t>(p)] = static_cast<int>(pick);
    }
    return score_permutation(outputs, bins, perm);
}

} // namespace offt
