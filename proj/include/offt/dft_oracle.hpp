#pragma once

#include "offt/photonic.hpp"

#include <span>
#include <vector>

namespace offt {

/// Direct O(N^2) forward DFT, X_k = sum_n x_n exp(-j 2 pi k n / N).
/// This is the reference every network result is checked against; keep it naive.
std::vector<Amplitude> dft(std::span<const Amplitude> x);

struct PortMatch {
    std::vector<int> permutation;  // permutation[p] = oracle bin matched to network output p
    double global_phase = 0.0;     // rad; N * outputs[p] ~= exp(j phase) * bins[permutation[p]]
    double residual = 0.0;         // max abs difference at the reported phase
};

/// Best bijection + single global phase between network outputs (scaled by N)
/// and oracle bins. Exhaustive over permutations for N <= 8, greedy magnitude
/// matching for larger N. The residual is reported as found; callers decide
/// whether it is acceptable.
PortMatch match_ports(std::span<const Amplitude> network_outputs,
                      std::span<const Amplitude> oracle_bins);

/// Residual of a fixed permutation with its least-squares global phase.
PortMatch score_permutation(std::span<const Amplitude> network_outputs,
                            std::span<const Amplitude> oracle_bins,
                            std::span<const int> permutation);

} // namespace offt
