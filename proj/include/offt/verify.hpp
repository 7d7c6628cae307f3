#pragma once

#include "offt/network.hpp"

#include <cstdint>
#include <vector>

namespace offt {

struct VerifyReport {
    int n_points = 0;
    int trials = 0;
    double threshold = 0.0;
    double max_residual = 0.0;
    double mean_residual = 0.0;
    std::vector<Amplitude> worst_window;  // the input window with the largest residual
    std::vector<int> permutation;         // matched permutation of the worst trial
    bool permutation_consistent = true;   // every trial matched port_map()
    bool passed = false;
};

/// Feeds `trials` seeded random complex windows through the time-domain
/// simulator, gates one frame and compares it against the oracle DFT after
/// port matching. Outputs are divided by the network's uniform gain first.
VerifyReport verify_dft_equivalence(const OfftNetwork& net, int trials, std::uint64_t seed,
                                    double threshold = 1e-10);

} // namespace offt
