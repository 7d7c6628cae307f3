#pragma once

#include "offt/config.hpp"
#include "offt/network.hpp"
#include "offt/scaling.hpp"
#include "offt/sensitivity.hpp"

#include <span>
#include <string>

namespace offt {

// Text renderers for the CLI outputs. CSV: comma separated, '.' decimal,
// header row, LF line endings. Unbounded ratios print as "inf", undefined
// ones as "degenerate"; dB of zero power prints as "-inf".

std::string format_number(double v);
std::string format_metric(const Metric& m);
double power_db(double linear);

std::string render_response(const FrequencyResponse& response, std::span<const int> labels, OutputFormat format);
std::string render_sweep(const SweepResult& result, OutputFormat format);

struct CapacityLine {
    int bits_per_symbol = 8;
    double bandwidth = 10e9;
    double single_channel = 0.0;
    double all_channels = 0.0;
    int n_channels = 4;
};

std::string render_scaling_table(std::span<const ScalingRow> rows, OutputFormat format);
std::string render_scaling_report(const Crossover& crossover, int n_limit, const CapacityLine& capacity,
                                  OutputFormat format);

} // namespace offt
