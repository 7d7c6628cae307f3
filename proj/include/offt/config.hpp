#pragma once

#include "offt/network.hpp"
#include "offt/scaling.hpp"
#include "offt/sensitivity.hpp"
#include "offt/thermal.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace offt {

struct GridSpec {
    double f_lo = 0.0;
    double f_hi = 40e9;
    size_t points = 4001;
};

struct NetworkConfig {
    int n_points = 4;
    double system_frequency = 10e9;
    ComponentParams params{};
    GridSpec grid{};
};

struct ScalingConfig {
    LossBudget budget{};
    AreaModel area{};
    GpuBaseline gpu{};
    int n_max = 1024;
    int bits_per_symbol = 8;  // QAM-256
    double bandwidth = 10e9;
};

enum class OutputFormat { csv, json };

struct OutputConfig {
    std::string directory = "out";
    OutputFormat format = OutputFormat::csv;
};

struct RunConfig {
    NetworkConfig network{};
    std::vector<SweepSpec> sweeps;
    HeaterSection thermal{};
    ScalingConfig scaling{};
    OutputConfig output{};

    /// Throws NotFoundError naming the available sweeps.
    const SweepSpec& sweep(std::string_view name) const;
};

/// Defaults plus the two bundled sweeps, phase_fig2a and delay_loss_fig2b.
RunConfig default_config();

/// Strict JSON parse on top of default_config(): unknown keys, wrong types and
/// out-of-domain values raise ConfigError. Sweeps given in the file replace
/// the bundled ones. Numeric angle fields also accept "pi/2", "3*pi/4", ...
RunConfig parse_config(std::string_view json_text);

/// Network of the config; n_override replaces network.n_points.
OfftNetwork build_network(const RunConfig& config, std::optional<int> n_override = std::nullopt);

std::vector<SweepSpec> bundled_sweeps();

} // namespace offt
