#pragma once

#include <optional>
#include <vector>

namespace offt {

/// Insertion losses and photodetector constants of the scaling comparison.
struct LossBudget {
    double coupler_db = 0.9;
    double ybranch_db = 3.5;
    double modulator_db = 3.5;
    double spiral_first_stage_db = 0.7;  // the T/2 spiral; deeper stages scale with length
    double pd_power_w = 2.4e-6;
    double pd_min_optical_w = 250e-6;

    void validate() const;
};

enum class AreaMode { active, passive };

struct AreaModel {
    double spiral_area_T_mm2 = 3.9e-3;  // spiral holding a full period T of delay
    double base_area_n4_mm2 = 0.012;
    double base_area_n4_active_mm2 = 0.019;
    AreaMode mode = AreaMode::active;
    // When set, spiral areas shrink with 1/f_s relative to the 10 GHz geometry.
    bool area_scales_with_fs = false;

    void validate() const;
};

/// Electronic baseline. Defaults: NVIDIA Tesla P100 (PCIe) datasheet,
/// 9.3 TFLOP/s FP32, 250 W board power, 610 mm^2 GP100 die.
struct GpuBaseline {
    double flops = 9.3e12;
    double power_w = 250.0;
    double area_mm2 = 610.0;

    void validate() const;
};

inline constexpr double kReferenceSystemFrequency = 10e9;

/// Worst-path loss: log2 N y-branches, two couplers per traversed stage,
/// one spiral per stage with loss halving stage to stage, one modulator.
double path_insertion_loss_db(int n_points, const LossBudget& budget);

/// Laser power that lands pd_min_optical_w on the photodetector after the path loss.
double required_input_power(int n_points, const LossBudget& budget);

/// Fixed overhead plus spiral area of all N-1 cells (linear in cell delay),
/// calibrated so area(4) equals the selected N = 4 reference.
double area_scaling(int n_points, const AreaModel& area, double system_frequency = kReferenceSystemFrequency);

/// One N-point result per frame T = 1/f_s, normalised by optical + PD power and area.
double offt_figure_of_merit(int n_points, const LossBudget& budget, const AreaModel& area, double system_frequency);

/// (flops / 5 N log2 N) / (power * area)
double gpu_figure_of_merit(int n_points, const GpuBaseline& gpu);

int interferometer_count(int n_points);
int coupler_count(int n_points);

struct ScalingRow {
    int n_points = 0;
    double path_loss_db = 0.0;
    double input_power_w = 0.0;
    double area_mm2 = 0.0;
    double offt_fom = 0.0;
    double gpu_fom = 0.0;
    double ratio = 0.0;  // offt / gpu
};

std::vector<ScalingRow> scaling_table(int n_max, const LossBudget& budget, const AreaModel& area,
                                      const GpuBaseline& gpu, double system_frequency);

struct Crossover {
    std::optional<int> n_points;      // smallest power of two with OFFT FOM <= GPU FOM
    std::optional<double> continuous;  // log-log interpolated crossing
};

inline constexpr int kCrossoverSearchLimit = 1 << 20;

/// Throws DegenerateError if the OFFT does not lead at N = 2.
Crossover crossover_n(const LossBudget& budget, const AreaModel& area, const GpuBaseline& gpu, double system_frequency,
                      int n_limit = kCrossoverSearchLimit);

/// bits_per_symbol * bandwidth * n_channels
double channel_capacity(int bits_per_symbol, double bandwidth, int n_channels);

} // namespace offt
