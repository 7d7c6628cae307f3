#include "offt/scaling.hpp"

#include "offt/errors.hpp"
#include "offt/network.hpp"

#include <cmath>
#include <string>

namespace offt {

void LossBudget::validate() const {
    for (double v : {coupler_db, ybranch_db, modulator_db, spiral_first_stage_db, pd_power_w, pd_min_optical_w})
        if (!(v >= 0.0)) throw DomainError("loss budget entries must be >= 0");
}

void AreaModel::validate() const {
    if (!(spiral_area_T_mm2 > 0.0 && base_area_n4_mm2 > 0.0 && base_area_n4_active_mm2 > 0.0))
        throw DomainError("area model entries must be > 0");
}

void GpuBaseline::validate() const {
    if (!(flops > 0.0 && power_w > 0.0 && area_mm2 > 0.0)) throw DomainError("GPU baseline entries must be > 0");
}

double path_insertion_loss_db(int n_points, const LossBudget& budget) {
    const int m = log2_exact(n_points);
    budget.validate();
    double spiral = 0.0;
    for (int s = 1; s <= m; ++s) spiral += budget.spiral_first_stage_db * std::ldexp(1.0, 1 - s);
    return m * budget.ybranch_db + 2.0 * m * budget.coupler_db + spiral + budget.modulator_db;
}

double required_input_power(int n_points, const LossBudget& budget) {
    return budget.pd_min_optical_w * std::pow(10.0, path_insertion_loss_db(n_points, budget) / 10.0);
}

double area_scaling(int n_points, const AreaModel& area, double system_frequency) {
    const int m = log2_exact(n_points);
    area.validate();
    if (!(system_frequency > 0.0)) throw DomainError("system frequency must be > 0");
    // Stage s: 2^(s-1) cells with delay T/2^s, so every stage holds half a T-spiral.
    const double reference_spiral = area.spiral_area_T_mm2;
    const double spiral = area.area_scales_with_fs ? reference_spiral * kReferenceSystemFrequency / system_frequency
                                                   : reference_spiral;
    const double anchor = area.mode == AreaMode::active ? area.base_area_n4_active_mm2 : area.base_area_n4_mm2;
    const double overhead = anchor - reference_spiral;  // N = 4 carries exactly one T of spiral
    if (!(overhead > 0.0)) throw DomainError("area model: N = 4 reference smaller than its spiral area");
    return overhead + 0.5 * m * spiral;
}

double offt_figure_of_merit(int n_points, const LossBudget& budget, const AreaModel& area, double system_frequency) {
    if (!(system_frequency > 0.0)) throw DomainError("system frequency must be > 0");
    const double watts = required_input_power(n_points, budget) + n_points * budget.pd_power_w;
    return system_frequency / (watts * area_scaling(n_points, area, system_frequency));
}

double gpu_figure_of_merit(int n_points, const GpuBaseline& gpu) {
    const int m = log2_exact(n_points);
    gpu.validate();
    const double ffts_per_second = gpu.flops / (5.0 * n_points * m);
    return ffts_per_second / (gpu.power_w * gpu.area_mm2);
}

int interferometer_count(int n_points) {
    (void)log2_exact(n_points);
    return n_points - 1;
}

int coupler_count(int n_points) { return 2 * interferometer_count(n_points); }

std::vector<ScalingRow> scaling_table(int n_max, const LossBudget& budget, const AreaModel& area,
                                      const GpuBaseline& gpu, double system_frequency) {
    (void)log2_exact(n_max);
    std::vector<ScalingRow> rows;
    for (int n = 2; n <= n_max; n *= 2) {
        ScalingRow r;
        r.n_points = n;
        r.path_loss_db = path_insertion_loss_db(n, budget);
        r.input_power_w = required_input_power(n, budget);
        r.area_mm2 = area_scaling(n, area, system_frequency);
        r.offt_fom = offt_figure_of_merit(n, budget, area, system_frequency);
        r.gpu_fom = gpu_figure_of_merit(n, gpu);
        r.ratio = r.offt_fom / r.gpu_fom;
        rows.push_back(r);
    }
    return rows;
}

Crossover crossover_n(const LossBudget& budget, const AreaModel& area, const GpuBaseline& gpu, double system_frequency,
                      int n_limit) {
    auto log_ratio = [&](int n) {
        return std::log(offt_figure_of_merit(n, budget, area, system_frequency)) - std::log(gpu_figure_of_merit(n, gpu));
    };
    double prev = log_ratio(2);
    if (!(prev > 0.0)) throw DegenerateError("crossover_n: the OFFT does not outperform the GPU at N = 2");
    for (int n = 4; n <= n_limit && n > 0; n *= 2) {
        const double cur = log_ratio(n);
        if (cur <= 0.0) {
            // Linear in log2 N between the bracketing powers of two.
            const double t = prev / (prev - cur);
            const double log2n = std::log2(static_cast<double>(n)) - 1.0 + t;
            return Crossover{n, std::exp2(log2n)};
        }
        prev = cur;
    }
    return {};
}

double channel_capacity(int bits_per_symbol, double bandwidth, int n_channels) {
    if (bits_per_symbol < 1) throw DomainError("bits per symbol must be >= 1");
    if (!(bandwidth >= 0.0)) throw DomainError("bandwidth must be >= 0");
    if (n_channels < 0) throw DomainError("channel count must be >= 0");
    return bits_per_symbol * bandwidth * n_channels;
}

} // namespace offt
