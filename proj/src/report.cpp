#include "offt/report.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace offt {

namespace {

using nlohmann::ordered_json;

ordered_json json_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

ordered_json json_metric(const Metric& m) {
    if (m.is_unbounded()) return "inf";
    if (m.is_degenerate()) return "degenerate";
    return json_number(m.value);
}

std::string ratio_db(const Metric& m) {
    if (m.is_unbounded()) return "inf";
    if (m.is_degenerate()) return "degenerate";
    return format_number(10.0 * std::log10(m.value));
}

const char* parameter_name(SweepParameter p) {
    switch (p) {
    case SweepParameter::phase:
        return "phase_rad";
    case SweepParameter::delay:
        return "delay_s";
    case SweepParameter::loss:
        return "loss_db";
    }
    return "value";
}

} // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string format_metric(const Metric& m) {
    if (m.is_unbounded()) return "inf";
    if (m.is_degenerate()) return "degenerate";
    return format_number(m.value);
}

double power_db(double linear) {
    if (linear <= 0.0) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(linear);
}

std::string render_response(const FrequencyResponse& response, std::span<const int> labels, OutputFormat format) {
    if (format == OutputFormat::json) {
        ordered_json j;
        j["frequencies_hz"] = response.frequencies;
        ordered_json ports = ordered_json::array();
        for (int k : labels) {
            const auto& h = response.per_port[static_cast<size_t>(k)];
            ordered_json port;
            port["label"] = "X" + std::to_string(k);
            ordered_json lin = ordered_json::array(), db = ordered_json::array(), amp = ordered_json::array();
            for (const Amplitude& a : h) {
                lin.push_back(json_number(power(a)));
                db.push_back(json_number(power_db(power(a))));
                amp.push_back({{"re", a.real()}, {"im", a.imag()}});
            }
            port["power_linear"] = std::move(lin);
            port["power_db"] = std::move(db);
            port["amplitude"] = std::move(amp);
            ports.push_back(std::move(port));
        }
        j["ports"] = std::move(ports);
        return j.dump(1) + "\n";
    }
    std::ostringstream out;
    out << "frequency_hz";
    for (int k : labels) out << ",X" << k << "_linear,X" << k << "_db";
    out << '\n';
    for (size_t i = 0; i < response.frequencies.size(); ++i) {
        out << format_number(response.frequencies[i]);
        for (int k : labels) {
            const double p = power(response.per_port[static_cast<size_t>(k)][i]);
            out << ',' << format_number(p) << ',' << format_number(power_db(p));
        }
        out << '\n';
    }
    return out.str();
}

std::string render_sweep(const SweepResult& r, OutputFormat format) {
    const size_t n_ports = r.probe_frequencies.size();
    if (format == OutputFormat::json) {
        ordered_json j;
        j["name"] = r.spec.name;
        j["parameter"] = parameter_name(r.spec.parameter);
        j["target_port"] = r.spec.target_port;
        j["paired_port"] = r.spec.paired_port;
        j["probe_frequencies_hz"] = r.probe_frequencies;
        ordered_json rows = ordered_json::array();
        for (size_t i = 0; i < r.parameter_values.size(); ++i) {
            ordered_json row;
            row["value"] = r.parameter_values[i];
            ordered_json lin = ordered_json::array(), db = ordered_json::array();
            for (size_t k = 0; k < n_ports; ++k) {
                lin.push_back(json_number(r.port_power[i][k]));
                db.push_back(json_number(power_db(r.port_power[i][k])));
            }
            row["power_linear"] = std::move(lin);
            row["power_db"] = std::move(db);
            row["degradation_linear"] = json_number(r.degradation[i]);
            row["snr"] = json_metric(r.snr[i]);
            row["mismatch"] = json_metric(r.mismatch[i]);
            row["fom"] = json_metric(r.fom[i]);
            row["crosstalk_db"] = json_number(power_db(r.crosstalk[i]));
            if (r.cell_extinction) {
                row["cell_extinction_ratio"] = json_metric((*r.cell_extinction)[i]);
                row["system_extinction_ratio"] = json_metric((*r.system_extinction)[i]);
            }
            rows.push_back(std::move(row));
        }
        j["rows"] = std::move(rows);
        return j.dump(1) + "\n";
    }
    std::ostringstream out;
    out << parameter_name(r.spec.parameter);
    for (size_t k = 0; k < n_ports; ++k) out << ",X" << k << "_linear,X" << k << "_db";
    out << ",degradation_linear,degradation_db,snr,snr_db,mismatch,fom,fom_db,crosstalk_linear,crosstalk_db";
    if (r.cell_extinction)
        out << ",cell_extinction_ratio,cell_extinction_ratio_db,system_extinction_ratio,system_extinction_ratio_db";
    out << '\n';
    for (size_t i = 0; i < r.parameter_values.size(); ++i) {
        out << format_number(r.parameter_values[i]);
        for (size_t k = 0; k < n_ports; ++k)
            out << ',' << format_number(r.port_power[i][k]) << ',' << format_number(power_db(r.port_power[i][k]));
        out << ',' << format_number(r.degradation[i]) << ',' << format_number(power_db(r.degradation[i])) << ','
            << format_metric(r.snr[i]) << ',' << ratio_db(r.snr[i]) << ',' << format_metric(r.mismatch[i]) << ','
            << format_metric(r.fom[i]) << ',' << ratio_db(r.fom[i]) << ',' << format_number(r.crosstalk[i]) << ','
            << format_number(power_db(r.crosstalk[i]));
        if (r.cell_extinction) {
            const Metric& c = (*r.cell_extinction)[i];
            const Metric& y = (*r.system_extinction)[i];
            out << ',' << format_metric(c) << ',' << ratio_db(c) << ',' << format_metric(y) << ',' << ratio_db(y);
        }
        out << '\n';
    }
    return out.str();
}

std::string render_scaling_table(std::span<const ScalingRow> rows, OutputFormat format) {
    if (format == OutputFormat::json) {
        ordered_json a = ordered_json::array();
        for (const auto& r : rows)
            a.push_back({{"n", r.n_points},
                         {"path_loss_db", r.path_loss_db},
                         {"input_power_w", r.input_power_w},
                         {"area_mm2", r.area_mm2},
                         {"offt_fom", r.offt_fom},
                         {"gpu_fom", r.gpu_fom},
                         {"ratio", r.ratio}});
        return a.dump(1) + "\n";
    }
    std::ostringstream out;
    out << "n,path_loss_db,input_power_w,area_mm2,offt_fom,gpu_fom,ratio\n";
    for (const auto& r : rows)
        out << r.n_points << ',' << format_number(r.path_loss_db) << ',' << format_number(r.input_power_w) << ','
            << format_number(r.area_mm2) << ',' << format_number(r.offt_fom) << ',' << format_number(r.gpu_fom)
            << ',' << format_number(r.ratio) << '\n';
    return out.str();
}

std::string render_scaling_report(const Crossover& crossover, int n_limit, const CapacityLine& capacity,
                                  OutputFormat format) {
    if (format == OutputFormat::json) {
        ordered_json j;
        if (crossover.n_points) {
            j["crossover"] = {{"n", *crossover.n_points}, {"continuous_n", *crossover.continuous}};
        } else {
            j["crossover"] = "none";
            j["searched_up_to_n"] = n_limit;
        }
        j["capacity"] = {{"bits_per_symbol", capacity.bits_per_symbol},
                         {"bandwidth_hz", capacity.bandwidth},
                         {"single_channel_bps", capacity.single_channel},
                         {"n_channels", capacity.n_channels},
                         {"all_channels_bps", capacity.all_channels}};
        return j.dump(1) + "\n";
    }
    std::ostringstream out;
    if (crossover.n_points)
        out << "crossover: OFFT FOM <= GPU FOM from N = " << *crossover.n_points
            << " (continuous estimate N = " << format_number(*crossover.continuous) << ")\n";
    else
        out << "crossover: no crossover observed up to N = " << n_limit << '\n';
    out << "capacity: " << capacity.bits_per_symbol << " bit/symbol x " << format_number(capacity.bandwidth / 1e9)
        << " GHz = " << format_number(capacity.single_channel / 1e9) << " Gbps per channel, "
        << format_number(capacity.all_channels / 1e9) << " Gbps for " << capacity.n_channels << " channels\n";
    return out.str();
}

} // namespace offt
