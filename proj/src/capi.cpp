#include "offt/offt.h"

#include "offt/config.hpp"
#include "offt/errors.hpp"
#include "offt/network.hpp"
#include "offt/report.hpp"
#include "offt/scaling.hpp"
#include "offt/sensitivity.hpp"
#include "offt/thermal.hpp"
#include "offt/verify.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <optional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

struct offt_config {
    offt::RunConfig value;
};

struct offt_network {
    offt::OfftNetwork value;
};

struct offt_sweep_result {
    offt::SweepResult value;
};

namespace {

thread_local std::string g_last_error;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NullArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

offt_status fail(offt_status status, const char* message) {
    g_last_error = message;
    return status;
}

template <class F>
offt_status guarded(F&& body) {
    try {
        body();
        return OFFT_OK;
    } catch (const NullArgument& e) {
        return fail(OFFT_ERR_INVALID_ARGUMENT, e.what());
    } catch (const offt::DomainError& e) {
        return fail(OFFT_ERR_DOMAIN, e.what());
    } catch (const offt::ConfigError& e) {
        return fail(OFFT_ERR_CONFIG, e.what());
    } catch (const offt::NotFoundError& e) {
        return fail(OFFT_ERR_NOT_FOUND, e.what());
    } catch (const offt::DegenerateError& e) {
        return fail(OFFT_ERR_DEGENERATE, e.what());
    } catch (const IoError& e) {
        return fail(OFFT_ERR_IO, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(OFFT_ERR_DOMAIN, e.what());
    } catch (const std::exception& e) {
        return fail(OFFT_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(OFFT_ERR_INTERNAL, "unknown error");
    }
}

template <class T>
void require(const T* p, const char* what) {
    if (p == nullptr) throw NullArgument(std::string(what) + " must not be null");
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

offt::OutputFormat to_format(offt_format f) {
    switch (f) {
    case OFFT_FORMAT_CSV:
        return offt::OutputFormat::csv;
    case OFFT_FORMAT_JSON:
        return offt::OutputFormat::json;
    }
    throw NullArgument("unknown output format");
}

offt::HeaterSection heater(double length, double wavelength, double dn_dT) {
    offt::HeaterSection h;
    h.length = length;
    h.ctx.wavelength = wavelength;
    h.ctx.dn_dT = dn_dT;
    return h;
}

} // namespace

extern "C" {

const char* offt_last_error(void) { return g_last_error.c_str(); }

const char* offt_status_name(offt_status status) {
    switch (status) {
    case OFFT_OK:
        return "ok";
    case OFFT_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case OFFT_ERR_DOMAIN:
        return "domain error";
    case OFFT_ERR_CONFIG:
        return "config error";
    case OFFT_ERR_NOT_FOUND:
        return "not found";
    case OFFT_ERR_DEGENERATE:
        return "degenerate";
    case OFFT_ERR_IO:
        return "i/o error";
    case OFFT_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

void offt_string_free(char* s) { std::free(s); }

offt_status offt_config_default(offt_config** out) {
    return guarded([&] {
        require(out, "out");
        *out = new offt_config{offt::default_config()};
    });
}

offt_status offt_config_parse(const char* json_text, offt_config** out) {
    return guarded([&] {
        require(json_text, "json_text");
        require(out, "out");
        *out = new offt_config{offt::parse_config(json_text)};
    });
}

offt_status offt_config_load(const char* path, offt_config** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError(std::string("cannot read config file '") + path + "'");
        std::ostringstream text;
        text << in.rdbuf();
        try {
            *out = new offt_config{offt::parse_config(text.str())};
        } catch (const offt::ConfigError& e) {
            throw offt::ConfigError(std::string(path) + ": " + e.what());
        }
    });
}

void offt_config_destroy(offt_config* config) { delete config; }

offt_status offt_config_output_directory(const offt_config* config, char** out) {
    return guarded([&] {
        require(config, "config");
        require(out, "out");
        *out = dup_string(config->value.output.directory);
    });
}

offt_status offt_config_set_output_directory(offt_config* config, const char* directory) {
    return guarded([&] {
        require(config, "config");
        require(directory, "directory");
        if (*directory == '\0') throw offt::DomainError("output directory must not be empty");
        config->value.output.directory = directory;
    });
}

offt_status offt_config_output_format(const offt_config* config, offt_format* out) {
    return guarded([&] {
        require(config, "config");
        require(out, "out");
        *out = config->value.output.format == offt::OutputFormat::json ? OFFT_FORMAT_JSON : OFFT_FORMAT_CSV;
    });
}

offt_status offt_config_grid(const offt_config* config, double* f_lo, double* f_hi, size_t* points) {
    return guarded([&] {
        require(config, "config");
        require(f_lo, "f_lo");
        require(f_hi, "f_hi");
        require(points, "points");
        const auto& g = config->value.network.grid;
        *f_lo = g.f_lo;
        *f_hi = g.f_hi;
        *points = g.points;
    });
}

offt_status offt_config_scaling_n_max(const offt_config* config, int* out) {
    return guarded([&] {
        require(config, "config");
        require(out, "out");
        *out = config->value.scaling.n_max;
    });
}

offt_status offt_config_thermal(const offt_config* config, double* length, double* wavelength, double* dn_dT) {
    return guarded([&] {
        require(config, "config");
        require(length, "length");
        require(wavelength, "wavelength");
        require(dn_dT, "dn_dT");
        const auto& h = config->value.thermal;
        *length = h.length;
        *wavelength = h.ctx.wavelength;
        *dn_dT = h.ctx.dn_dT;
    });
}

offt_status offt_config_sweep_names(const offt_config* config, char** out) {
    return guarded([&] {
        require(config, "config");
        require(out, "out");
        std::string names;
        for (const auto& s : config->value.sweeps) names += s.name + "\n";
        *out = dup_string(names);
    });
}

offt_status offt_network_build(const offt_config* config, int n_override, offt_network** out) {
    return guarded([&] {
        require(config, "config");
        require(out, "out");
        std::optional<int> n;
        if (n_override != 0) n = n_override;
        *out = new offt_network{offt::build_network(config->value, n)};
    });
}

offt_status offt_network_create_ideal(int n_points, double system_frequency, offt_network** out) {
    return guarded([&] {
        require(out, "out");
        *out = new offt_network{offt::build_offt(n_points, system_frequency)};
    });
}

void offt_network_destroy(offt_network* net) { delete net; }

offt_status offt_network_n_points(const offt_network* net, int* out) {
    return guarded([&] {
        require(net, "net");
        require(out, "out");
        *out = net->value.n_points();
    });
}

offt_status offt_network_port_map(const offt_network* net, int* out, size_t length) {
    return guarded([&] {
        require(net, "net");
        require(out, "out");
        const auto& map = net->value.port_map();
        if (length < map.size()) throw NullArgument("port map buffer holds fewer than n_points entries");
        std::copy(map.begin(), map.end(), out);
    });
}

offt_status offt_network_response(const offt_network* net, int label, const double* frequencies, size_t count,
                                  double* re, double* im) {
    return guarded([&] {
        require(net, "net");
        if (count == 0) return;
        require(frequencies, "frequencies");
        require(re, "re");
        require(im, "im");
        for (size_t i = 0; i < count; ++i) {
            const offt::Amplitude h = offt::port_response(net->value, label, frequencies[i]);
            re[i] = h.real();
            im[i] = h.imag();
        }
    });
}

offt_status offt_network_peak_frequency(const offt_network* net, int label, double f_lo, double f_hi,
                                        double resolution, double* out) {
    return guarded([&] {
        require(net, "net");
        require(out, "out");
        *out = offt::peak_frequency(net->value, label, f_lo, f_hi, resolution);
    });
}

offt_status offt_network_time_simulate(const offt_network* net, const double* in_re, const double* in_im,
                                       size_t length, double* out_re, double* out_im) {
    return guarded([&] {
        require(net, "net");
        require(in_re, "in_re");
        require(in_im, "in_im");
        require(out_re, "out_re");
        require(out_im, "out_im");
        std::vector<offt::Amplitude> input(length);
        for (size_t i = 0; i < length; ++i) input[i] = {in_re[i], in_im[i]};
        const offt::TimeTrace trace = offt::time_simulate(net->value, input);
        for (size_t k = 0; k < trace.per_port.size(); ++k)
            for (size_t i = 0; i < length; ++i) {
                out_re[k * length + i] = trace.per_port[k][i].real();
                out_im[k * length + i] = trace.per_port[k][i].imag();
            }
    });
}

offt_status offt_network_crosstalk_tolerance(const offt_network* net, double threshold_db, int target_port,
                                             double probe_frequency, double* out) {
    return guarded([&] {
        require(net, "net");
        require(out, "out");
        double probe = probe_frequency;
        if (!(probe > 0.0)) {
            (void)net->value.physical_port(target_port);
            probe = offt::port_peak_frequencies(net->value)[static_cast<size_t>(target_port)];
        }
        *out = offt::crosstalk_tolerance(net->value, threshold_db, target_port, probe);
    });
}

offt_status offt_render_response(const offt_config* config, const offt_network* net, const int* labels,
                                 size_t label_count, double f_lo, double f_hi, size_t points, char** out) {
    return guarded([&] {
        require(config, "config");
        require(net, "net");
        require(out, "out");
        std::vector<int> selected;
        if (labels == nullptr) {
            selected.resize(static_cast<size_t>(net->value.n_points()));
            std::iota(selected.begin(), selected.end(), 0);
        } else {
            selected.assign(labels, labels + label_count);
            for (int k : selected) (void)net->value.physical_port(k);
        }
        const std::vector<double> grid = offt::linear_grid(f_lo, f_hi, points);
        const offt::FrequencyResponse r = offt::frequency_response(net->value, grid);
        *out = dup_string(offt::render_response(r, selected, config->value.output.format));
    });
}

offt_status offt_sweep_run(const offt_config* config, const offt_network* net, const char* name,
                           offt_sweep_result** out) {
    return guarded([&] {
        require(config, "config");
        require(net, "net");
        require(name, "name");
        require(out, "out");
        const offt::SweepSpec& spec = config->value.sweep(name);
        *out = new offt_sweep_result{offt::run_sweep(net->value, spec)};
    });
}

void offt_sweep_result_destroy(offt_sweep_result* result) { delete result; }

offt_status offt_sweep_point_count(const offt_sweep_result* result, size_t* out) {
    return guarded([&] {
        require(result, "result");
        require(out, "out");
        *out = result->value.parameter_values.size();
    });
}

offt_status offt_sweep_render(const offt_sweep_result* result, offt_format format, char** out) {
    return guarded([&] {
        require(result, "result");
        require(out, "out");
        *out = dup_string(offt::render_sweep(result->value, to_format(format)));
    });
}

offt_status offt_render_scaling(const offt_config* config, int n_max, char** table, char** report) {
    return guarded([&] {
        require(config, "config");
        require(table, "table");
        require(report, "report");
        const offt::RunConfig& c = config->value;
        const offt::ScalingConfig& s = c.scaling;
        const double fs = c.network.system_frequency;
        const auto rows = offt::scaling_table(n_max, s.budget, s.area, s.gpu, fs);
        const offt::Crossover cross = offt::crossover_n(s.budget, s.area, s.gpu, fs, n_max);
        offt::CapacityLine cap;
        cap.bits_per_symbol = s.bits_per_symbol;
        cap.bandwidth = s.bandwidth;
        cap.n_channels = c.network.n_points;
        cap.single_channel = offt::channel_capacity(s.bits_per_symbol, s.bandwidth, 1);
        cap.all_channels = offt::channel_capacity(s.bits_per_symbol, s.bandwidth, cap.n_channels);
        std::string t = offt::render_scaling_table(rows, c.output.format);
        std::string r = offt::render_scaling_report(cross, n_max, cap, c.output.format);
        *table = dup_string(t);
        try {
            *report = dup_string(r);
        } catch (...) {
            std::free(*table);
            *table = nullptr;
            throw;
        }
    });
}

offt_status offt_phase_to_temperature(double dphi, double length, double wavelength, double dn_dT, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = offt::phase_to_temperature(dphi, heater(length, wavelength, dn_dT));
    });
}

offt_status offt_temperature_to_phase(double dT, double length, double wavelength, double dn_dT, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = offt::temperature_to_phase(dT, heater(length, wavelength, dn_dT));
    });
}

offt_status offt_channel_capacity(int bits_per_symbol, double bandwidth, int n_channels, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = offt::channel_capacity(bits_per_symbol, bandwidth, n_channels);
    });
}

offt_status offt_verify(const offt_network* net, int trials, uint64_t seed, double threshold,
                        offt_verify_summary* out, double* worst_re, double* worst_im) {
    return guarded([&] {
        require(net, "net");
        require(out, "out");
        const offt::VerifyReport r = offt::verify_dft_equivalence(net->value, trials, seed, threshold);
        out->n_points = r.n_points;
        out->trials = r.trials;
        out->threshold = r.threshold;
        out->max_residual = r.max_residual;
        out->mean_residual = r.mean_residual;
        out->permutation_consistent = r.permutation_consistent ? 1 : 0;
        out->passed = r.passed ? 1 : 0;
        for (size_t i = 0; i < r.worst_window.size(); ++i) {
            if (worst_re != nullptr) worst_re[i] = r.worst_window[i].real();
            if (worst_im != nullptr) worst_im[i] = r.worst_window[i].imag();
        }
    });
}

} // extern "C"
