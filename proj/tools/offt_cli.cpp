// offt: command-line front end. Talks to the simulator only through the C API.

#include "offt/offt.h"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitVerify = 3;

constexpr const char* kOutputDirEnv = "OFFT_OUTPUT_DIR";

struct Failure {
    int exit_code;
    std::string message;
};

void check(offt_status status) {
    if (status == OFFT_OK) return;
    throw Failure{status == OFFT_ERR_IO ? kExitIo : kExitUsage,
                  std::string(offt_status_name(status)) + ": " + offt_last_error()};
}

struct ConfigDeleter {
    void operator()(offt_config* c) const { offt_config_destroy(c); }
};
struct NetworkDeleter {
    void operator()(offt_network* n) const { offt_network_destroy(n); }
};
struct SweepDeleter {
    void operator()(offt_sweep_result* r) const { offt_sweep_result_destroy(r); }
};
struct StringDeleter {
    void operator()(char* s) const { offt_string_free(s); }
};

using ConfigPtr = std::unique_ptr<offt_config, ConfigDeleter>;
using NetworkPtr = std::unique_ptr<offt_network, NetworkDeleter>;
using SweepPtr = std::unique_ptr<offt_sweep_result, SweepDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

std::string take(char* s) {
    StringPtr owned(s);
    return owned ? std::string(owned.get()) : std::string();
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

ConfigPtr load_config(const std::string& path) {
    offt_config* c = nullptr;
    check(path.empty() ? offt_config_default(&c) : offt_config_load(path.c_str(), &c));
    ConfigPtr config(c);
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0')
        check(offt_config_set_output_directory(config.get(), dir));
    return config;
}

NetworkPtr build(const offt_config* config, int n_override = 0) {
    offt_network* n = nullptr;
    check(offt_network_build(config, n_override, &n));
    return NetworkPtr(n);
}

std::string extension(const offt_config* config, bool text_report = false) {
    offt_format f = OFFT_FORMAT_CSV;
    check(offt_config_output_format(config, &f));
    if (f == OFFT_FORMAT_JSON) return ".json";
    return text_report ? ".txt" : ".csv";
}

void write_output(const offt_config* config, const std::string& stem, const std::string& ext,
                  const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path dir = take([&] {
        char* s = nullptr;
        check(offt_config_output_directory(config, &s));
        return s;
    }());
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Failure{kExitIo, "cannot create output directory '" + dir.string() + "': " + ec.message()};
    const fs::path file = dir / (stem + ext);
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw Failure{kExitIo, "cannot open '" + file.string() + "' for writing"};
    out << content;
    out.close();
    if (!out) throw Failure{kExitIo, "failed writing '" + file.string() + "'"};
    std::printf("wrote %s\n", file.string().c_str());
}

struct ResponseOptions {
    std::vector<int> ports;
    std::optional<double> f_lo;
    std::optional<double> f_hi;
    std::optional<size_t> points;
};

void cmd_response(const std::string& config_path, const ResponseOptions& o) {
    ConfigPtr config = load_config(config_path);
    NetworkPtr net = build(config.get());
    int n = 0;
    check(offt_network_n_points(net.get(), &n));
    for (int p : o.ports)
        if (p < 0 || p >= n)
            throw Failure{kExitUsage, "port index " + std::to_string(p) + " out of range; valid ports are 0.." +
                                          std::to_string(n - 1)};
    double lo = 0.0, hi = 0.0;
    size_t points = 0;
    check(offt_config_grid(config.get(), &lo, &hi, &points));
    lo = o.f_lo.value_or(lo);
    hi = o.f_hi.value_or(hi);
    points = o.points.value_or(points);
    char* text = nullptr;
    check(offt_render_response(config.get(), net.get(), o.ports.empty() ? nullptr : o.ports.data(), o.ports.size(),
                               lo, hi, points, &text));
    write_output(config.get(), "response", extension(config.get()), take(text));
}

void cmd_sweep(const std::string& config_path, const std::string& name) {
    ConfigPtr config = load_config(config_path);
    NetworkPtr net = build(config.get());
    offt_sweep_result* r = nullptr;
    check(offt_sweep_run(config.get(), net.get(), name.c_str(), &r));
    SweepPtr result(r);
    offt_format f = OFFT_FORMAT_CSV;
    check(offt_config_output_format(config.get(), &f));
    char* text = nullptr;
    check(offt_sweep_render(result.get(), f, &text));
    write_output(config.get(), "sweep_" + name, extension(config.get()), take(text));
}

struct ThermalOptions {
    std::optional<double> dphi;
    std::optional<double> dT;
    std::optional<double> length;
    std::optional<double> wavelength;
    std::optional<double> dn_dT;
};

void cmd_thermal(const std::string& config_path, const ThermalOptions& o) {
    if (o.dphi.has_value() == o.dT.has_value()) throw Failure{kExitUsage, "give exactly one of --dphi or --dT"};
    ConfigPtr config = load_config(config_path);
    double length = 0.0, wavelength = 0.0, dn_dT = 0.0;
    check(offt_config_thermal(config.get(), &length, &wavelength, &dn_dT));
    length = o.length.value_or(length);
    wavelength = o.wavelength.value_or(wavelength);
    dn_dT = o.dn_dT.value_or(dn_dT);
    double dphi = 0.0, dT = 0.0;
    if (o.dphi) {
        dphi = *o.dphi;
        check(offt_phase_to_temperature(dphi, length, wavelength, dn_dT, &dT));
    } else {
        dT = *o.dT;
        check(offt_temperature_to_phase(dT, length, wavelength, dn_dT, &dphi));
    }
    std::printf("quantity,value\n");
    std::printf("length_m,%s\n", num(length).c_str());
    std::printf("wavelength_m,%s\n", num(wavelength).c_str());
    std::printf("dn_dT_per_K,%s\n", num(dn_dT).c_str());
    std::printf("dphi_rad,%s\n", num(dphi).c_str());
    std::printf("dT_K,%s\n", num(dT).c_str());
}

void cmd_scaling(const std::string& config_path, std::optional<int> n_max) {
    ConfigPtr config = load_config(config_path);
    int n = 0;
    check(offt_config_scaling_n_max(config.get(), &n));
    n = n_max.value_or(n);
    char* table = nullptr;
    char* report = nullptr;
    check(offt_render_scaling(config.get(), n, &table, &report));
    const std::string table_text = take(table);
    const std::string report_text = take(report);
    write_output(config.get(), "scaling", extension(config.get()), table_text);
    write_output(config.get(), "scaling_report", extension(config.get(), true), report_text);
    std::fputs(report_text.c_str(), stdout);
}

int cmd_verify(const std::string& config_path, int n_points, int trials, std::uint64_t seed) {
    ConfigPtr config = load_config(config_path);
    NetworkPtr net = build(config.get(), n_points);
    int n = 0;
    check(offt_network_n_points(net.get(), &n));
    std::vector<double> re(static_cast<size_t>(n)), im(static_cast<size_t>(n));
    offt_verify_summary s{};
    check(offt_verify(net.get(), trials, seed, 1e-10, &s, re.data(), im.data()));
    std::printf("n_points: %d\ntrials: %d\nseed: %llu\n", s.n_points, s.trials,
                static_cast<unsigned long long>(seed));
    std::printf("max_residual: %s\nmean_residual: %s\nthreshold: %s\n", num(s.max_residual).c_str(),
                num(s.mean_residual).c_str(), num(s.threshold).c_str());
    std::printf("port_map_consistent: %s\n", s.permutation_consistent ? "yes" : "no");
    if (s.passed) {
        std::printf("result: PASS\n");
        return kExitOk;
    }
    std::printf("result: FAIL\nworst window (re, im):\n");
    for (int i = 0; i < n; ++i) std::printf("  %s, %s\n", num(re[i]).c_str(), num(im[i]).c_str());
    return kExitVerify;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optical FFT network simulator"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("-c,--config", config_path, "JSON config file (defaults apply when omitted)");

    auto* response = app.add_subcommand("response", "Per-port transmission |H|^2 over a frequency grid");
    ResponseOptions ro;
    response->add_option("--ports", ro.ports, "Output labels to emit (default: all)")->delimiter(',');
    response->add_option("--f-lo", ro.f_lo, "Grid start in Hz");
    response->add_option("--f-hi", ro.f_hi, "Grid end in Hz");
    response->add_option("--points", ro.points, "Number of grid points")->check(CLI::PositiveNumber);

    auto* sweep = app.add_subcommand("sweep", "Run a named sensitivity sweep from the config");
    std::string sweep_name;
    sweep->add_option("--spec", sweep_name, "Sweep name")->required();

    auto* thermal = app.add_subcommand("thermal", "Heater phase <-> temperature conversion");
    ThermalOptions to;
    auto* dphi = thermal->add_option("--dphi", to.dphi, "Phase shift in rad");
    auto* dT = thermal->add_option("--dT", to.dT, "Temperature change in K");
    dphi->excludes(dT);
    thermal->add_option("--length", to.length, "Heater length in m");
    thermal->add_option("--lambda", to.wavelength, "Wavelength in m");
    thermal->add_option("--dndt", to.dn_dT, "Thermo-optic coefficient in 1/K");

    auto* scaling = app.add_subcommand("scaling", "OFFT vs GPU figure of merit table and crossover");
    std::optional<int> n_max;
    scaling->add_option("--n-max", n_max, "Largest N (power of two)");

    auto* verify = app.add_subcommand("verify", "Check the network against the brute-force DFT");
    int verify_n = 0;
    int trials = 100;
    std::uint64_t seed = 1;
    verify->add_option("--n", verify_n, "Transform size (default: config)");
    verify->add_option("--trials", trials, "Random windows")->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (response->parsed()) cmd_response(config_path, ro);
        if (sweep->parsed()) cmd_sweep(config_path, sweep_name);
        if (thermal->parsed()) cmd_thermal(config_path, to);
        if (scaling->parsed()) cmd_scaling(config_path, n_max);
        if (verify->parsed()) return cmd_verify(config_path, verify_n, trials, seed);
    } catch (const Failure& f) {
        std::fprintf(stderr, "offt: %s\n", f.message.c_str());
        return f.exit_code;
    }
    return kExitOk;
}
