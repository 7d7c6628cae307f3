#include "offt/config.hpp"

#include "offt/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <regex>
#include <set>

namespace offt {

namespace {

using nlohmann::json;

// Accepts numbers and angle strings of the form [a][*]pi[/b].
double parse_angle_string(const std::string& s, const std::string& where) {
    static const std::regex re(R"(^\s*(-?[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)?\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?))?\s*$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw ConfigError(where + ": cannot read '" + s + "' as a number");
    double v = kPi;
    if (m[1].matched) v *= std::stod(m[1].str());
    if (m[2].matched) {
        const double d = std::stod(m[2].str());
        if (d == 0.0) throw ConfigError(where + ": division by zero in '" + s + "'");
        v /= d;
    }
    return v;
}

class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
    }

    bool has(const char* key) {
        seen_.insert(key);
        return j_.contains(key);
    }

    const json& raw(const char* key) {
        seen_.insert(key);
        return j_.at(key);
    }

    void number(const char* key, double& out, bool allow_angle = false) {
        if (!has(key)) return;
        const json& v = j_.at(key);
        if (v.is_number()) {
            out = v.get<double>();
        } else if (allow_angle && v.is_string()) {
            out = parse_angle_string(v.get<std::string>(), where(key));
        } else {
            throw ConfigError(where(key) + ": expected a number");
        }
        if (!std::isfinite(out)) throw ConfigError(where(key) + ": must be finite");
    }

    void integer(const char* key, int& out) {
        if (!has(key)) return;
        const json& v = j_.at(key);
        if (!v.is_number_integer()) throw ConfigError(where(key) + ": expected an integer");
        out = v.get<int>();
    }

    void size(const char* key, size_t& out) {
        if (!has(key)) return;
        const json& v = j_.at(key);
        if (!v.is_number_unsigned()) throw ConfigError(where(key) + ": expected a non-negative integer");
        out = v.get<size_t>();
    }

    void boolean(const char* key, bool& out) {
        if (!has(key)) return;
        const json& v = j_.at(key);
        if (!v.is_boolean()) throw ConfigError(where(key) + ": expected true or false");
        out = v.get<bool>();
    }

    void string(const char* key, std::string& out) {
        if (!has(key)) return;
        const json& v = j_.at(key);
        if (!v.is_string()) throw ConfigError(where(key) + ": expected a string");
        out = v.get<std::string>();
    }

    std::string where(const char* key) const { return path_ + "." + key; }

    void finish() const {
        for (const auto& item : j_.items())
            if (!seen_.count(item.key())) throw ConfigError(path_ + ": unknown key '" + item.key() + "'");
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void read_waveguide(const json& j, WaveguideContext& ctx, const std::string& path) {
    ObjectReader r(j, path);
    r.number("n_eff", ctx.n_eff);
    r.number("speed_of_light_m_per_s", ctx.speed_of_light);
    r.number("wavelength_m", ctx.wavelength);
    r.number("dn_dT_per_K", ctx.dn_dT);
    r.finish();
}

void read_network(const json& j, NetworkConfig& net) {
    ObjectReader r(j, "network");
    r.integer("n_points", net.n_points);
    r.number("system_frequency_hz", net.system_frequency);
    ComponentParams& p = net.params;
    if (r.has("coupler_kappa")) {
        double k = 0.5;
        r.number("coupler_kappa", k);
        p.coupler_in_kappa = p.coupler_out_kappa = k;
    }
    r.number("coupler_in_kappa", p.coupler_in_kappa);
    r.number("coupler_out_kappa", p.coupler_out_kappa);
    r.number("fanout_loss_db_per_stage", p.fanout_loss_db_per_stage);
    r.number("sampler_loss_db", p.sampler_loss_db);
    r.boolean("base_delay_enabled", p.base_delay_enabled);
    if (r.has("base_lengths_m")) {
        const json& a = r.raw("base_lengths_m");
        if (!a.is_array()) throw ConfigError("network.base_lengths_m: expected an array of numbers");
        p.base_lengths.clear();
        for (const auto& v : a) {
            if (!v.is_number()) throw ConfigError("network.base_lengths_m: expected an array of numbers");
            p.base_lengths.push_back(v.get<double>());
        }
    }
    if (r.has("waveguide")) read_waveguide(r.raw("waveguide"), p.waveguide, "network.waveguide");
    if (r.has("stage_overrides")) {
        const json& a = r.raw("stage_overrides");
        if (!a.is_array()) throw ConfigError("network.stage_overrides: expected an array");
        for (size_t i = 0; i < a.size(); ++i) {
            ObjectReader o(a[i], "network.stage_overrides[" + std::to_string(i) + "]");
            StageOverride so;
            if (!o.has("stage")) throw ConfigError(o.where("stage") + ": required");
            o.integer("stage", so.stage);
            o.number("phase_offset_rad", so.phase_offset, true);
            o.number("delay_offset_s", so.delay_offset);
            o.number("arm_loss_long_db", so.arm_loss_long_db);
            o.number("arm_loss_short_db", so.arm_loss_short_db);
            o.finish();
            p.stage_overrides.push_back(so);
        }
    }
    if (r.has("grid")) {
        ObjectReader g(r.raw("grid"), "network.grid");
        g.number("f_lo_hz", net.grid.f_lo);
        g.number("f_hi_hz", net.grid.f_hi);
        g.size("points", net.grid.points);
        g.finish();
    }
    r.finish();
}

ArmSelector parse_arm(const std::string& s, const std::string& where) {
    if (s == "long" || s == "lower" || s == "delayed") return ArmSelector::long_arm;
    if (s == "short" || s == "upper") return ArmSelector::short_arm;
    throw ConfigError(where + ": arm must be one of long|lower|delayed|short|upper, got '" + s + "'");
}

SweepSpec read_sweep(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    SweepSpec s;
    r.string("name", s.name);
    if (s.name.empty()) throw ConfigError(path + ".name: required");
    if (r.has("target")) {
        ObjectReader t(r.raw("target"), path + ".target");
        t.integer("stage", s.target.stage);
        t.integer("cell", s.target.cell);
        std::string arm = "long";
        t.string("arm", arm);
        s.target.arm = parse_arm(arm, t.where("arm"));
        t.finish();
    }
    std::string parameter;
    r.string("parameter", parameter);
    if (parameter == "phase")
        s.parameter = SweepParameter::phase;
    else if (parameter == "delay")
        s.parameter = SweepParameter::delay;
    else if (parameter == "loss")
        s.parameter = SweepParameter::loss;
    else
        throw ConfigError(path + ".parameter: must be phase, delay or loss");
    const bool angle = s.parameter == SweepParameter::phase;
    r.number("center", s.center, angle);
    r.number("half_range", s.half_range, angle);
    r.number("increment", s.increment, angle);
    if (r.has("probe")) {
        const json& p = r.raw("probe");
        if (p.is_string()) {
            if (p.get<std::string>() != "auto") throw ConfigError(path + ".probe: expected \"auto\", a number or a list");
            s.probe = ProbeSpec{};
        } else if (p.is_number()) {
            s.probe = ProbeSpec{false, {p.get<double>()}};
        } else if (p.is_array() && !p.empty()) {
            s.probe = ProbeSpec{false, {}};
            for (const auto& v : p) {
                if (!v.is_number()) throw ConfigError(path + ".probe: list entries must be numbers");
                s.probe.frequencies.push_back(v.get<double>());
            }
        } else {
            throw ConfigError(path + ".probe: expected \"auto\", a number or a non-empty list");
        }
    }
    r.integer("target_port", s.target_port);
    r.integer("paired_port", s.paired_port);
    r.number("loss_per_delay_db_per_ps", s.loss_per_delay_db_per_ps);
    r.boolean("cascade", s.cascade);
    r.finish();
    try {
        s.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return s;
}

void read_scaling(const json& j, ScalingConfig& sc) {
    ObjectReader r(j, "scaling");
    if (r.has("loss_budget")) {
        ObjectReader b(r.raw("loss_budget"), "scaling.loss_budget");
        b.number("coupler_db", sc.budget.coupler_db);
        b.number("ybranch_db", sc.budget.ybranch_db);
        b.number("modulator_db", sc.budget.modulator_db);
        b.number("spiral_first_stage_db", sc.budget.spiral_first_stage_db);
        b.number("pd_power_w", sc.budget.pd_power_w);
        b.number("pd_min_optical_w", sc.budget.pd_min_optical_w);
        b.finish();
    }
    if (r.has("area")) {
        ObjectReader a(r.raw("area"), "scaling.area");
        a.number("spiral_area_T_mm2", sc.area.spiral_area_T_mm2);
        a.number("base_area_n4_mm2", sc.area.base_area_n4_mm2);
        a.number("base_area_n4_active_mm2", sc.area.base_area_n4_active_mm2);
        std::string mode = sc.area.mode == AreaMode::active ? "active" : "passive";
        a.string("mode", mode);
        if (mode == "active")
            sc.area.mode = AreaMode::active;
        else if (mode == "passive")
            sc.area.mode = AreaMode::passive;
        else
            throw ConfigError("scaling.area.mode: must be active or passive");
        a.boolean("area_scales_with_fs", sc.area.area_scales_with_fs);
        a.finish();
    }
    if (r.has("gpu")) {
        ObjectReader g(r.raw("gpu"), "scaling.gpu");
        g.number("flops", sc.gpu.flops);
        g.number("power_w", sc.gpu.power_w);
        g.number("area_mm2", sc.gpu.area_mm2);
        g.finish();
    }
    r.integer("n_max", sc.n_max);
    r.integer("bits_per_symbol", sc.bits_per_symbol);
    r.number("bandwidth_hz", sc.bandwidth);
    r.finish();
    try {
        sc.budget.validate();
        sc.area.validate();
        sc.gpu.validate();
        (void)log2_exact(sc.n_max);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("scaling: ") + e.what());
    }
}

} // namespace

const SweepSpec& RunConfig::sweep(std::string_view name) const {
    for (const auto& s : sweeps)
        if (s.name == name) return s;
    std::string names;
    for (const auto& s : sweeps) names += (names.empty() ? "" : ", ") + s.name;
    throw NotFoundError("no sweep named '" + std::string(name) + "'; available: " + (names.empty() ? "(none)" : names));
}

std::vector<SweepSpec> bundled_sweeps() {
    SweepSpec phase;
    phase.name = "phase_fig2a";
    phase.parameter = SweepParameter::phase;
    phase.center = kPi / 2.0;
    phase.half_range = kPi / 2.0;
    phase.increment = kPi / 100.0;

    SweepSpec delay;
    delay.name = "delay_loss_fig2b";
    delay.parameter = SweepParameter::delay;
    delay.center = 12.5e-12;
    delay.half_range = 12.5e-12;
    delay.increment = 0.5e-12;
    delay.loss_per_delay_db_per_ps = 0.5;
    return {phase, delay};
}

RunConfig default_config() {
    RunConfig c;
    c.network.params.sampler_loss_db = 3.5;
    c.sweeps = bundled_sweeps();
    return c;
}

RunConfig parse_config(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    RunConfig c = default_config();
    ObjectReader r(root, "config");
    if (r.has("network")) read_network(r.raw("network"), c.network);
    if (r.has("sweeps")) {
        const json& a = r.raw("sweeps");
        if (!a.is_array()) throw ConfigError("sweeps: expected an array");
        c.sweeps.clear();
        std::set<std::string> names;
        for (size_t i = 0; i < a.size(); ++i) {
            SweepSpec s = read_sweep(a[i], "sweeps[" + std::to_string(i) + "]");
            if (!names.insert(s.name).second) throw ConfigError("sweeps: duplicate name '" + s.name + "'");
            c.sweeps.push_back(std::move(s));
        }
    }
    if (r.has("thermal")) {
        ObjectReader t(r.raw("thermal"), "thermal");
        c.thermal.ctx = c.network.params.waveguide;
        t.number("length_m", c.thermal.length);
        t.number("wavelength_m", c.thermal.ctx.wavelength);
        t.number("dn_dT_per_K", c.thermal.ctx.dn_dT);
        t.finish();
    } else {
        c.thermal.ctx = c.network.params.waveguide;
    }
    if (r.has("scaling")) read_scaling(r.raw("scaling"), c.scaling);
    if (r.has("output")) {
        ObjectReader o(r.raw("output"), "output");
        o.string("directory", c.output.directory);
        std::string fmt = "csv";
        o.string("format", fmt);
        if (fmt == "csv")
            c.output.format = OutputFormat::csv;
        else if (fmt == "json")
            c.output.format = OutputFormat::json;
        else
            throw ConfigError("output.format: must be csv or json");
        o.finish();
    }
    r.finish();

    try {
        (void)log2_exact(c.network.n_points);
        c.thermal.validate();
        if (c.network.grid.points == 0 || !(c.network.grid.f_lo <= c.network.grid.f_hi))
            throw ConfigError("network.grid: need points >= 1 and f_lo <= f_hi");
        (void)build_network(c);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return c;
}

OfftNetwork build_network(const RunConfig& config, std::optional<int> n_override) {
    return build_offt(n_override.value_or(config.network.n_points), config.network.system_frequency,
                      config.network.params);
}

} // namespace offt
