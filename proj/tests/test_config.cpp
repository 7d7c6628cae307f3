#include "offt/config.hpp"
#include "offt/errors.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

using namespace offt;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("defaults") {
    const RunConfig c = default_config();
    CHECK(c.network.n_points == 4);
    CHECK(c.network.system_frequency == 10e9);
    CHECK(c.network.grid.points == 4001);
    CHECK(c.network.params.sampler_loss_db == 3.5);
    CHECK(c.sweeps.size() == 2);
    CHECK(c.sweep("phase_fig2a").values().size() == 101);
    CHECK(c.sweep("delay_loss_fig2b").values().size() == 51);
    CHECK(c.sweep("delay_loss_fig2b").loss_per_delay_db_per_ps == 0.5);
    CHECK(c.output.format == OutputFormat::csv);
}

TEST_CASE("empty object keeps the defaults") {
    const RunConfig c = parse_config("{}");
    CHECK(c.network.n_points == 4);
    CHECK(c.sweeps.size() == 2);
}

TEST_CASE("unknown keys are rejected") {
    CHECK_THROWS_AS(parse_config(R"({"netwrok": {}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"network": {"n_point": 8}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sweeps": [{"name": "a", "parameter": "phase", "increment": 0.1, "colour": 1}]})"),
                    ConfigError);
}

TEST_CASE("type and domain errors") {
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"network": {"n_points": "four"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"network": {"n_points": 6}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"network": {"coupler_kappa": 1.5}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"output": {"format": "xml"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sweeps": [{"name": "a", "parameter": "heat", "increment": 0.1}]})"),
                    ConfigError);
}

TEST_CASE("sweep parsing with angle strings and arm aliases") {
    const RunConfig c = parse_config(R"({"sweeps": [{
        "name": "p", "target": {"stage": 1, "cell": 0, "arm": "lower"},
        "parameter": "phase", "center": "pi/2", "half_range": "pi/2", "increment": "pi/100",
        "probe": [6.78e9], "target_port": 2, "paired_port": 0}]})");
    REQUIRE(c.sweeps.size() == 1);
    const SweepSpec& s = c.sweep("p");
    CHECK(s.center == doctest::Approx(kPi / 2));
    CHECK(s.increment == doctest::Approx(kPi / 100));
    CHECK(s.target.arm == ArmSelector::long_arm);
    CHECK_FALSE(s.probe.automatic);
    CHECK(s.probe.frequencies == std::vector<double>{6.78e9});
    CHECK(s.values().size() == 101);
}

TEST_CASE("unknown sweep names list the alternatives") {
    const RunConfig c = default_config();
    try {
        (void)c.sweep("nope");
        FAIL("expected NotFoundError");
    } catch (const NotFoundError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("phase_fig2a") != std::string::npos);
        CHECK(msg.find("delay_loss_fig2b") != std::string::npos);
    }
}

TEST_CASE("network overrides reach the built network") {
    const RunConfig c = parse_config(R"({"network": {"n_points": 8, "sampler_loss_db": 0,
        "stage_overrides": [{"stage": 2, "phase_offset_rad": 0.1}]}})");
    const OfftNetwork net = build_network(c);
    CHECK(net.n_points() == 8);
    const OfftNetwork ideal = build_offt(8, 10e9);
    CHECK(net.cell(2, 1).long_arm.phase == doctest::Approx(ideal.cell(2, 1).long_arm.phase + 0.1));
    CHECK(build_network(c, 16).n_points() == 16);
    CHECK_THROWS_AS(parse_config(R"({"network": {"stage_overrides": [{"stage": 3}]}})"), ConfigError);
}

TEST_CASE("bundled figure configs parse") {
    for (const char* name : {"fig3a", "fig3b", "fig4", "fig5", "fig6"}) {
        CAPTURE(name);
        const std::string path = std::string(OFFT_CONFIG_DIR) + "/" + name + ".json";
        CHECK_NOTHROW((void)parse_config(read_file(path)));
    }
}
