#include "offt/offt.h"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>
#include <vector>

TEST_CASE("config lifecycle and accessors") {
    offt_config* c = nullptr;
    REQUIRE(offt_config_default(&c) == OFFT_OK);
    double lo = 0, hi = 0;
    size_t points = 0;
    CHECK(offt_config_grid(c, &lo, &hi, &points) == OFFT_OK);
    CHECK(points == 4001);
    CHECK(hi == 40e9);
    char* names = nullptr;
    REQUIRE(offt_config_sweep_names(c, &names) == OFFT_OK);
    CHECK(std::string(names) == "phase_fig2a\ndelay_loss_fig2b\n");
    offt_string_free(names);
    CHECK(offt_config_set_output_directory(c, "elsewhere") == OFFT_OK);
    char* dir = nullptr;
    REQUIRE(offt_config_output_directory(c, &dir) == OFFT_OK);
    CHECK(std::string(dir) == "elsewhere");
    offt_string_free(dir);
    offt_config_destroy(c);
}

TEST_CASE("status codes") {
    offt_config* c = nullptr;
    CHECK(offt_config_default(nullptr) == OFFT_ERR_INVALID_ARGUMENT);
    CHECK(offt_config_parse(R"({"bogus": 1})", &c) == OFFT_ERR_CONFIG);
    CHECK(std::string(offt_last_error()).find("bogus") != std::string::npos);
    CHECK(c == nullptr);
    CHECK(offt_config_load("/nonexistent/offt.json", &c) == OFFT_ERR_IO);
    offt_network* n = nullptr;
    CHECK(offt_network_create_ideal(6, 10e9, &n) == OFFT_ERR_DOMAIN);
    CHECK(n == nullptr);
    double t = 0;
    CHECK(offt_phase_to_temperature(-1.0, 500e-6, 1550e-9, 1.9e-4, &t) == OFFT_ERR_DOMAIN);
    CHECK(std::strcmp(offt_status_name(OFFT_ERR_IO), "i/o error") == 0);
}

TEST_CASE("network queries") {
    offt_network* n = nullptr;
    REQUIRE(offt_network_create_ideal(4, 10e9, &n) == OFFT_OK);
    int size = 0;
    CHECK(offt_network_n_points(n, &size) == OFFT_OK);
    CHECK(size == 4);
    std::vector<int> map(4);
    CHECK(offt_network_port_map(n, map.data(), map.size()) == OFFT_OK);
    CHECK(offt_network_port_map(n, map.data(), 2) == OFFT_ERR_INVALID_ARGUMENT);
    const double f[2] = {20e9, 10e9};
    double re[2], im[2];
    CHECK(offt_network_response(n, 2, f, 2, re, im) == OFFT_OK);
    CHECK(re[0] * re[0] + im[0] * im[0] == doctest::Approx(1.0));
    CHECK(re[1] * re[1] + im[1] * im[1] < 1e-20);
    CHECK(offt_network_response(n, 7, f, 2, re, im) == OFFT_ERR_NOT_FOUND);
    double peak = 0;
    CHECK(offt_network_peak_frequency(n, 3, 0, 40e9, 1e7, &peak) == OFFT_OK);
    CHECK(peak == doctest::Approx(10e9).epsilon(1e-4));
    double tol = 0;
    CHECK(offt_network_crosstalk_tolerance(n, -20.0, 2, 0.0, &tol) == OFFT_OK);
    CHECK(tol == doctest::Approx(2 * std::atan(0.1)).epsilon(1e-3));
    offt_verify_summary s{};
    std::vector<double> wr(4), wi(4);
    CHECK(offt_verify(n, 10, 42, 1e-10, &s, wr.data(), wi.data()) == OFFT_OK);
    CHECK(s.passed == 1);
    CHECK(offt_verify(n, 0, 42, 1e-10, &s, nullptr, nullptr) == OFFT_ERR_DOMAIN);
    offt_network_destroy(n);
}

TEST_CASE("time simulation through the C layer") {
    offt_network* n = nullptr;
    REQUIRE(offt_network_create_ideal(2, 10e9, &n) == OFFT_OK);
    const double in_re[2] = {1.0, 1.0}, in_im[2] = {0.0, 0.0};
    double out_re[4], out_im[4];
    REQUIRE(offt_network_time_simulate(n, in_re, in_im, 2, out_re, out_im) == OFFT_OK);
    // A constant window lands entirely in X_0 at the gate sample.
    CHECK(out_re[1] * out_re[1] + out_im[1] * out_im[1] == doctest::Approx(1.0));
    CHECK(out_re[3] * out_re[3] + out_im[3] * out_im[3] < 1e-24);
    offt_network_destroy(n);
}

TEST_CASE("rendering") {
    offt_config* c = nullptr;
    REQUIRE(offt_config_default(&c) == OFFT_OK);
    offt_network* n = nullptr;
    REQUIRE(offt_network_build(c, 0, &n) == OFFT_OK);
    char* text = nullptr;
    const int ports[2] = {0, 2};
    REQUIRE(offt_render_response(c, n, ports, 2, 0, 40e9, 2, &text) == OFFT_OK);
    const std::string csv = text;
    offt_string_free(text);
    CHECK(csv.rfind("frequency_hz,X0_linear,X0_db,X2_linear,X2_db\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

    offt_sweep_result* r = nullptr;
    CHECK(offt_sweep_run(c, n, "missing", &r) == OFFT_ERR_NOT_FOUND);
    REQUIRE(offt_sweep_run(c, n, "phase_fig2a", &r) == OFFT_OK);
    size_t count = 0;
    CHECK(offt_sweep_point_count(r, &count) == OFFT_OK);
    CHECK(count == 101);
    REQUIRE(offt_sweep_render(r, OFFT_FORMAT_JSON, &text) == OFFT_OK);
    CHECK(std::string(text).find("\"snr\": \"inf\"") != std::string::npos);
    offt_string_free(text);
    offt_sweep_result_destroy(r);

    char* table = nullptr;
    char* report = nullptr;
    REQUIRE(offt_render_scaling(c, 2, &table, &report) == OFFT_OK);
    CHECK(std::string(report).find("no crossover observed") != std::string::npos);
    CHECK(std::string(report).find("80 Gbps per channel, 320 Gbps for 4 channels") != std::string::npos);
    offt_string_free(table);
    offt_string_free(report);

    double cap = 0;
    CHECK(offt_channel_capacity(8, 10e9, 4, &cap) == OFFT_OK);
    CHECK(cap == 320e9);
    offt_network_destroy(n);
    offt_config_destroy(c);
}
