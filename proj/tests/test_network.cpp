#include "offt/dft_oracle.hpp"
#include "offt/errors.hpp"
#include "offt/network.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace offt;

namespace {

constexpr double kFs = 10e9;

double wrap_to_span(double f, double span) {
    const double r = std::fmod(f, span);
    return r < 0.0 ? r + span : r;
}

} // namespace

TEST_CASE("size checks") {
    CHECK(is_power_of_two(1));
    CHECK(is_power_of_two(1024));
    CHECK_FALSE(is_power_of_two(0));
    CHECK_FALSE(is_power_of_two(12));
    CHECK(log2_exact(16) == 4);
    CHECK_THROWS_AS(build_offt(3, kFs), DomainError);
    CHECK_THROWS_AS(build_offt(1, kFs), DomainError);
    CHECK_THROWS_AS(build_offt(4, -1.0), DomainError);
}

TEST_CASE("tree geometry") {
    for (int n : {2, 4, 8, 16, 32}) {
        const OfftNetwork net = build_offt(n, kFs);
        CHECK(net.stage_count() == log2_exact(n));
        CHECK(net.interferometer_count() == n - 1);
        CHECK(net.coupler_count() == 2 * (n - 1));
        for (int s = 1; s <= net.stage_count(); ++s) {
            CHECK(net.stages()[static_cast<size_t>(s - 1)].size() == (size_t{1} << (s - 1)));
            CHECK(net.cell(s, 0).differential_delay() == doctest::Approx(net.period() / std::ldexp(1.0, s)));
        }
        std::vector<int> sorted = net.port_map();
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> expected(static_cast<size_t>(n));
        std::iota(expected.begin(), expected.end(), 0);
        CHECK(sorted == expected);
        for (int k = 0; k < n; ++k) CHECK(net.port_map()[static_cast<size_t>(net.physical_port(k))] == k);
    }
}

TEST_CASE("locator errors") {
    const OfftNetwork net = build_offt(4, kFs);
    CHECK_THROWS_AS((void)net.cell(3, 0), NotFoundError);
    CHECK_THROWS_AS((void)net.cell(2, 2), NotFoundError);
    CHECK_THROWS_AS((void)net.physical_port(4), NotFoundError);
    CHECK_THROWS_AS((void)net.with_cell(0, 0, [](DelayedInterferometer&) {}), NotFoundError);
}

TEST_CASE("single interferometer: cross port follows cos^2 of half the phase") {
    DelayedInterferometer di;
    di.long_arm.delay = 50e-12;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 40e9), ph(-3.0, 3.0);
    for (int i = 0; i < 50; ++i) {
        di.long_arm.phase = ph(rng);
        const double f = u(rng);
        const DiOutputs o = di_response(di, f);
        const double theta = di.long_arm.phase - 2.0 * kPi * f * di.long_arm.delay;
        CHECK(power(o.cross) == doctest::Approx(std::cos(theta / 2) * std::cos(theta / 2)).epsilon(1e-12));
        CHECK(power(o.cross) + power(o.bar) == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("peak frequencies step by the system frequency") {
    const OfftNetwork net = build_offt(4, kFs);
    const auto peaks = port_peak_frequencies(net);
    const double span = 4 * kFs;
    for (int k = 0; k < 4; ++k) {
        const double expected = wrap_to_span(-k * kFs, span);
        const double d = std::abs(wrap_to_span(peaks[static_cast<size_t>(k)] - expected + span / 2, span) - span / 2);
        CHECK(d < 1e6);
    }
}

TEST_CASE("the common base delay does not move any peak") {
    ComponentParams with = ComponentParams::ideal();
    ComponentParams without = ComponentParams::ideal();
    without.base_delay_enabled = false;
    const auto a = port_peak_frequencies(build_offt(4, kFs, with));
    const auto b = port_peak_frequencies(build_offt(4, kFs, without));
    for (size_t k = 0; k < 4; ++k) CHECK(std::abs(a[k] - b[k]) < 1e3);
    CHECK(build_offt(4, kFs, with).common_latency() > 0.0);
    CHECK(build_offt(4, kFs, without).common_latency() == 0.0);
}

TEST_CASE("ideal response: unit peak, exact nulls at the other bins") {
    const OfftNetwork net = build_offt(8, kFs);
    for (int k = 0; k < 8; ++k) {
        const double fk = wrap_to_span(-k * kFs, 8 * kFs);
        CHECK(power(port_response(net, k, fk)) == doctest::Approx(1.0).epsilon(1e-12));
        for (int j = 0; j < 8; ++j)
            if (j != k) CHECK(power(port_response(net, j, fk)) < 1e-24);
    }
}

TEST_CASE("lossless network conserves power across the output manifold") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> f(0.0, 80e9), ph(-kPi, kPi);
    const OfftNetwork base = build_offt(8, kFs);
    for (int t = 0; t < 20; ++t) {
        const double d = ph(rng);
        const OfftNetwork net =
            base.with_cell(2, 1, [&](DelayedInterferometer& di) { di.long_arm.phase += d; });
        const double fr = f(rng);
        double total = 0.0;
        for (int k = 0; k < 8; ++k) total += power(port_response(net, k, fr));
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("fan-out and sampler losses scale every port uniformly") {
    ComponentParams p = ComponentParams::ideal();
    p.sampler_loss_db = 3.5;
    p.fanout_loss_db_per_stage = 1.0;
    const OfftNetwork net = build_offt(4, kFs, p);
    CHECK(net.uniform_gain() == doctest::Approx(db_to_amplitude(5.5)).epsilon(1e-14));
    CHECK(power(port_response(net, 0, 0.0)) == doctest::Approx(std::pow(10.0, -0.55)).epsilon(1e-12));
}

TEST_CASE("time simulation gates the DFT of the preceding window") {
    const OfftNetwork net = build_offt(4, kFs);
    const std::vector<Amplitude> x{{1, 2}, {-0.5, 0.25}, {0.3, -1}, {2, 0}, {0.1, 0.7}, {-1, -1}, {0.5, 0.5}, {0, 1}};
    const auto frames = sample_outputs(time_simulate(net, x, PortOrder::label), 0);
    REQUIRE(frames.size() == 2);
    for (size_t j = 0; j < frames.size(); ++j) {
        std::vector<Amplitude> window(4);
        for (size_t i = 0; i < 4; ++i) window[i] = x[3 + 4 * j - i];
        const auto bins = dft(window);
        const PortMatch m = score_permutation(frames[j], bins, std::vector<int>{0, 1, 2, 3});
        CHECK(m.residual < 1e-12);
    }
    CHECK_THROWS_AS(sample_outputs(time_simulate(net, x), 4), DomainError);
    CHECK_THROWS_AS(time_simulate(net, std::vector<Amplitude>(2)), DomainError);
}

TEST_CASE("time simulation requires whole-tap delays") {
    const OfftNetwork net = build_offt(4, kFs).with_cell(1, 0, [](DelayedInterferometer& di) {
        di.long_arm.delay += 1e-12;
    });
    CHECK_THROWS_AS(time_simulate(net, std::vector<Amplitude>(8, 1.0)), DomainError);
}

TEST_CASE("frequency grid") {
    const auto g = linear_grid(0.0, 40e9, 4001);
    CHECK(g.size() == 4001);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 40e9);
    CHECK(g[1] == doctest::Approx(1e7));
    CHECK(linear_grid(5.0, 5.0, 1) == std::vector<double>{5.0});
    const auto r = frequency_response(build_offt(4, kFs), linear_grid(0.0, 40e9, 2));
    CHECK(r.per_port.size() == 4);
    CHECK(r.per_port[0].size() == 2);
}

TEST_CASE("peak search rejects a dark port") {
    const OfftNetwork net = build_offt(2, kFs).with_cell(1, 0, [](DelayedInterferometer& di) {
        di.coupler_in_kappa = 0.0;
        di.coupler_out_kappa = 0.0;
    });
    // With bar-state couplers the whole input stays on the long arm and exits the bar port only.
    int dark = -1;
    for (int k = 0; k < 2; ++k)
        if (power(port_response(net, k, 3e9)) < 1e-30) dark = k;
    REQUIRE(dark >= 0);
    CHECK_THROWS_AS(peak_frequency(net, dark, 0.0, 20e9, 1e8), DegenerateError);
}
