#include "offt/dft_oracle.hpp"
#include "offt/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace offt;

namespace {

std::vector<Amplitude> random_vector(std::mt19937_64& rng, size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Amplitude> v(n);
    for (auto& x : v) x = {u(rng), u(rng)};
    return v;
}

} // namespace

TEST_CASE("dft of a delta is all ones") {
    for (size_t n : {1u, 2u, 4u, 8u, 16u}) {
        std::vector<Amplitude> delta(n);
        delta[0] = 1.0;
        for (const Amplitude& x : dft(delta)) CHECK(std::abs(x - 1.0) < 1e-15);
    }
}

TEST_CASE("dft sign convention") {
    // x_n = exp(+j 2 pi n / 4) lands in bin 1 under exp(-j 2 pi k n / N).
    std::vector<Amplitude> x(4);
    for (int n = 0; n < 4; ++n) x[static_cast<size_t>(n)] = std::polar(1.0, 2.0 * 3.14159265358979323846 * n / 4.0);
    const auto X = dft(x);
    CHECK(std::abs(X[1] - 4.0) < 1e-13);
    CHECK(std::abs(X[0]) < 1e-13);
    CHECK(std::abs(X[3]) < 1e-13);
}

TEST_CASE("dft is linear") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        const auto x = random_vector(rng, 8), y = random_vector(rng, 8);
        const Amplitude a{0.3, -1.2}, b{2.0, 0.5};
        std::vector<Amplitude> z(8);
        for (size_t i = 0; i < 8; ++i) z[i] = a * x[i] + b * y[i];
        const auto X = dft(x), Y = dft(y), Z = dft(z);
        for (size_t k = 0; k < 8; ++k) CHECK(std::abs(Z[k] - (a * X[k] + b * Y[k])) < 1e-13);
    }
}

TEST_CASE("match_ports on identical vectors") {
    std::mt19937_64 rng(5);
    const auto bins = random_vector(rng, 4);
    std::vector<Amplitude> outputs(bins);
    for (auto& o : outputs) o /= 4.0;
    const PortMatch m = match_ports(outputs, bins);
    CHECK(m.permutation == std::vector<int>{0, 1, 2, 3});
    CHECK(std::abs(m.global_phase) < 1e-14);
    CHECK(m.residual < 1e-14);
}

TEST_CASE("match_ports finds a swap") {
    std::mt19937_64 rng(11);
    const auto bins = random_vector(rng, 4);
    std::vector<Amplitude> outputs{bins[0] / 4.0, bins[3] / 4.0, bins[2] / 4.0, bins[1] / 4.0};
    const PortMatch m = match_ports(outputs, bins);
    CHECK(m.permutation == std::vector<int>{0, 3, 2, 1});
    CHECK(m.residual < 1e-14);
}

TEST_CASE("match_ports is invariant to a global phase") {
    std::mt19937_64 rng(13);
    for (size_t n : {2u, 4u, 8u, 16u}) {
        const auto bins = random_vector(rng, n);
        std::vector<Amplitude> outputs(n);
        const Amplitude rot = std::polar(1.0, 1.234);
        for (size_t i = 0; i < n; ++i) outputs[(i * 3 + 1) % n] = rot * bins[i] / static_cast<double>(n);
        const PortMatch m = match_ports(outputs, bins);
        CHECK(m.residual < 1e-13);
        for (size_t i = 0; i < n; ++i) CHECK(m.permutation[(i * 3 + 1) % n] == static_cast<int>(i));
        CHECK(std::abs(std::polar(1.0, m.global_phase) - rot) < 1e-13);
    }
}

TEST_CASE("match_ports reports a mismatch instead of hiding it") {
    const std::vector<Amplitude> bins{4.0, 0.0, 0.0, 0.0};
    const std::vector<Amplitude> outputs{0.5, 0.0, 0.0, 0.0};
    CHECK(match_ports(outputs, bins).residual == doctest::Approx(2.0));
}

TEST_CASE("match_ports rejects bad input") {
    const std::vector<Amplitude> zeros(4);
    CHECK_THROWS_AS(match_ports(zeros, zeros), DegenerateError);
    const std::vector<Amplitude> three(3, 1.0);
    CHECK_THROWS_AS(match_ports(three, zeros), DomainError);
}
