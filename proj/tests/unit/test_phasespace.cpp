// Husimi Q-function, shifted phase distribution and its maximum.

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qsync/phasespace.hpp"

using namespace qsync;
using std::numbers::pi;

namespace {

QubitDensityMatrix plus_state() { return evolve(InitialState::plus(), complex(1.0, 0.0)); }

} // namespace

TEST_SUITE("phasespace") {

TEST_CASE("Q of the plus state peaks on the equator at phi = 0") {
    const auto rho = plus_state();
    CHECK(husimi_q(rho, pi / 2, 0.0) == doctest::Approx(1.0 / (2.0 * pi)).epsilon(1e-15));
    // (1/4pi)(1 + sin theta cos phi)
    for (double theta : {0.0, 0.3, 1.2, pi}) {
        for (double phi : {-3.0, -1.0, 0.0, 2.5}) {
            const double expected = (1.0 + std::sin(theta) * std::cos(phi)) / (4.0 * pi);
            CHECK(husimi_q(rho, theta, phi) == doctest::Approx(expected).epsilon(1e-14));
        }
    }
}

TEST_CASE("Q of diagonal states") {
    QubitDensityMatrix ground{0.0, 0.0};
    QubitDensityMatrix mixed{0.5, 0.0};
    for (double theta : {0.0, 0.7, 2.0, pi}) {
        for (double phi : {-2.0, 0.0, 1.0}) {
            CHECK(husimi_q(ground, theta, phi) ==
                  doctest::Approx(std::pow(std::sin(theta / 2), 2) / (2.0 * pi)).epsilon(1e-14));
            CHECK(husimi_q(mixed, theta, phi) == doctest::Approx(1.0 / (4.0 * pi)).epsilon(1e-14));
        }
    }
}

TEST_CASE("Q is nonnegative and bounded by 1/(2 pi)") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> th(0.0, pi), ph(-pi, pi);
    for (int i = 0; i < 500; ++i) {
        const auto rho = oracle::random_state(rng);
        const double q = husimi_q(rho, th(rng), ph(rng));
        CHECK(q >= -1e-16);
        CHECK(q <= 1.0 / (2.0 * pi) + 1e-16);
    }
}

TEST_CASE("theta outside [0, pi] is rejected") {
    CHECK_THROWS_AS(husimi_q(plus_state(), -0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(husimi_q(plus_state(), pi + 1e-9, 0.0), std::invalid_argument);
}

TEST_CASE("Q integrates to one over the sphere") {
    std::mt19937_64 rng(20);
    for (int i = 0; i < 20; ++i) {
        const auto rho = oracle::random_state(rng);
        CHECK(std::abs(oracle::sphere_integral(rho) - 1.0) < 1e-9);
    }
}

TEST_CASE("S equals the theta-marginal of Q minus the uniform baseline") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 20; ++i) {
        const auto rho = oracle::random_state(rng);
        for (int k = 0; k < 32; ++k) {
            const double phi = -pi + 2.0 * pi * k / 32;
            const double marginal = oracle::phase_marginal(rho, phi) - 1.0 / (2.0 * pi);
            CHECK(std::abs(shifted_phase_distribution(rho, phi) - marginal) < 1e-9);
        }
    }
}

TEST_CASE("S of reference states") {
    const auto rho = plus_state();
    CHECK(shifted_phase_distribution(rho, 0.0) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(shifted_phase_distribution(rho, pi) == doctest::Approx(-0.125).epsilon(1e-15));
    QubitDensityMatrix diag{0.3, 0.0};
    for (double phi : {-3.0, 0.0, 1.7}) CHECK(shifted_phase_distribution(diag, phi) == 0.0);
}

TEST_CASE("S has zero mean and is bounded by 1/8") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 50; ++i) {
        const auto rho = oracle::random_state(rng);
        double sum = 0.0;
        const int n = 256;
        for (int k = 0; k < n; ++k) {
            const double s = shifted_phase_distribution(rho, -pi + 2.0 * pi * k / n);
            CHECK(std::abs(s) <= 0.125 + 1e-16);
            sum += s;
        }
        CHECK(std::abs(sum * 2.0 * pi / n) < 1e-12);
    }
}

TEST_CASE("phase summary of reference states") {
    auto s = phase_summary(plus_state());
    CHECK(s.s_max == 0.125);
    CHECK(s.phi_star == 0.0);
    CHECK(s.r == 0.5);

    s = phase_summary(QubitDensityMatrix{0.4, 0.0});
    CHECK(s.s_max == 0.0);
    CHECK(s.phi_star == 0.0);

    s = phase_summary(QubitDensityMatrix{0.5, complex(0.0, -0.3)});
    CHECK(s.s_max == doctest::Approx(0.075).epsilon(1e-15));
    CHECK(s.phi_star == doctest::Approx(pi / 2).epsilon(1e-15));
}

TEST_CASE("phase summary agrees with a dense phi scan") {
    std::mt19937_64 rng(23);
    constexpr int n = 10000;
    const double cell = 2.0 * pi / n;
    for (int i = 0; i < 50; ++i) {
        const auto rho = oracle::random_state(rng);
        const auto summary = phase_summary(rho);
        int best = 0;
        double best_value = -1.0;
        for (int k = 0; k < n; ++k) {
            const double v = shifted_phase_distribution(rho, -pi + cell * k);
            if (v > best_value) {
                best_value = v;
                best = k;
            }
        }
        const double scan_phi = -pi + cell * best;
        const double gap = std::abs(wrap_phase(scan_phi - summary.phi_star));
        CHECK(gap <= cell);
        CHECK(best_value == doctest::Approx(summary.s_max).epsilon(1e-6));
        CHECK(shifted_phase_distribution(rho, summary.phi_star) == doctest::Approx(summary.s_max).epsilon(1e-14));
        CHECK(std::abs(shifted_phase_distribution(rho, summary.phi_star + pi) + summary.s_max) < 1e-14);
        CHECK(summary.s_max <= 0.125);
        CHECK(summary.phi_star >= -pi);
        CHECK(summary.phi_star < pi);
    }
}

TEST_CASE("wrap_phase maps into [-pi, pi)") {
    CHECK(wrap_phase(pi) == -pi);
    CHECK(wrap_phase(-pi) == -pi);
    CHECK(wrap_phase(3.0 * pi / 2) == doctest::Approx(-pi / 2));
    CHECK(wrap_phase(0.25) == doctest::Approx(0.25));
    CHECK(wrap_phase(-7.0) == doctest::Approx(-7.0 + 2.0 * pi));
}

}
